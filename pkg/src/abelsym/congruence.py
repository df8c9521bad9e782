"""Level structures: coset symbols, Manin relation spaces, closed forms.

A level (N, M) names the subgroup of integral determinant-one 2x2 matrices
with a == 1, b == 0 mod N and c == 0, d == 1 mod MN.  Its left cosets are
finite and biject with the ordered character pairs of Z/N x Z/MN that
generate the dual group and have determinant 1 mod N; those quadruples are
the generators of the Manin relation space built here.

Everything countable is computed twice on purpose: coset counts against the
index formula, cusps as transformation orbits against the closed form,
fixed cusps by enumeration against the totient expression.  `cusp_count`
asserts its two routes agree and raises loudly when they do not, rather
than privileging either route; the granular routes stay exposed so a
disagreement is itself testable.
"""

from __future__ import annotations

import time
from fractions import Fraction
from math import gcd

from .abelian import make_group, spans_dual
from .arith import prime_factors, totient
from .exactla import (DEFAULT_SNF_BOUND, BoundExceeded, SparseIntMatrix,
                      SpanChecker, rank_over_Q, smith_normal_form)
from .relations import (DimensionReport, RelationSystem, Variant,
                        build_relations, difference_formula,
                        formula_dimension, pxp_closed_forms)
from .symbols import (DEFAULT_ENUM_BOUND, canonicalize, enumerate_det_class,
                      enumerate_generators)

__all__ = [
    "IntMatrix2", "CosetSymbol", "LevelInvariants", "IsoReport",
    "gamma_member", "coset_of", "lift_coset", "enumerate_cosets",
    "coset_index", "manin_space", "cusp_formula", "cusp_orbit_count",
    "cusp_count", "genus", "eps_fixed", "level_invariants",
    "level2_consistency", "closed_form", "difference_formula",
    "pxp_closed_forms", "iso_check",
]


def _check_level(n, m):
    if int(n) != n or int(m) != m or n < 2 or m < 1:
        raise ValueError("level needs integers N >= 2, M >= 1, got (%r, %r)"
                         % (n, m))


def _ext_gcd(x, y):
    """(g, u, v) with u*x + v*y = g = gcd(x, y) >= 0."""
    old_r, r = x, y
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        return -old_r, -old_u, -old_v
    return old_r, old_u, old_v


class IntMatrix2:
    """Integral 2x2 matrix of determinant exactly one."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        if a * d - b * c != 1:
            raise ValueError("determinant must be exactly 1")
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    def __matmul__(self, other):
        return IntMatrix2(self.a * other.a + self.b * other.c,
                          self.a * other.b + self.b * other.d,
                          self.c * other.a + self.d * other.c,
                          self.c * other.b + self.d * other.d)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix2):
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b,
                                                    other.c, other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __repr__(self):
        return "IntMatrix2(%d, %d, %d, %d)" % (self.a, self.b, self.c,
                                               self.d)


class CosetSymbol:
    """Residue quadruple naming a coset: a, b mod N and c, d mod MN.

    Valid symbols have determinant 1 mod N and columns (a, c), (b, d) that
    generate the dual of Z/N x Z/MN; both are enforced on construction.
    """

    __slots__ = ("a", "b", "c", "d", "level", "_hash")

    def __init__(self, a, b, c, d, level):
        n, m = level
        _check_level(n, m)
        k = n * m
        if not (0 <= a < n and 0 <= b < n and 0 <= c < k and 0 <= d < k):
            raise ValueError("residues out of range for level (%d, %d)"
                             % (n, m))
        if (a * d - b * c) % n != 1:
            raise ValueError("determinant is not 1 mod %d" % n)
        grp = make_group((n, k))
        cols = (grp.character((a, c)), grp.character((b, d)))
        if not spans_dual(cols, grp):
            raise ValueError("columns (%d,%d), (%d,%d) do not generate the "
                             "dual group" % (a, c, b, d))
        self.a, self.b, self.c, self.d = a, b, c, d
        self.level = (n, m)
        self._hash = hash((a, b, c, d, self.level))

    def quad(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        if not isinstance(other, CosetSymbol):
            return NotImplemented
        return self.quad() == other.quad() and self.level == other.level

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.quad() < other.quad()

    def __repr__(self):
        return "CosetSymbol(%d, %d; %d, %d | level %r)" % (
            self.a, self.b, self.c, self.d, self.level)


def _symbol(level, a, b, c, d):
    n, m = level
    k = n * m
    return CosetSymbol(a % n, b % n, c % k, d % k, level)


def gamma_member(mat, n, m):
    """Membership in the level (n, m) subgroup.

    The defining congruences (a == 1, b == 0 mod n; c == 0, d == 1 mod nm)
    force a == 1 mod nm as well via the determinant, which is asserted.
    """
    _check_level(n, m)
    k = n * m
    member = (mat.a % n == 1 and mat.b % n == 0 and mat.c % k == 0
              and mat.d % k == 1)
    if member:
        # ad - bc = 1 with c == 0, d == 1 mod k pins a mod k too
        assert mat.a % k == 1
    return member


def coset_of(mat, n, m):
    """The coset symbol of an integral matrix: rows reduced mod n and nm."""
    _check_level(n, m)
    k = n * m
    return CosetSymbol(mat.a % n, mat.b % n, mat.c % k, mat.d % k, (n, m))


def lift_coset(sym):
    """An integral determinant-one matrix reducing to the given symbol.

    The top row is shifted by multiples of N to make the determinant 1 mod
    MN (solvable because generating columns force gcd(c, d, M) = 1), the
    bottom row is nudged by multiples of MN to a coprime integer pair, and
    the top row is then corrected to exact determinant one.  Any
    representative is acceptable; only the coset matters.
    """
    n, m = sym.level
    k = n * m
    a, b, c, d = sym.quad()
    assert (a * d - b * c - 1) % n == 0
    l1 = (a * d - b * c - 1) // n
    # solve k1*d - k2*c == -l1 (mod m)
    if m == 1:
        k1 = k2 = 0
    else:
        g, u, v = _ext_gcd(d, c)
        assert gcd(g, m) == 1
        t = (-l1 * pow(g, -1, m)) % m
        k1, k2 = (u * t) % m, (-v * t) % m
    a1, b1 = a + k1 * n, b + k2 * n
    assert (a1 * d - b1 * c) % k == 1
    # coprime bottom row congruent to (c, d) mod k
    c0 = c if c else k
    if gcd(c0, d) == 1:
        d0 = d
    else:
        s = 1
        for p in prime_factors(c0):
            if d % p:
                s *= p
        d0 = d + s * k
        assert gcd(c0, d0) == 1
    # top row correction: subtract f*k times a (d0, c0) Bezout pair
    f = a1 * d0 - b1 * c0 - 1
    assert f % k == 0
    f //= k
    g2, u2, v2 = _ext_gcd(d0, c0)
    assert g2 == 1
    out = IntMatrix2(a1 - f * u2 * k, b1 + f * v2 * k, c0, d0)
    assert coset_of(out, n, m) == sym
    return out


def coset_index(n, m):
    """Index of the level subgroup: M^2 N^3 prod over p | MN (1 - p^-2)."""
    _check_level(n, m)
    val = Fraction(m * m * n ** 3)
    for p in prime_factors(n * m):
        val *= Fraction(p * p - 1, p * p)
    assert val.denominator == 1
    return int(val)


def enumerate_cosets(n, m, bound=DEFAULT_ENUM_BOUND):
    """All coset symbols at level (n, m), lexicographically sorted.

    For MN >= 3 the count must equal the index formula, which is asserted.
    """
    _check_level(n, m)
    k = n * m
    if (n * k) ** 2 > bound:
        raise BoundExceeded("coset scan size (N*MN)^2 = %d exceeds the "
                            "bound %d" % ((n * k) ** 2, bound))
    grp = make_group((n, k))
    out = []
    for a in range(n):
        for b in range(n):
            for c in range(k):
                col1 = grp.character((a, c))
                for d in range(k):
                    if (a * d - b * c) % n != 1:
                        continue
                    if not spans_dual((col1, grp.character((b, d))), grp):
                        continue
                    out.append(CosetSymbol(a, b, c, d, (n, m)))
    if k >= 3:
        assert len(out) == coset_index(n, m)
    return out


def manin_space(n, m, with_O=False, enum_bound=DEFAULT_ENUM_BOUND,
                snf_bound=DEFAULT_SNF_BOUND, rank_method="auto"):
    """Relation system and report for the coset symbol space at (n, m).

    Rows: the two-term turn e_s + e_(b,-a;d,-c) and the three-term split
    e_s - e_(a-b,b;c-d,d) - e_(a,b-a;c,d-c); with_O adds the column swap
    e_s - e_(b,a;d,c), which only makes sense at N = 2 (the swap flips the
    determinant sign otherwise).  The degenerate rule "e_s = 0 when s is
    fixed by its own turn or rotation" never fires: a fixed point would
    have determinant 0 mod N, and construction asserts none occurs.
    """
    _check_level(n, m)
    if with_O and n != 2:
        raise ValueError("the column-swap relation exists only at N = 2")
    t0 = time.perf_counter()
    level = (n, m)
    cosets = enumerate_cosets(n, m, bound=enum_bound)
    index = {s: i for i, s in enumerate(cosets)}
    rows = []
    seen = set()

    def emit(parts):
        row = {}
        for s, coeff in parts:
            i = index[s]
            val = row.get(i, 0) + coeff
            if val:
                row[i] = val
            elif i in row:
                del row[i]
        if not row:
            return
        sig = tuple(sorted(row.items()))
        if sig not in seen:
            seen.add(sig)
            rows.append(row)

    for s in cosets:
        a, b, c, d = s.quad()
        turned = _symbol(level, b, -a, d, -c)
        rotated = _symbol(level, a + b, -a, c + d, -c)
        assert turned != s and rotated != s
        emit([(s, 1), (turned, 1)])
        emit([(s, 1), (_symbol(level, a - b, b, c - d, d), -1),
              (_symbol(level, a, b - a, c, d - c), -1)])
        if with_O:
            emit([(s, 1), (_symbol(level, b, a, d, c), -1)])
    rel = SparseIntMatrix(len(rows), len(cosets), rows)
    grp = make_group((n, n * m))
    variant = Variant.MINUS if with_O else Variant.PLAIN
    system = RelationSystem(grp, 2, variant, cosets, rel)
    rank = rank_over_Q(rel, method=rank_method) if cosets else 0
    torsion = smith_normal_form(rel, bound=snf_bound).torsion
    ms = (time.perf_counter() - t0) * 1000.0
    report = DimensionReport(grp, 2, variant, "MANIN", len(cosets) - rank,
                             torsion, len(cosets), ms)
    return system, report


def cusp_formula(n, m):
    """Closed-form cusp count MN^2/2 prod over p | MN of (1 - p^-2)."""
    _check_level(n, m)
    k = n * m
    if k < 3:
        raise ValueError("the cusp formula needs MN >= 3")
    val = Fraction(m * n * n, 2)
    for p in prime_factors(k):
        val *= Fraction(p * p - 1, p * p)
    assert val.denominator == 1, (
        "closed-form cusp count is not an integer at level (%d, %d): %s"
        % (n, m, val))
    return int(val)


def cusp_orbit_count(n, m, bound=DEFAULT_ENUM_BOUND):
    """Cusps counted as coset orbits under translation and negation.

    The orbit of a symbol under right multiplication by (1,1;0,1) and by
    minus the identity is exactly a cusp of the level.
    """
    cosets = enumerate_cosets(n, m, bound=bound)
    level = (n, m)
    index = {s: i for i, s in enumerate(cosets)}
    parent = list(range(len(cosets)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    for s in cosets:
        a, b, c, d = s.quad()
        i = index[s]
        union(i, index[_symbol(level, a, a + b, c, c + d)])
        union(i, index[_symbol(level, -a, -b, -c, -d)])
    return len({find(i) for i in range(len(cosets))})


def cusp_count(n, m, bound=DEFAULT_ENUM_BOUND):
    """Cusp count, by closed form and by orbit count, asserted equal.

    Levels where the two routes disagree raise AssertionError instead of
    silently preferring one; use cusp_formula or cusp_orbit_count directly
    to inspect either route on its own.
    """
    formula = cusp_formula(n, m)
    orbits = cusp_orbit_count(n, m, bound=bound)
    assert formula == orbits, (
        "cusp routes disagree at level (%d, %d): formula %d, orbits %d"
        % (n, m, formula, orbits))
    return formula


def genus(n, m):
    """Genus closed form 1 + MN^2(MN - 6)/24 prod (1 - p^-2), N >= 3."""
    _check_level(n, m)
    if n < 3:
        raise ValueError("no genus closed form at N = 2")
    k = n * m
    val = Fraction(m * n * n * (k - 6), 24)
    for p in prime_factors(k):
        val *= Fraction(p * p - 1, p * p)
    total = 1 + val
    assert total.denominator == 1
    return int(total)


def eps_fixed(m):
    """Cusps of level (2, m) fixed by the sign involution, for m > 2.

    Cusp classes are pairs (a, c) mod 2m with gcd(a, c, 2m) = 1 taken up to
    sign and the translations a -> a + 2jc; the involution sends (a, c) to
    (-a, c).  The enumerated count must equal 2 phi(m) + phi(2m).
    """
    if int(m) != m or m <= 2:
        raise ValueError("fixed-cusp count is defined for M > 2")
    k = 2 * m
    pairs = [(a, c) for a in range(k) for c in range(k)
             if gcd(gcd(a, c), k) == 1]
    index = {p: i for i, p in enumerate(pairs)}
    parent = list(range(len(pairs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    for (a, c) in pairs:
        i = index[(a, c)]
        union(i, index[((-a) % k, (-c) % k)])
        union(i, index[((a + 2 * c) % k, c)])
    fixed = 0
    for i, (a, c) in enumerate(pairs):
        if find(i) != i:
            continue
        if find(index[((-a) % k, c)]) == i:
            fixed += 1
    formula = 2 * totient(m) + totient(k)
    assert fixed == formula, (
        "fixed-cusp routes disagree at M = %d: enumerated %d, formula %d"
        % (m, fixed, formula))
    return formula


class LevelInvariants:
    """Closed-form level numerics: index, cusps, genus, fixed cusps."""

    __slots__ = ("n", "m", "index", "cusps", "genus", "fixed_cusps")

    def __init__(self, n, m, index, cusps, genus=None, fixed_cusps=None):
        self.n = n
        self.m = m
        self.index = index
        self.cusps = cusps
        self.genus = genus
        self.fixed_cusps = fixed_cusps

    def to_json(self):
        out = {"N": self.n, "M": self.m, "index": self.index,
               "cusps": self.cusps}
        if self.genus is not None:
            out["genus"] = self.genus
        if self.fixed_cusps is not None:
            out["fixed_cusps"] = self.fixed_cusps
        return out

    def __repr__(self):
        return "LevelInvariants(%r)" % (self.to_json(),)


def level_invariants(n, m):
    """Closed-form invariants of a level with MN >= 3.

    The genus needs N >= 3 and the fixed-cusp count N = 2, M > 2; either is
    omitted outside its range rather than guessed.
    """
    _check_level(n, m)
    if n * m < 3:
        raise ValueError("closed-form invariants need MN >= 3")
    idx = coset_index(n, m)
    cusps = cusp_formula(n, m)
    assert idx % cusps == 0
    g = genus(n, m) if n >= 3 else None
    eps = eps_fixed(m) if n == 2 and m > 2 else None
    return LevelInvariants(n, m, idx, cusps, g, eps)


def closed_form(group):
    """Closed-form dimension report of the minus module at n = 2."""
    return formula_dimension(group, 2, Variant.MINUS, want_torsion=True)


def level2_consistency(m, enum_bound=DEFAULT_ENUM_BOUND,
                       snf_bound=DEFAULT_SNF_BOUND):
    """Genus bookkeeping at level (2, m), m > 2, from brute dimensions.

    No genus closed form exists at N = 2.  Instead the plain dimension
    2g + cusps - 1 determines g, which must match the Euler characteristic
    count (the level subgroup misses -I and has no elliptic elements); the
    swap-quotient dimension must equal g + (cusps - fixed)/2 with torsion
    (Z/2)^(fixed - 1), and both must match the closed form for the group
    Z/2 x Z/2m.
    """
    _, rep_plain = manin_space(2, m, enum_bound=enum_bound,
                               snf_bound=snf_bound)
    _, rep_minus = manin_space(2, m, with_O=True, enum_bound=enum_bound,
                               snf_bound=snf_bound)
    cusps = cusp_orbit_count(2, m, bound=enum_bound)
    eps = eps_fixed(m)
    g2 = rep_plain.dim_q + 1 - cusps
    assert g2 >= 0 and g2 % 2 == 0
    g = g2 // 2
    mu = coset_index(2, m) // 2
    assert g == 1 + Fraction(mu, 12) - Fraction(cusps, 2)
    assert rep_plain.torsion == ()
    assert (cusps - eps) % 2 == 0
    assert rep_minus.dim_q == g + (cusps - eps) // 2
    assert rep_minus.torsion == (2,) * (eps - 1)
    form = closed_form(make_group((2, 2 * m)))
    assert (form.dim_q, form.torsion) == (rep_minus.dim_q, rep_minus.torsion)
    return {"m": m, "genus": g, "cusps": cusps, "fixed_cusps": eps,
            "dim": rep_plain.dim_q, "dim_minus": rep_minus.dim_q}


class IsoReport:
    """Outcome of matching the symbol and coset presentations of a level."""

    __slots__ = ("level", "group", "keys", "cosets", "dim_symbols",
                 "dim_cosets", "torsion_symbols", "torsion_cosets")

    def __init__(self, level, group, keys, cosets, dim_symbols, dim_cosets,
                 torsion_symbols, torsion_cosets):
        self.level = level
        self.group = group
        self.keys = keys
        self.cosets = cosets
        self.dim_symbols = dim_symbols
        self.dim_cosets = dim_cosets
        self.torsion_symbols = tuple(torsion_symbols)
        self.torsion_cosets = tuple(torsion_cosets)

    @property
    def ok(self):
        return (self.dim_symbols == self.dim_cosets
                and self.torsion_symbols == self.torsion_cosets)

    def to_json(self):
        return {"N": self.level[0], "M": self.level[1], "group": self.group,
                "keys": self.keys, "cosets": self.cosets,
                "dim_symbols": self.dim_symbols,
                "dim_cosets": self.dim_cosets,
                "torsion_symbols": list(self.torsion_symbols),
                "torsion_cosets": list(self.torsion_cosets),
                "ok": self.ok}

    def __repr__(self):
        return "IsoReport(%r)" % (self.to_json(),)


def iso_check(n, m, enum_bound=DEFAULT_ENUM_BOUND,
              snf_bound=DEFAULT_SNF_BOUND, rank_method="auto"):
    """Match the minus-variant symbol presentation against the coset one.

    For N >= 3 the keys of unit determinant class biject with the cosets
    (the key characters become the columns, ordered so the determinant is
    +1 mod N); every relation row of each side, pushed through the
    bijection, must land in the other side's rational span, and dimension
    and torsion must agree.  At N = 2 the cosets double-cover the keys, the
    swap rows collapse to zero, and the same checks run over the quotient.
    """
    _check_level(n, m)
    k = n * m
    grp = make_group((n, k))
    level = (n, m)

    def quotient(system, rank_val, bound_val):
        tors = smith_normal_form(system.rel, bound=bound_val).torsion
        return len(system.basis) - rank_val, tors

    if n >= 3:
        keys = enumerate_det_class(grp, 1, bound=enum_bound)
        sym_system = build_relations(grp, 2, Variant.MINUS, keys=keys)
        man_system, man_report = manin_space(
            n, m, enum_bound=enum_bound, snf_bound=snf_bound,
            rank_method=rank_method)
        fwd = {}
        for key in keys:
            (a1, c1), (a2, c2) = key[0].residues, key[1].residues
            if (a1 * c2 - a2 * c1) % n == 1:
                fwd[key] = CosetSymbol(a1, a2, c1, c2, level)
            else:
                fwd[key] = CosetSymbol(a2, a1, c2, c1, level)
        assert len(set(fwd.values())) == len(keys) == len(man_system.basis)
        back = {s: canonicalize((grp.character((s.a, s.c)),
                                 grp.character((s.b, s.d))))
                for s in man_system.basis}
        for key, s in fwd.items():
            assert back[s] == key
        fwd_rows = [{man_system.index[fwd[keys[i]]]: v
                     for i, v in row.items()}
                    for row in sym_system.rel.rows]
        back_rows = [{sym_system.index[back[man_system.basis[i]]]: v
                      for i, v in row.items()}
                     for row in man_system.rel.rows]
        assert SpanChecker(man_system.rel).contains_all(fwd_rows)
        assert SpanChecker(sym_system.rel).contains_all(back_rows)
        rank = rank_over_Q(sym_system.rel, method=rank_method)
        dim_sym, tors_sym = quotient(sym_system, rank, snf_bound)
        report = IsoReport(level, grp.literal(), len(keys),
                           len(man_system.basis), dim_sym, man_report.dim_q,
                           tors_sym, man_report.torsion)
        assert report.ok
        return report

    # N = 2: collapse cosets onto keys; the swap rows become zero rows
    keys = enumerate_generators(grp, 2, bound=enum_bound)
    sym_system = build_relations(grp, 2, Variant.MINUS, keys=keys)
    man_system, man_report = manin_space(
        2, m, with_O=True, enum_bound=enum_bound, snf_bound=snf_bound,
        rank_method=rank_method)
    back = {s: canonicalize((grp.character((s.a, s.c)),
                             grp.character((s.b, s.d))))
            for s in man_system.basis}
    hits = {}
    for s, key in back.items():
        hits[key] = hits.get(key, 0) + 1
    assert set(hits) == set(keys) and set(hits.values()) == {2}

    projected = []
    for row in man_system.rel.rows:
        out = {}
        for i, v in row.items():
            j = sym_system.index[back[man_system.basis[i]]]
            val = out.get(j, 0) + v
            if val:
                out[j] = val
            elif j in out:
                del out[j]
        if out:
            projected.append(out)
    proj_rel = SparseIntMatrix(len(projected), len(keys), projected)
    assert SpanChecker(sym_system.rel).contains_all(projected)
    assert SpanChecker(proj_rel).contains_all(sym_system.rel.rows)
    rank = rank_over_Q(sym_system.rel, method=rank_method)
    dim_sym, tors_sym = quotient(sym_system, rank, snf_bound)
    report = IsoReport(level, grp.literal(), len(keys),
                       len(man_system.basis), dim_sym, man_report.dim_q,
                       tors_sym, man_report.torsion)
    assert report.ok
    return report
