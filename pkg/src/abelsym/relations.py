"""Relation systems presenting the symbol-module variants.

The plain module imposes the blowup relation (every symbol equals the sum of
its two one-step modifications); the minus variant adds the sign relation
(negating one entry negates the symbol); the plus variant exists only for
length-1 symbols and identifies a character with its negative.  Reordering
is not a matrix row here: the basis is already canonical (sorted) keys, so
every relation template is instantiated at every position pair.

Dimensions over Q come from exact ranks of the relation matrix; torsion of
the presented quotient from its Smith normal form.  The closed forms of the
accompanying theory (minus-variant dimensions and torsion, and the
plain-minus difference) are implemented alongside for cross-checking.
"""

from __future__ import annotations

import enum
import time
from fractions import Fraction

from .abelian import parse_group
from .arith import divisors, prime_factors, totient
from .exactla import (DEFAULT_SNF_BOUND, SparseIntMatrix, rank_over_Q,
                      smith_normal_form)
from .symbols import (DEFAULT_ENUM_BOUND, FormalSum, canonicalize,
                      det_classes, enumerate_det_class, enumerate_generators)


class Variant(enum.Enum):
    PLAIN = "plain"
    MINUS = "minus"
    PLUS = "plus"

    @classmethod
    def parse(cls, value):
        if isinstance(value, Variant):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError("unknown variant %r (expected plain, minus or "
                             "plus)" % (value,)) from None


class RelationSystem:
    """Canonical keys (columns) plus the relation rows presenting them."""

    __slots__ = ("group", "n", "variant", "basis", "rel", "index")

    def __init__(self, group, n, variant, basis, rel):
        self.group = group
        self.n = n
        self.variant = variant
        self.basis = basis
        self.rel = rel
        self.index = {key: i for i, key in enumerate(basis)}

    def vector(self, fsum):
        """A FormalSum over the basis as a sparse row dict."""
        row = {}
        for key, coeff in fsum.items():
            idx = self.index.get(key)
            if idx is None:
                raise KeyError("key %r is not in the basis" % (key,))
            row[idx] = coeff
        return row

    def __repr__(self):
        return "RelationSystem(%s, n=%d, %s, %d keys, %d rows)" % (
            self.group.literal(), self.n, self.variant.value,
            len(self.basis), self.rel.nrows)


def build_relations(group, n, variant, keys=None, bound=DEFAULT_ENUM_BOUND):
    """Relation system for (group, n, variant).

    `keys` restricts the basis (used for determinant-class subsystems); the
    relation templates never leave a determinant class, so the restricted
    rows are exactly the full rows supported on the restricted keys.
    """
    variant = Variant.parse(variant)
    if variant is Variant.PLUS and n != 1:
        raise ValueError("the plus variant is defined only for n = 1")
    if keys is None:
        keys = enumerate_generators(group, n, bound=bound)
    index = {key: i for i, key in enumerate(keys)}
    rows = []
    seen = set()

    def emit(parts):
        row = {}
        for key, coeff in parts:
            i = index[key]
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

    if variant in (Variant.PLAIN, Variant.MINUS):
        for key in keys:
            for i in range(n):
                for j in range(n):
                    if i == j:
                        continue
                    bi, bj = key[i], key[j]
                    left = canonicalize(key.replace(i, bi - bj))
                    right = canonicalize(key.replace(j, bj - bi))
                    emit([(key, 1), (left, -1), (right, -1)])
    if variant is Variant.MINUS:
        for key in keys:
            for i in range(n):
                flipped = canonicalize(key.replace(i, -key[i]))
                emit([(key, 1), (flipped, 1)])
    if variant is Variant.PLUS:
        for key in keys:
            mirror = canonicalize((-key[0],))
            emit([(key, 1), (mirror, -1)])
    rel = SparseIntMatrix(len(rows), len(keys), rows)
    return RelationSystem(group, n, variant, list(keys), rel)


def relation_matrix(group, n, variant, bound=DEFAULT_ENUM_BOUND):
    """Just the sparse relation matrix of build_relations."""
    return build_relations(group, n, variant, bound=bound).rel


class DimensionReport:
    """Dimension/torsion result with its provenance (brute or formula)."""

    __slots__ = ("group", "n", "variant", "method", "dim_q", "torsion",
                 "generator_count", "ms")

    def __init__(self, group, n, variant, method, dim_q, torsion,
                 generator_count, ms):
        self.group = group
        self.n = n
        self.variant = Variant.parse(variant)
        self.method = method
        self.dim_q = dim_q
        self.torsion = tuple(torsion)
        self.generator_count = generator_count
        self.ms = ms

    def to_json(self):
        return {
            "group": self.group.literal(),
            "n": self.n,
            "variant": self.variant.value,
            "method": self.method,
            "dim": self.dim_q,
            "torsion": list(self.torsion),
            "generators": self.generator_count,
            "ms": self.ms,
        }

    @classmethod
    def from_json(cls, obj):
        return cls(parse_group(obj["group"]), obj["n"], obj["variant"],
                   obj["method"], obj["dim"], tuple(obj["torsion"]),
                   obj["generators"], obj["ms"])

    def __repr__(self):
        bits = "%s n=%d %s %s: dim %d" % (
            self.group.literal(), self.n, self.variant.value, self.method,
            self.dim_q)
        if self.torsion:
            bits += " torsion %r" % (self.torsion,)
        return "DimensionReport(%s)" % bits


def dimension(group, n, variant, want_torsion=False,
              enum_bound=DEFAULT_ENUM_BOUND, snf_bound=DEFAULT_SNF_BOUND,
              rank_method="auto"):
    """Brute-force dimension (and optionally torsion) of the presentation."""
    t0 = time.perf_counter()
    system = build_relations(group, n, variant, bound=enum_bound)
    gens = len(system.basis)
    rank = rank_over_Q(system.rel, method=rank_method) if gens else 0
    torsion = ()
    if want_torsion and gens:
        torsion = smith_normal_form(system.rel, bound=snf_bound).torsion
    ms = (time.perf_counter() - t0) * 1000.0
    return DimensionReport(group, n, Variant.parse(variant), "BRUTE",
                           gens - rank, torsion, gens, ms)


def dimension_graded(group, variant, want_torsion=False,
                     enum_bound=DEFAULT_ENUM_BOUND,
                     snf_bound=DEFAULT_SNF_BOUND, rank_method="auto"):
    """Dimension via the determinant grading (n = 2, Z/N x Z/MN, N >= 3).

    All determinant classes are isomorphic, so only the class of 1 is
    presented and the result is scaled by the number of classes.  Still a
    brute-force computation, merely sharded.
    """
    t0 = time.perf_counter()
    variant = Variant.parse(variant)
    classes = det_classes(group)
    keys = enumerate_det_class(group, classes[0], bound=enum_bound)
    system = build_relations(group, 2, variant, keys=keys)
    rank = rank_over_Q(system.rel, method=rank_method) if keys else 0
    dim = (len(keys) - rank) * len(classes)
    torsion = ()
    if want_torsion and keys:
        per_class = smith_normal_form(system.rel, bound=snf_bound).torsion
        torsion = tuple(sorted(per_class * len(classes)))
    ms = (time.perf_counter() - t0) * 1000.0
    return DimensionReport(group, 2, variant, "BRUTE", dim, torsion,
                           len(keys) * len(classes), ms)


def kernel_generators(group, n, bound=DEFAULT_ENUM_BOUND):
    """Spanning set of the kernel of the plain -> minus projection.

    One formal sum e_key + e_(key with one entry negated) per key and
    position, deduplicated.
    """
    if n < 2:
        raise ValueError("kernel generators need n >= 2")
    out = []
    seen = set()
    for key in enumerate_generators(group, n, bound=bound):
        for i in range(n):
            flipped = canonicalize(key.replace(i, -key[i]))
            fsum = FormalSum([(key, Fraction(1)), (flipped, Fraction(1))])
            sig = tuple(sorted(fsum.items(), key=lambda kv: kv[0]))
            if sig not in seen:
                seen.add(sig)
                out.append(fsum)
    return out


def kernel_dimension(group, n, enum_bound=DEFAULT_ENUM_BOUND,
                     rank_method="auto"):
    """dim over Q of the kernel of plain -> minus, as a dimension drop."""
    plain = dimension(group, n, Variant.PLAIN, enum_bound=enum_bound,
                      rank_method=rank_method)
    minus = dimension(group, n, Variant.MINUS, enum_bound=enum_bound,
                      rank_method=rank_method)
    return plain.dim_q - minus.dim_q


def kernel_span_dimension(group, n, enum_bound=DEFAULT_ENUM_BOUND,
                          rank_method="auto"):
    """Rank added by the kernel generators over the plain relation span."""
    system = build_relations(group, n, Variant.PLAIN, bound=enum_bound)
    if not system.basis:
        return 0
    base = rank_over_Q(system.rel, method=rank_method)
    krows = [system.vector(f) for f in kernel_generators(group, n,
                                                         bound=enum_bound)]
    total = rank_over_Q(system.rel.with_rows(krows), method=rank_method)
    return total - base


# -- closed forms -------------------------------------------------------------


def _psi_product(n):
    """n * prod over p | n of (1 + 1/p), as an exact integer."""
    num, den = n, 1
    for p in prime_factors(n):
        num *= p + 1
        den *= p
    assert num % den == 0
    return num // den


def _euler_index(n):
    """n^2 * prod over p | n of (1 - 1/p^2), as an exact integer."""
    val = Fraction(n * n)
    for p in prime_factors(n):
        val *= Fraction(p * p - 1, p * p)
    assert val.denominator == 1
    return int(val)


def formula_minus(group):
    """(dim, torsion) of the minus module at n = 2 per the closed forms.

    Covers cyclic groups, Z/2 x Z/2M (M >= 3), Z/N x Z/MN (N >= 3), and the
    finite exceptional list; everything else is zero.
    """
    form = group.invariant_form()
    if len(form) == 0:
        return 0, ()
    if len(form) == 1:
        n = form[0]
        if n in (2, 3):
            return 0, (2,)
        if n == 4:
            return 0, (2, 2)
        phi = totient(n)
        # dim = 1 - (phi(N) [+ phi(N/2)])/2 + N*phi(N)/24 * prod(1 + 1/p)
        quarter = Fraction(phi * _psi_product(n), 24)
        if n % 2:
            dim = Fraction(1) - Fraction(phi, 2) + quarter
            tors = phi - 1
        else:
            phi_half = totient(n // 2)
            dim = Fraction(1) - Fraction(phi + phi_half, 2) + quarter
            tors = phi + phi_half - 1
        assert dim.denominator == 1
        return int(dim), (2,) * tors
    if len(form) == 2:
        n1, n2 = form
        if n2 % n1:
            return 0, ()
        if n1 == 2:
            m = n2 // 2
            if m == 1:
                return 0, (2, 2)
            if m == 2:
                return 0, ()
            # M^2/3 * prod over p | 2M of (1 - 1/p^2) = euler_index(2M)/12
            dim = (Fraction(1) - totient(m) - Fraction(totient(2 * m), 2)
                   + Fraction(_euler_index(2 * m), 12))
            assert dim.denominator == 1
            tors = 2 * totient(m) + totient(2 * m) - 1
            return int(dim), (2,) * tors
        # N >= 3: torsion free, phi(N)/2 isomorphic determinant classes;
        # M^2 N^3/12 * prod over p | MN of (1 - 1/p^2) = N*euler_index(MN)/12
        dim = Fraction(totient(n1), 2) * (
            1 + Fraction(n1 * _euler_index(n2), 12))
        assert dim.denominator == 1
        return int(dim), ()
    return 0, ()


def difference_formula(group):
    """Closed form for dim(plain) - dim(minus) at n = 2.

    Defined for cyclic groups of order > 5 and for Z/p x Z/p.
    """
    form = group.invariant_form()
    if len(form) == 1 and form[0] > 5:
        n = form[0]
        half = Fraction(totient(n), 2)
        if n % 2 == 0:
            half = Fraction(totient(n) + totient(n // 2), 2)
        mix = sum(totient(d) * totient(n // d)
                  for d in divisors(n) if 3 <= d <= n // 3)
        total = half + Fraction(mix, 4)
        assert total.denominator == 1
        return int(total)
    if len(form) == 2 and form[0] == form[1]:
        p = form[0]
        if prime_factors(p) == [p]:
            return (p + 1) * (p - 1) ** 2 // 4
    raise ValueError("no difference closed form for %s" % group.literal())


def pxp_closed_forms(p):
    """(dim plain, dim minus) for Z/p x Z/p at n = 2."""
    return ((p - 1) * (p ** 3 + 6 * p * p - p + 6) // 24,
            (p - 1) * (p ** 3 - p + 12) // 24)


def formula_dimension(group, n, variant, want_torsion=False):
    """Closed-form DimensionReport where the theory provides one.

    The minus variant at n = 2 is covered for every group; the plain
    variant only where the difference formula applies.
    """
    t0 = time.perf_counter()
    variant = Variant.parse(variant)
    if n != 2:
        raise ValueError("closed forms are available only for n = 2")
    mdim, mtors = formula_minus(group)
    if variant is Variant.MINUS:
        dim, torsion = mdim, mtors
    elif variant is Variant.PLAIN:
        dim, torsion = mdim + difference_formula(group), ()
    else:
        raise ValueError("no closed form for variant %s" % variant.value)
    if not want_torsion:
        torsion = ()
    ms = (time.perf_counter() - t0) * 1000.0
    return DimensionReport(group, n, variant, "FORMULA", dim, torsion, 0, ms)
