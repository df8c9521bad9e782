"""Finite abelian groups, their characters, cyclic subgroups and quotients.

A group is a product of cyclic factors Z/n_1 x ... x Z/n_r in the order the
caller gave them.  Characters are identified with residue tuples through the
pairing <b, g> = sum b_i g_i / n_i mod 1, which makes the dual group an
explicit copy of the group itself.  Quotient presentations are derived from
Smith normal forms with recorded transforms, so projection and the dual-side
embedding/restriction maps are all constructive.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd, lcm, prod

from .exactla import dense_snf_with_transforms

# Enumerations over elements and subgroups stay total only for desk-scale
# groups; make_group refuses anything larger by default.
DEFAULT_MAX_ORDER = 10_000

_group_cache = {}


def make_group(orders, max_order=DEFAULT_MAX_ORDER):
    """Group descriptor for Z/orders[0] x Z/orders[1] x ...

    Factors are kept verbatim for display and coordinates; the invariant
    factor chain d_1 | d_2 | ... is derived once via Smith normal form.
    """
    factors = tuple(int(x) for x in orders)
    if not factors:
        raise ValueError("a group needs at least one cyclic factor")
    if any(f < 1 for f in factors):
        raise ValueError("cyclic factor orders must be >= 1")
    if prod(factors) > max_order:
        raise ValueError(
            "group order %d exceeds the configured limit %d"
            % (prod(factors), max_order))
    key = factors
    grp = _group_cache.get(key)
    if grp is None:
        grp = GroupDescriptor(factors)
        _group_cache[key] = grp
    return grp


def parse_group(text, max_order=DEFAULT_MAX_ORDER):
    """Parse the group literal syntax 'n1xn2x...', e.g. '3x9' or '16'."""
    parts = text.lower().split("x")
    try:
        orders = [int(p) for p in parts]
    except ValueError:
        raise ValueError("bad group literal %r; expected e.g. '5' or '3x9'"
                         % (text,)) from None
    return make_group(orders, max_order=max_order)


class GroupDescriptor:
    """A finite abelian group presented as a product of cyclic factors."""

    __slots__ = ("factors", "invariant_factors", "order", "rank",
                 "_char_cache")

    def __init__(self, factors):
        self.factors = tuple(factors)
        self.order = prod(self.factors)
        diag = [[0] * len(self.factors) for _ in self.factors]
        for i, f in enumerate(self.factors):
            diag[i][i] = f
        d, _, _ = dense_snf_with_transforms(diag)
        self.invariant_factors = tuple(d[i][i] for i in range(len(self.factors)))
        self.rank = sum(1 for f in self.invariant_factors if f > 1)
        self._char_cache = {}

    def __repr__(self):
        return "GroupDescriptor(%s)" % "x".join(str(f) for f in self.factors)

    def literal(self):
        return "x".join(str(f) for f in self.factors)

    @property
    def exponent(self):
        return self.invariant_factors[-1]

    def invariant_form(self):
        """Invariant factors with trivial entries dropped."""
        return tuple(f for f in self.invariant_factors if f > 1)

    def reduce(self, residues):
        return tuple(r % f for r, f in zip(residues, self.factors))

    def elements(self):
        """All residue tuples in lexicographic order."""
        return product(*(range(f) for f in self.factors))

    def character(self, residues):
        """Interned character with the given residue tuple."""
        res = self.reduce(tuple(residues))
        ch = self._char_cache.get(res)
        if ch is None:
            ch = Character(self, res)
            self._char_cache[res] = ch
        return ch

    def characters(self):
        """All characters in lexicographic residue order."""
        return [self.character(r) for r in self.elements()]

    def zero(self):
        return self.character((0,) * len(self.factors))

    def element_order(self, residues):
        res = self.reduce(residues)
        return lcm(*(f // gcd(r, f) for r, f in zip(res, self.factors)))


class Character:
    """Character of a finite abelian group, stored as a residue tuple.

    chi(e_i) = exp(2 pi i residues[i] / factors[i]).  Instances are interned
    per group, so identity comparison and dict lookups are cheap.
    """

    __slots__ = ("group", "residues", "_hash")

    def __init__(self, group, residues):
        self.group = group
        self.residues = residues
        self._hash = hash(residues)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other or (
            isinstance(other, Character)
            and self.group is other.group
            and self.residues == other.residues)

    def __lt__(self, other):
        return self.residues < other.residues

    def __le__(self, other):
        return self.residues <= other.residues

    def __add__(self, other):
        if self.group is not other.group:
            raise ValueError("characters belong to different groups")
        return self.group.character(
            tuple(a + b for a, b in zip(self.residues, other.residues)))

    def __sub__(self, other):
        if self.group is not other.group:
            raise ValueError("characters belong to different groups")
        return self.group.character(
            tuple(a - b for a, b in zip(self.residues, other.residues)))

    def __neg__(self):
        return self.group.character(tuple(-a for a in self.residues))

    def __mul__(self, k):
        return self.group.character(tuple(k * a for a in self.residues))

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.residues)

    def order(self):
        return self.group.element_order(self.residues)

    def __repr__(self):
        return "chi%r" % (self.residues,)


def pairing(b, g):
    """<b, g> = sum b_i g_i / n_i as a rational in [0, 1)."""
    grp = b.group
    if len(g) != len(grp.factors):
        raise ValueError("element has wrong number of coordinates")
    total = Fraction(0)
    for bi, gi, ni in zip(b.residues, g, grp.factors):
        total += Fraction(bi * gi, ni)
    return total % 1


def spans_dual(chars, group=None):
    """True iff the characters generate the whole dual group.

    Stack the residue rows over diag(factors); the span is full iff the
    Smith normal form is all ones.  Rank-2 groups get a closed-form gcd test
    on the 2x2 minors, since that is the hot path of key enumeration.
    """
    chars = list(chars)
    if group is None:
        if not chars:
            raise ValueError("cannot infer the group from an empty list")
        group = chars[0].group
    for ch in chars:
        if ch.group is not group:
            raise ValueError("character belongs to a different group")
    factors = group.factors
    r = len(factors)
    if group.order == 1:
        return True
    if r == 1:
        n = factors[0]
        return gcd(n, *(ch.residues[0] for ch in chars)) == 1 if chars else False
    if r == 2 and len(chars) == 2:
        (a1, a2), (b1, b2) = chars[0].residues, chars[1].residues
        d1, d2 = factors
        g = gcd(a1, a2, b1, b2, gcd(d1, d2))
        if g != 1:
            return False
        minors = gcd(a1 * b2 - a2 * b1, a2 * d1, a1 * d2, b2 * d1, b1 * d2,
                     d1 * d2)
        return minors == 1
    mat = [list(ch.residues) for ch in chars]
    mat.extend([0] * i + [f] + [0] * (r - i - 1)
               for i, f in enumerate(factors))
    d, _, _ = dense_snf_with_transforms(mat)
    return all(d[i][i] == 1 for i in range(r))


class SubgroupHandle:
    """Cyclic subgroup <generator> of an ambient group."""

    __slots__ = ("ambient", "generator", "order")

    def __init__(self, ambient, generator):
        self.ambient = ambient
        self.generator = ambient.reduce(generator)
        self.order = ambient.element_order(generator)

    def elements(self):
        """The subgroup's elements as a frozenset of residue tuples."""
        g = self.generator
        factors = self.ambient.factors
        out = set()
        cur = tuple(0 for _ in factors)
        for _ in range(self.order):
            out.add(cur)
            cur = tuple((a + b) % f for a, b, f in zip(cur, g, factors))
        return frozenset(out)

    def is_trivial(self):
        return self.order == 1

    def __repr__(self):
        return "SubgroupHandle(<%s> of order %d in %s)" % (
            ",".join(map(str, self.generator)), self.order,
            self.ambient.literal())


def proper_cyclic_subgroups(group):
    """One handle per distinct proper cyclic subgroup, trivial included.

    Generators are deduplicated by comparing element sets; the surviving
    representative is the lexicographically least generator of maximal use,
    i.e. the first one found in element order.
    """
    seen = {}
    for g in group.elements():
        h = SubgroupHandle(group, g)
        if h.order == group.order:
            continue  # not proper
        key = h.elements()
        if key not in seen:
            seen[key] = h
    return sorted(seen.values(), key=lambda h: (h.order, h.generator))


class QuotientData:
    """Constructive presentation of G/G' with the dual-side maps.

    The quotient is read off the Smith normal form U*A*V = D of the relation
    matrix A = [diag(factors); generator].  For an ambient element x, the
    class of x*V in the diagonal presentation gives project(x).  dual_embed
    sends a quotient character to the ambient character pulling back through
    project (its image is exactly the annihilator of G'), and dual_restrict
    evaluates an ambient character on the subgroup generator.
    """

    __slots__ = ("ambient", "sub", "quotient", "_V", "_divs", "_kept")

    def __init__(self, ambient, sub):
        self.ambient = ambient
        self.sub = sub
        factors = ambient.factors
        r = len(factors)
        mat = [[0] * r for _ in range(r + 1)]
        for i, f in enumerate(factors):
            mat[i][i] = f
        mat[r] = list(sub.generator)
        d, _, v = dense_snf_with_transforms(mat)
        divs = [d[i][i] for i in range(r)]
        self._V = v
        self._divs = divs
        self._kept = [i for i, di in enumerate(divs) if di > 1]
        quot_factors = [divs[i] for i in self._kept]
        self.quotient = make_group(quot_factors or [1])

    def project(self, element):
        """Image of an ambient element (residue tuple) in the quotient."""
        v = self._V
        r = len(self.ambient.factors)
        coords = []
        for i in self._kept:
            coords.append(
                sum(element[j] * v[j][i] for j in range(r)) % self._divs[i])
        return tuple(coords) if coords else (0,)

    def project_char_index(self, element):
        """project() wrapped as a quotient-group Character."""
        return self.quotient.character(self.project(element))

    def dual_embed(self, qchar):
        """Quotient character -> ambient character vanishing on the subgroup."""
        if qchar.group is not self.quotient:
            raise ValueError("character does not live on the quotient")
        v = self._V
        factors = self.ambient.factors
        res = []
        for j, nj in enumerate(factors):
            acc = 0
            for pos, i in enumerate(self._kept):
                num = v[j][i] * nj
                di = self._divs[i]
                if num % di:
                    raise AssertionError("quotient transform not integral")
                acc += qchar.residues[pos] * (num // di)
            res.append(acc % nj)
        return self.ambient.character(tuple(res))

    def dual_restrict(self, char):
        """Restriction of an ambient character to Z/d, d = subgroup order."""
        if char.group is not self.ambient:
            raise ValueError("character does not live on the ambient group")
        d = self.sub.order
        acc = 0
        for ci, hi, ni in zip(char.residues, self.sub.generator,
                              self.ambient.factors):
            acc += ci * (d * hi // ni)
        return acc % d

    def annihilator(self):
        """All ambient characters vanishing on the subgroup, sorted."""
        return sorted(self.dual_embed(q) for q in self.quotient.characters())

    def lift_restriction(self, a):
        """Lexicographically least ambient character restricting to a.

        Solves sum chi_i * w_i = a (mod d) greedily coordinate by
        coordinate, where w_i = d*generator_i/factors[i]; a choice of chi_i
        is viable iff the remaining gcd divides what is left of a.
        """
        d = self.sub.order
        a %= d
        factors = self.ambient.factors
        w = [d * hi // ni for hi, ni in zip(self.sub.generator, factors)]
        tail = [0] * (len(w) + 1)
        tail[len(w)] = d
        for i in range(len(w) - 1, -1, -1):
            tail[i] = gcd(w[i], tail[i + 1])
        if a % tail[0]:
            raise ValueError("residue %d not attained by any character" % a)
        res = []
        rem = a
        for i, ni in enumerate(factors):
            for ci in range(ni):
                if (rem - ci * w[i]) % tail[i + 1] == 0:
                    res.append(ci)
                    rem = (rem - ci * w[i]) % d
                    break
            else:
                raise AssertionError("greedy lift failed")
        return self.ambient.character(tuple(res))

    def dual_lifts(self, a):
        """All ambient characters restricting to a, sorted."""
        base = self.lift_restriction(a)
        return sorted(base + ann for ann in self.annihilator())


def quotient_data(group, sub):
    """Quotient presentation of group/<sub> with constructive dual maps."""
    if sub.ambient is not group:
        raise ValueError("subgroup handle belongs to a different group")
    return QuotientData(group, sub)
