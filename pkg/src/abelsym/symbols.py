"""Canonical symbol keys, formal sums, and the determinant grading.

A symbol is an n-tuple of characters that together generate the dual group.
Reordering a tuple does not change the symbol, so tuples are kept sorted;
the sorted tuple is the canonical key and doubles as the free-module basis
element.  For groups of the bi-cyclic shape Z/N x Z/MN (N >= 3) the pairs
additionally carry a determinant invariant in (Z/N)^x, well defined up to
sign, which grades the whole module.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd

from .abelian import spans_dual
from .exactla import BoundExceeded

# |G|^n above this refuses to enumerate; desk-scale guard only.
DEFAULT_ENUM_BOUND = 10_000_000


class SymbolKey:
    """Sorted tuple of characters generating the dual group."""

    __slots__ = ("entries", "group", "_hash")

    def __init__(self, entries):
        self.entries = tuple(entries)
        self.group = self.entries[0].group
        self._hash = hash(self.entries)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, SymbolKey) and self.entries == other.entries

    def __lt__(self, other):
        return self.entries < other.entries

    def __le__(self, other):
        return self.entries <= other.entries

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def replace(self, i, char):
        """New (raw, unsorted) tuple with entry i replaced."""
        entries = list(self.entries)
        entries[i] = char
        return tuple(entries)

    def __repr__(self):
        return "<%s>" % ", ".join(
            "(%s)" % ",".join(map(str, ch.residues)) for ch in self.entries)


def canonicalize(raw):
    """Sort a character tuple into its canonical key.

    Rejects tuples that do not generate the dual group; those are not
    symbols at all.
    """
    if isinstance(raw, SymbolKey):
        return raw
    entries = tuple(raw)
    if not entries:
        raise ValueError("a symbol needs at least one character")
    if not spans_dual(entries, entries[0].group):
        raise ValueError("characters %r do not generate the dual group"
                         % (entries,))
    return SymbolKey(sorted(entries))


def enumerate_generators(group, n, bound=DEFAULT_ENUM_BOUND):
    """All canonical symbol keys for (group, n), in sorted order.

    Candidates are the sorted n-multisets of characters, which are exactly
    the canonical tuples; each is kept iff it generates the dual group.
    """
    if n < 1:
        raise ValueError("symbol length n must be >= 1")
    if group.order ** n > bound:
        raise BoundExceeded(
            "enumeration size |G|^n = %d exceeds the bound %d"
            % (group.order ** n, bound))
    chars = group.characters()
    out = []
    for combo in combinations_with_replacement(chars, n):
        if spans_dual(combo, group):
            out.append(SymbolKey(combo))
    return out


class FormalSum:
    """Finitely supported rational combination of symbol keys."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, coeff in (terms.items() if isinstance(terms, dict)
                               else terms):
                coeff = Fraction(coeff)
                if coeff:
                    cur = clean.get(key)
                    if cur is None:
                        clean[key] = coeff
                    else:
                        cur += coeff
                        if cur:
                            clean[key] = cur
                        else:
                            del clean[key]
        self.terms = clean

    @classmethod
    def of(cls, key, coeff=1):
        return cls({key: Fraction(coeff)})

    def __add__(self, other):
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            val = out.get(key, 0) + coeff
            if val:
                out[key] = val
            elif key in out:
                del out[key]
        res = FormalSum()
        res.terms = out
        return res

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        k = Fraction(k)
        res = FormalSum()
        if k:
            res.terms = {key: coeff * k for key, coeff in self.terms.items()}
        return res

    def __eq__(self, other):
        return isinstance(other, FormalSum) and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def items(self):
        return self.terms.items()

    def __repr__(self):
        if not self.terms:
            return "FormalSum(0)"
        bits = ["%s*%r" % (c, k) for k, c in sorted(
            self.terms.items(), key=lambda kv: kv[0])]
        return "FormalSum(%s)" % " + ".join(bits)


class DetClass:
    """Determinant value in (Z/N)^x identified with its negative."""

    __slots__ = ("modulus", "k")

    def __init__(self, modulus, k):
        k %= modulus
        if gcd(k, modulus) != 1:
            raise ValueError("determinant %d is not a unit mod %d"
                             % (k, modulus))
        self.modulus = modulus
        self.k = min(k, (modulus - k) % modulus)

    def __eq__(self, other):
        return (isinstance(other, DetClass)
                and self.modulus == other.modulus and self.k == other.k)

    def __hash__(self):
        return hash((self.modulus, self.k))

    def __lt__(self, other):
        return (self.modulus, self.k) < (other.modulus, other.k)

    def __repr__(self):
        return "DetClass(%d mod %d)" % (self.k, self.modulus)


def det_classes(group):
    """All determinant classes for a bi-cyclic group, sorted by k."""
    n_small, _ = _bicyclic_form(group)
    ks = sorted({min(k, n_small - k)
                 for k in range(1, n_small) if gcd(k, n_small) == 1})
    return [DetClass(n_small, k) for k in ks]


def _bicyclic_form(group):
    """The pair (N, MN) when the group is literally Z/N x Z/MN, N >= 3."""
    factors = tuple(f for f in group.factors if f > 1)
    if len(factors) != 2:
        raise ValueError("group %s is not of bi-cyclic rank-2 form"
                         % group.literal())
    n_small, n_big = factors
    if n_small < 3 or n_big % n_small:
        raise ValueError(
            "group %s is not of the form Z/N x Z/MN with N >= 3"
            % group.literal())
    return n_small, n_big


def det_class(key):
    """Determinant invariant of a length-2 key over Z/N x Z/MN, N >= 3."""
    if len(key.entries) != 2:
        raise ValueError("the determinant grading needs n = 2")
    n_small, _ = _bicyclic_form(key.group)
    pos = [i for i, f in enumerate(key.group.factors) if f > 1]
    a, b = key.entries
    a1, a2 = a.residues[pos[0]], a.residues[pos[1]]
    b1, b2 = b.residues[pos[0]], b.residues[pos[1]]
    det = (a1 * b2 - a2 * b1) % n_small
    return DetClass(n_small, det)


def enumerate_det_class(group, k, bound=DEFAULT_ENUM_BOUND):
    """Canonical length-2 keys in one determinant class.

    Over all classes these lists partition enumerate_generators(group, 2).
    """
    n_small, _ = _bicyclic_form(group)
    if not isinstance(k, DetClass):
        k = DetClass(n_small, k)
    elif k.modulus != n_small:
        raise ValueError("determinant class has modulus %d, expected %d"
                         % (k.modulus, n_small))
    return [key for key in enumerate_generators(group, 2, bound=bound)
            if det_class(key) == k]
