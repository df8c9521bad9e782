"""Canonical keys, enumeration counts, formal sums, determinant grading."""

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from abelsym.abelian import make_group
from abelsym.exactla import BoundExceeded
from abelsym.symbols import (DetClass, FormalSum, SymbolKey, canonicalize,
                             det_class, det_classes, enumerate_det_class,
                             enumerate_generators)


def test_canonicalize_sorts_and_validates():
    g = make_group((5,))
    a, b = g.character((3,)), g.character((1,))
    key = canonicalize((a, b))
    assert key.entries == (b, a)
    assert canonicalize(key) is key  # passthrough
    with pytest.raises(ValueError):
        canonicalize(())
    with pytest.raises(ValueError):
        canonicalize((g.character((0,)),))  # does not span the dual


def test_symbol_key_protocol():
    g = make_group((5,))
    key = canonicalize((g.character((1,)), g.character((2,))))
    assert len(key) == 2
    assert key[0].residues == (1,)
    assert list(key) == list(key.entries)
    other = canonicalize((g.character((1,)), g.character((3,))))
    assert key < other
    assert key <= key
    raw = key.replace(1, g.character((4,)))
    assert isinstance(raw, tuple)  # replace returns an unsorted raw tuple
    assert raw == (g.character((1,)), g.character((4,)))


def _cyclic_pair_count(n):
    # independent count of sorted pairs (a <= b) with gcd(a, b, n) = 1
    return sum(1 for a in range(n) for b in range(a, n)
               if gcd(gcd(a, b), n) == 1)


def test_enumerate_generators_cyclic_counts():
    for n in (2, 3, 5, 7, 9):
        g = make_group((n,))
        keys = enumerate_generators(g, 2)
        assert len(keys) == _cyclic_pair_count(n)
        assert keys == sorted(keys)
    assert len(enumerate_generators(make_group((5,)), 2)) == 14


def test_enumerate_generators_needs_full_rank():
    g = make_group((2, 2, 2))
    assert enumerate_generators(g, 2) == []  # rank 3 dual, two entries
    assert len(enumerate_generators(g, 3)) > 0


def test_enumerate_generators_guards():
    g = make_group((5, 25))
    with pytest.raises(BoundExceeded):
        enumerate_generators(g, 2, bound=100)
    with pytest.raises(ValueError):
        enumerate_generators(g, 0)


def test_formal_sum_basics():
    g = make_group((5,))
    k1 = canonicalize((g.character((1,)),))
    k2 = canonicalize((g.character((2,)),))
    s = FormalSum([(k1, 1), (k2, Fraction(1, 2)), (k1, -1)])
    assert s.terms == {k2: Fraction(1, 2)}
    assert (s - s).is_zero()
    assert FormalSum.of(k1, 0).is_zero()
    assert s.scale(2) == FormalSum({k2: 1})
    assert s + s == s.scale(2)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(-4, 4)),
                max_size=8),
       st.lists(st.tuples(st.integers(0, 3), st.integers(-4, 4)),
                max_size=8),
       st.integers(-3, 3))
def test_formal_sum_module_axioms(ta, tb, k):
    g = make_group((5,))
    keys = [canonicalize((g.character((r,)),)) for r in (1, 2, 3, 4)]
    x = FormalSum([(keys[i], c) for i, c in ta])
    y = FormalSum([(keys[i], c) for i, c in tb])
    assert x + y == y + x
    assert (x + y) - y == x
    assert (x + y).scale(k) == x.scale(k) + y.scale(k)
    if k:
        assert x.scale(k).scale(Fraction(1, k)) == x
    else:
        assert x.scale(k).is_zero()


def test_det_class_values():
    g = make_group((3, 9))
    key = canonicalize((g.character((1, 1)), g.character((0, 1))))
    # det = 1*1 - 1*0 = 1 mod 3
    assert det_class(key) == DetClass(3, 1)
    # swapping rows or negating one entry flips the sign, same class
    flipped = canonicalize((g.character((2, 8)), g.character((0, 1))))
    assert det_class(flipped) == det_class(key)
    with pytest.raises(ValueError):
        DetClass(3, 0)  # not a unit


def test_det_classes_catalog():
    assert [c.k for c in det_classes(make_group((3, 3)))] == [1]
    assert [c.k for c in det_classes(make_group((5, 25)))] == [1, 2]
    assert [c.k for c in det_classes(make_group((7, 7)))] == [1, 2, 3]
    with pytest.raises(ValueError):
        det_classes(make_group((2, 4)))  # needs N >= 3
    with pytest.raises(ValueError):
        det_classes(make_group((9,)))


def test_det_classes_partition_keys():
    for factors in ((3, 3), (3, 9), (4, 8)):
        g = make_group(factors)
        allkeys = enumerate_generators(g, 2)
        chunks = [enumerate_det_class(g, c) for c in det_classes(g)]
        assert sum(len(ch) for ch in chunks) == len(allkeys)
        assert sorted(k for ch in chunks for k in ch) == allkeys
        for ch, cls in zip(chunks, det_classes(g)):
            assert all(det_class(k) == cls for k in ch)


def test_det_class_sizes_equal():
    # multiplication by a unit permutes keys, so the classes have one size
    g = make_group((5, 25))
    sizes = {c.k: len(enumerate_det_class(g, c)) for c in det_classes(g)}
    assert len(set(sizes.values())) == 1
