"""Relation systems, brute dimensions, torsion, and the closed forms."""

import pytest
from hypothesis import given, settings, strategies as st

from abelsym.abelian import make_group
from abelsym.exactla import BoundExceeded
from abelsym.relations import (DimensionReport, Variant, build_relations,
                               difference_formula, dimension,
                               dimension_graded, formula_dimension,
                               formula_minus, kernel_dimension,
                               kernel_generators, kernel_span_dimension,
                               pxp_closed_forms)
from abelsym.symbols import canonicalize, det_class, enumerate_det_class

# (N, dim plain, dim minus) at n = 2, frozen from exact rank computations.
CYCLIC_TABLE = (
    (2, 0, 0), (3, 1, 0), (4, 1, 0), (5, 2, 0), (6, 2, 0), (7, 3, 0),
    (8, 3, 0), (9, 5, 1), (10, 4, 0), (11, 6, 1), (12, 7, 2),
)


def test_cyclic_dimension_table():
    for n, dim, dim_minus in CYCLIC_TABLE:
        g = make_group((n,))
        assert dimension(g, 2, Variant.PLAIN).dim_q == dim
        assert dimension(g, 2, Variant.MINUS).dim_q == dim_minus


def test_minus_torsion_brute_values():
    # all torsion in the minus presentation is 2-torsion
    assert dimension(make_group((9,)), 2, Variant.MINUS,
                     want_torsion=True).torsion == (2,) * 5
    assert dimension(make_group((12,)), 2, Variant.MINUS,
                     want_torsion=True).torsion == (2,) * 5
    assert dimension(make_group((7,)), 2, Variant.MINUS,
                     want_torsion=True).torsion == (2,) * 5
    # the plain presentation carries 2-torsion of its own
    assert dimension(make_group((5,)), 2, Variant.PLAIN,
                     want_torsion=True).torsion == (2, 2, 2)


def test_formula_minus_exceptional_list():
    assert formula_minus(make_group((2,))) == (0, (2,))
    assert formula_minus(make_group((3,))) == (0, (2,))
    assert formula_minus(make_group((4,))) == (0, (2, 2))
    assert formula_minus(make_group((2, 2))) == (0, (2, 2))
    # Z/2 x Z/2M with M = 3: torsion only
    assert formula_minus(make_group((2, 6))) == (0, (2,) * 5)
    # rank 3 falls outside every covered family
    assert formula_minus(make_group((2, 2, 2))) == (0, ())


def test_formula_vs_brute_cyclic():
    for n in range(2, 14):
        g = make_group((n,))
        brute = dimension(g, 2, Variant.MINUS, want_torsion=True)
        assert (brute.dim_q, brute.torsion) == formula_minus(g)


def test_formula_vs_brute_bicyclic():
    for factors in ((2, 8), (3, 9), (4, 8)):
        g = make_group(factors)
        brute = dimension(g, 2, Variant.MINUS, want_torsion=True)
        assert (brute.dim_q, brute.torsion) == formula_minus(g)


def test_plain_formula_assembles_from_minus():
    for n in (7, 9, 12):
        g = make_group((n,))
        rep = formula_dimension(g, 2, Variant.PLAIN)
        assert rep.dim_q == (formula_minus(g)[0] + difference_formula(g))
        assert rep.dim_q == dimension(g, 2, Variant.PLAIN).dim_q
        assert rep.method == "FORMULA"


def test_difference_formula_domain():
    with pytest.raises(ValueError):
        difference_formula(make_group((4,)))  # cyclic order <= 5
    with pytest.raises(ValueError):
        difference_formula(make_group((2, 4)))  # unequal factors
    assert difference_formula(make_group((7,))) == 3
    assert difference_formula(make_group((5, 5))) == 24


def test_pxp_closed_forms():
    assert pxp_closed_forms(5) == (46, 22)
    assert pxp_closed_forms(7) == (159, 87)
    g = make_group((5, 5))
    assert dimension(g, 2, Variant.PLAIN).dim_q == 46
    assert dimension(g, 2, Variant.MINUS).dim_q == 22
    assert difference_formula(g) == 46 - 22


def test_dimension_graded_matches_plain_brute():
    for factors in ((3, 6), (3, 9), (4, 8)):
        g = make_group(factors)
        for variant in (Variant.PLAIN, Variant.MINUS):
            graded = dimension_graded(g, variant, want_torsion=True)
            full = dimension(g, 2, variant, want_torsion=True)
            assert graded.dim_q == full.dim_q
            assert graded.torsion == full.torsion
            assert graded.generator_count == full.generator_count


def test_relation_rows_respect_det_grading():
    # both relation templates preserve the determinant class, which is what
    # makes the graded computation sound
    g = make_group((3, 9))
    keys = enumerate_det_class(g, 1)
    for key in keys[:40]:
        cls = det_class(key)
        for i in range(2):
            j = 1 - i
            moved = canonicalize(key.replace(i, key[i] - key[j]))
            assert det_class(moved) == cls
            flipped = canonicalize(key.replace(i, -key[i]))
            assert det_class(flipped) == cls


def test_kernel_dimension_two_routes():
    for factors in ((9,), (12,), (2, 4)):
        g = make_group(factors)
        assert kernel_dimension(g, 2) == kernel_span_dimension(g, 2)


def test_kernel_generators_shape():
    g = make_group((9,))
    gens = kernel_generators(g, 2)
    assert gens  # nonempty for C_9
    for f in gens:
        # e_key + e_flipped, collapsing to 2*e_key when the flip fixes key
        if len(f.terms) == 2:
            assert all(c == 1 for _, c in f.items())
        else:
            assert list(f.terms.values()) == [2]
    with pytest.raises(ValueError):
        kernel_generators(g, 1)


def test_plus_variant_restrictions():
    g = make_group((5,))
    rep = dimension(g, 1, Variant.PLUS)
    assert rep.dim_q == 2  # orbits {1,4} and {2,3} of negation on units
    with pytest.raises(ValueError):
        build_relations(g, 2, Variant.PLUS)
    with pytest.raises(ValueError):
        formula_dimension(g, 3, Variant.MINUS)
    with pytest.raises(ValueError):
        formula_dimension(g, 2, Variant.PLUS)


def test_variant_parse():
    assert Variant.parse("minus") is Variant.MINUS
    assert Variant.parse(Variant.PLAIN) is Variant.PLAIN
    with pytest.raises(ValueError):
        Variant.parse("spam")


def test_relation_system_vector():
    g = make_group((5,))
    sys5 = build_relations(g, 1, Variant.PLAIN)
    key = sys5.basis[0]
    from abelsym.symbols import FormalSum
    assert sys5.vector(FormalSum.of(key, 3)) == {0: 3}
    foreign = canonicalize((make_group((7,)).character((1,)),))
    with pytest.raises(KeyError):
        sys5.vector(FormalSum.of(foreign))


def test_dimension_report_json_round_trip():
    rep = dimension(make_group((9,)), 2, Variant.MINUS, want_torsion=True)
    back = DimensionReport.from_json(rep.to_json())
    assert back.group is rep.group
    assert back.dim_q == rep.dim_q
    assert back.torsion == rep.torsion
    assert back.variant is rep.variant
    assert back.method == rep.method


def test_enum_bound_propagates():
    with pytest.raises(BoundExceeded):
        dimension(make_group((5, 25)), 2, Variant.PLAIN, enum_bound=10)


@settings(max_examples=12, deadline=None)
@given(st.integers(2, 11))
def test_rank_methods_agree_on_dimensions(n):
    g = make_group((n,))
    exact = dimension(g, 2, Variant.PLAIN, rank_method="exact")
    modular = dimension(g, 2, Variant.PLAIN, rank_method="modular")
    assert exact.dim_q == modular.dim_q
