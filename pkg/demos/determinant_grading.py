"""
Grading symbol modules by determinant class
===========================================

For a bi-cyclic group the generating pairs of characters split into
classes indexed by the determinant of the pair, taken up to units and up
to sign.  Relations never mix classes, so each class can be resolved on
its own and the dimensions add up.  That is also the fast route to the
big bi-cyclic tables: many small matrices instead of one huge one.
"""

from abelsym import (
    Variant,
    build_relations,
    dimension,
    dimension_graded,
    enumerate_det_class,
    make_group,
    rank_over_Q,
)
from abelsym.symbols import det_classes

# The classes of C_5 x C_25 and the number of generators in each.  The
# classes all have the same size here; that is a general feature when
# both invariant factors are powers of the same prime.
g = make_group((5, 25))
for cls in det_classes(g):
    gens = enumerate_det_class(g, cls)
    print("class %r: %d generators" % (cls, len(gens)))

# Summing per-class dimensions reproduces the ungraded computation.
graded = dimension_graded(g, Variant.MINUS)
flat = dimension(g, 2, Variant.MINUS)
print("graded dim %d, ungraded dim %d" % (graded.dim_q, flat.dim_q))

# The per-class dimensions are themselves meaningful: for C_p x C_p every
# class has the same dimension, and there are (p - 1)/2 of them, so the
# minus dimension factors as (p - 1)/2 times the class dimension.
g = make_group((5, 5))
sizes = []
for cls in det_classes(g):
    keys = enumerate_det_class(g, cls)
    system = build_relations(g, 2, Variant.MINUS, keys=keys)
    sizes.append(len(keys) - rank_over_Q(system.rel))
print("C_5 x C_5 class dims %r, total %d" % (sizes, sum(sizes)))
