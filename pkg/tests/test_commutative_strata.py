from fractions import Fraction

import numpy as np
import pytest

from satlab.commutative_strata import (
    FiniteGSpace,
    burnside_check,
    conjugacy_defect,
    coset_space,
    disjoint_union,
    freeness_saturation_check,
    index_formula_residual,
    index_function,
    random_gspace,
    strata,
    strata_quasi_basis,
)
from satlab.errors import CapacityError, ConstructionError
from satlab.group_action import FiniteGroup


def mixed_z2():
    return FiniteGSpace(("a", "b", "c", "d"), FiniteGroup.cyclic(2), [[0, 1, 2, 3], [1, 0, 2, 3]])


def test_mixed_z2_index_values():
    sp = mixed_z2()
    assert index_function(sp).vec.real.tolist() == [2.0, 2.0, 1.0, 1.0]
    part = strata(sp).nonempty()
    assert {len(h): pts for h, pts in part.items()} == {1: (0, 1), 2: (2, 3)}
    v = freeness_saturation_check(sp)
    assert (v.free, v.index_is_order, v.saturated) == (False, False, False)


def test_free_action():
    sp = coset_space(FiniteGroup.by_name("S3"), {0})
    assert sp.is_free()
    v = freeness_saturation_check(sp)
    assert v.free and v.index_is_order and v.saturated


def test_coset_space_stabilizers_are_conjugates():
    g = FiniteGroup.by_name("S3")
    h = g.closure({1})
    sp = coset_space(g, h)
    assert sp.size == 3
    assert conjugacy_defect(sp) == 0
    assert all(len(sp.stabilizer(i)) == 2 for i in range(3))


def test_orbit_counting():
    g = FiniteGroup.by_name("S3")
    sp = disjoint_union([coset_space(g, {0}), coset_space(g, g.closure({1})), coset_space(g, set(g.elements()))])
    total, orbits = burnside_check(sp)
    assert orbits == 3
    assert total == Fraction(3)
    # the plain sum of 1/|G_x| is a different number here, so the identity is not that one
    assert sum(Fraction(1, len(sp.stabilizer(i))) for i in range(sp.size)) != orbits


def test_index_formula_against_engine(rng):
    for _ in range(4):
        sp = random_gspace(FiniteGroup.by_name("S3"), rng, max_points=9)
        assert index_formula_residual(sp) < 1e-7
        assert strata_quasi_basis(sp).residual < 1e-9


def test_invalid_spaces():
    with pytest.raises(ConstructionError):
        FiniteGSpace((0, 1, 2), FiniteGroup.cyclic(2), [[0, 1, 2], [1, 2, 0]])
    with pytest.raises(ConstructionError):
        FiniteGSpace((0, 1), FiniteGroup.cyclic(2), [[0, 1]])


def test_capacity_limits():
    g = FiniteGroup.by_name("S4")
    with pytest.raises(CapacityError, match="16"):
        strata(coset_space(g, {0}))
    big = coset_space(FiniteGroup.cyclic(8), {0})
    with pytest.raises(CapacityError, match="budget"):
        freeness_saturation_check(big, budget=32)


def test_random_gspace_respects_size(rng):
    for name in ("Z2", "Z4", "S3", "Z6"):
        sp = random_gspace(FiniteGroup.by_name(name), rng)
        assert 1 <= sp.size <= 12
        assert conjugacy_defect(sp) == 0
