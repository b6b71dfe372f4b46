import numpy as np
import pytest

from satlab.algebra_core import StarAlgebra, operator_norm
from satlab.errors import CapacityError, ConstructionError, PreconditionError
from satlab.group_action import (
    FiniteGroup,
    GroupAction,
    abelian_characters,
    cyclic_powers,
    direct_sum_action,
    enumerate_subgroups,
    fixed_point_algebra,
    make_block_permutation_action,
    make_inner_action,
    make_permutation_action,
    random_inner_action,
)


@pytest.mark.parametrize("name,order,abelian", [("Z5", 5, True), ("S3", 6, False), ("D4", 8, False),
                                                ("V4", 4, True), ("Z2xZ3", 6, True), ("S4", 24, False)])
def test_named_groups(name, order, abelian):
    g = FiniteGroup.by_name(name)
    assert g.order == order
    assert g.is_abelian() == abelian


def test_unknown_group_name():
    with pytest.raises(PreconditionError):
        FiniteGroup.by_name("Q8")


def test_bad_tables_are_rejected():
    with pytest.raises(ConstructionError):
        FiniteGroup(np.array([[0, 1], [0, 1]]))
    # a Latin square with identity that is not associative
    t = np.array([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]])
    with pytest.raises(ConstructionError, match="associative"):
        FiniteGroup(t)


# subgroup counts of small groups (standard tables)
@pytest.mark.parametrize("name,count", [("Z1", 1), ("Z6", 4), ("S3", 6), ("V4", 5), ("D4", 10), ("Z2xZ2xZ2", 16)])
def test_subgroup_counts(name, count):
    assert len(enumerate_subgroups(FiniteGroup.by_name(name))) == count


def test_subgroup_bound():
    with pytest.raises(CapacityError, match="16"):
        enumerate_subgroups(FiniteGroup.by_name("S4"))


def test_inner_action_and_fixed_points():
    m = StarAlgebra((2,))
    g = FiniteGroup.cyclic(2)
    w = m.element([np.diag([1.0, -1.0])])
    act = make_inner_action(m, g, cyclic_powers(w, 2))
    fixed = fixed_point_algebra(act)
    assert fixed.dim == 2  # the diagonal matrices
    assert fixed.contains(m.matrix_unit(0, 0, 0))
    assert not fixed.contains(m.matrix_unit(0, 0, 1))


def test_projective_representation_rejected():
    m = StarAlgebra((2,))
    g = FiniteGroup.by_name("V4")
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    z = np.diag([1.0, -1.0]).astype(complex)
    us = [m.one(), m.element([x]), m.element([z]), m.element([x @ z])]
    with pytest.raises(ConstructionError, match="pair"):
        make_inner_action(m, g, us)


def test_non_homomorphic_maps_name_the_pair():
    m = StarAlgebra((1, 1, 1))
    g = FiniteGroup.cyclic(2)
    maps = np.stack([np.eye(3), np.eye(3)[[1, 2, 0]]])
    with pytest.raises(ConstructionError, match=r"pair \(g, h\) = \(1, 1\)"):
        GroupAction(g, m, maps)


def test_non_multiplicative_map_is_named():
    m = StarAlgebra((2,))
    g = FiniteGroup.cyclic(2)
    t = np.eye(4)[[0, 2, 1, 3]]  # transpose: an anti-automorphism
    with pytest.raises(ConstructionError, match="alpha_1"):
        GroupAction(g, m, np.stack([np.eye(4), t]))


def test_permutation_and_block_permutation_actions():
    g = FiniteGroup.cyclic(3)
    act = make_permutation_action(3, g, [[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    assert fixed_point_algebra(act).dim == 1
    m = StarAlgebra((2, 2))
    swap = make_block_permutation_action(m, FiniteGroup.cyclic(2), [[0, 1], [1, 0]])
    x = m.element([np.eye(2), np.zeros((2, 2))])
    assert np.allclose(swap.apply(1, x).blocks[1], np.eye(2))
    with pytest.raises(ConstructionError):
        make_block_permutation_action(StarAlgebra((2, 1)), FiniteGroup.cyclic(2), [[0, 1], [1, 0]])


def test_direct_sum():
    m = StarAlgebra((2,))
    g = FiniteGroup.cyclic(2)
    a = make_inner_action(m, g, cyclic_powers(m.element([np.diag([1.0, -1.0])]), 2))
    b = make_inner_action(m, g, [m.one(), m.one()])
    s = direct_sum_action(a, b)
    assert s.algebra.block_dims == (2, 2)
    assert fixed_point_algebra(s).dim == 2 + 4


@pytest.mark.parametrize("name", ["Z2", "Z3", "Z4", "V4", "Z2xZ3"])
def test_abelian_characters(name):
    g = FiniteGroup.by_name(name)
    chars = abelian_characters(g)
    assert chars.shape == (g.order, g.order)
    # orthogonality relations and multiplicativity
    assert np.allclose(chars @ chars.conj().T / g.order, np.eye(g.order))
    for a in g.elements():
        for b in g.elements():
            assert np.allclose(chars[:, g.mul(a, b)], chars[:, a] * chars[:, b])


def test_random_inner_action_is_an_action(rng):
    for name in ("Z2", "Z3", "Z4", "V4"):
        act = random_inner_action(StarAlgebra((2, 1)), FiniteGroup.by_name(name), rng)
        for gi in act.group.elements():
            for h in act.group.elements():
                assert np.allclose(act.maps[gi] @ act.maps[h], act.maps[act.group.mul(gi, h)])
        x = act.algebra.random_element(rng)
        avg = act.algebra.from_vec(act.average_map @ x.vec)
        assert operator_norm(act.apply(1, avg) - avg) < 1e-10
