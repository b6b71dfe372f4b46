import numpy as np
import pytest

from satlab.algebra_core import StarAlgebra, operator_norm
from satlab.crossed_product import (
    DENSE_DIM_LIMIT,
    CrossedAlgebra,
    build,
    corner_isomorphism_check,
    distinguished_projection,
    expectation_E,
    expectation_F,
    f_pair,
    ideal_J_alpha,
)
from satlab.errors import CapacityError
from satlab.group_action import FiniteGroup, cyclic_powers, make_inner_action, make_permutation_action, random_inner_action


def flip_action():
    m = StarAlgebra((2,))
    return make_inner_action(m, FiniteGroup.cyclic(2), cyclic_powers(m.element([np.diag([1.0, -1.0])]), 2))


def test_covariance_relation_and_unit():
    act = flip_action()
    cp = build(act)
    x = act.algebra.random_element(np.random.default_rng(1))
    lam = cp.lam(1)
    lhs = lam * cp.embed(x) * lam.adjoint()
    assert (lhs - cp.embed(act.apply(1, x))).norm() < 1e-12
    assert (cp.one() - cp.lam(0)).norm() < 1e-12
    assert (lam * lam - cp.one()).norm() < 1e-12


def test_product_rule_on_pure_tensors(rng):
    act = random_inner_action(StarAlgebra((2, 1)), FiniteGroup.cyclic(3), rng)
    cp = build(act)
    m = act.algebra
    x, y = m.random_element(rng), m.random_element(rng)
    g, h = 1, 2
    lhs = cp.from_coeffs({g: x}) * cp.from_coeffs({h: y})
    rhs = cp.from_coeffs({act.group.mul(g, h): x * act.apply(g, y)})
    assert (lhs - rhs).norm() < 1e-10
    star = cp.from_coeffs({g: x}).adjoint()
    gi = act.group.inv(g)
    assert (star - cp.from_coeffs({gi: act.apply(gi, x.adjoint())})).norm() < 1e-10


def test_regular_representation_is_faithful_star_hom(rng):
    act = random_inner_action(StarAlgebra((2,)), FiniteGroup.by_name("V4"), rng)
    cp = CrossedAlgebra(act)
    assert cp.representation_residual() < 1e-10
    assert cp.represented_dimension() == cp.dim == 16
    # C*-identity in the representation
    xi = cp.from_vec(rng.standard_normal(cp.dim) + 1j * rng.standard_normal(cp.dim))
    assert np.isclose((xi.adjoint() * xi).norm(), xi.norm() ** 2)


def test_distinguished_projection_and_expectations(rng):
    act = flip_action()
    cp = build(act)
    e = distinguished_projection(cp)
    assert (e * e - e).norm() < 1e-12 and (e.adjoint() - e).norm() < 1e-12
    assert (f_pair(cp, act.algebra.one(), act.algebra.one()) - e).norm() < 1e-12
    x = act.algebra.random_element(rng)
    # e x e = E(x) e
    assert (e * cp.embed(x) * e - cp.embed(expectation_E(act, x)) * e).norm() < 1e-12
    assert operator_norm(expectation_F(cp, cp.embed(x) * cp.lam(1) + cp.embed(x)) - x) < 1e-12


def test_J_alpha_full_versus_proper():
    assert ideal_J_alpha(build(flip_action())).dim == 8
    m = StarAlgebra((2,))
    trivial = make_inner_action(m, FiniteGroup.cyclic(2), [m.one(), m.one()])
    # M2 x Z2 with trivial action is M2 + M2, and e picks one summand
    assert ideal_J_alpha(build(trivial)).dim == 4


def test_free_permutation_action_has_full_ideal():
    g = FiniteGroup.cyclic(3)
    act = make_permutation_action(3, g, [[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    assert ideal_J_alpha(build(act)).dim == 9


def test_corner_is_fixed_point_algebra(rng):
    for act in (flip_action(), random_inner_action(StarAlgebra((2, 1)), FiniteGroup.cyclic(2), rng)):
        rep = corner_isomorphism_check(build(act))
        assert rep.ok, rep


def test_dense_limit():
    m = StarAlgebra((3, 3))
    g = FiniteGroup.cyclic(16)
    act = make_inner_action(m, g, [m.one()] * 16)
    assert g.order * m.dim > DENSE_DIM_LIMIT
    with pytest.raises(CapacityError, match="dense limit"):
        CrossedAlgebra(act)
