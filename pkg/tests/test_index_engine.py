import cmath

import numpy as np
import pytest

from satlab.algebra_core import StarAlgebra, operator_norm
from satlab.crossed_product import build
from satlab.errors import IndexFiniteTypeError, PreconditionError
from satlab.group_action import FiniteGroup, cyclic_powers, make_block_permutation_action, make_inner_action
from satlab.hopf import hopf_action_from_group_action
from satlab.index_engine import (
    Expectation,
    check_quasi_basis,
    compute_index,
    expectation_from_group_action,
    hopf_saturation,
    identity_expectation,
    rokhlin_witness_check,
    saturation_battery,
    solve_quasi_basis,
    witness_identity_residual,
)


def diag_action(n, phases):
    m = StarAlgebra((2,))
    w = m.element([np.diag(phases)])
    return make_inner_action(m, FiniteGroup.cyclic(n), cyclic_powers(w, n))


def test_identity_expectation_has_index_dim_of_centre_weighted():
    # E = id on M_d has Index = 1
    m = StarAlgebra((2, 1))
    qb = solve_quasi_basis(identity_expectation(m))
    assert qb.residual < 1e-12
    assert np.isclose(compute_index(qb).scalar_value, 1.0)


def test_trace_onto_scalars_has_index_d_squared():
    # the trace E(x) = tr(x)/d 1 on M_d has index d^2
    for d in (2, 3):
        m = StarAlgebra((d,))
        mat = np.outer(m.unit_vec, m.unit_vec.conj()) / d
        onto_vec = m.unit_vec / np.linalg.norm(m.unit_vec)
        from satlab.algebra_core import Subspace

        e = Expectation(m, mat, Subspace(m, onto_vec[None, :]))
        rep = compute_index(solve_quasi_basis(e))
        assert np.isclose(rep.scalar_value, d * d)


def test_non_faithful_map_is_rejected():
    m = StarAlgebra((1, 1))
    from satlab.algebra_core import Subspace

    mat = np.array([[1.0, 0.0], [1.0, 0.0]])  # x -> x_0 * 1, not faithful
    e = Expectation(m, mat, Subspace(m, (m.unit_vec / np.sqrt(2))[None, :]))
    with pytest.raises((PreconditionError, IndexFiniteTypeError)):
        solve_quasi_basis(e)


def test_index_is_independent_of_quasi_basis():
    act = diag_action(3, [cmath.exp(2j * cmath.pi / 3), cmath.exp(-2j * cmath.pi / 3)])
    e = expectation_from_group_action(act)
    m = act.algebra
    given = [m.one(), m.element([np.array([[0, 1], [1, 0]], dtype=complex)])]
    assert check_quasi_basis(given, e) < 1e-12
    a = compute_index(given).index_element
    b = compute_index(solve_quasi_basis(e)).index_element
    assert operator_norm(a - b) < 1e-10
    assert check_quasi_basis([m.one()], e) > 0.5


def test_battery_flip_saturated():
    v = saturation_battery(diag_action(2, [1, -1]))
    assert v.consistent and v.saturated
    assert all(v.conditions.values())
    assert np.isclose(v.index_scalar, 2.0)
    assert v.phi_one_projection and v.phi_one_distance_to_one < 1e-10


@pytest.mark.parametrize("n,phases", [(2, [1, 1]), (4, [1, 1j]), (3, [cmath.exp(2j * cmath.pi / 3), cmath.exp(-2j * cmath.pi / 3)])])
def test_battery_not_saturated(n, phases):
    v = saturation_battery(diag_action(n, phases))
    assert v.consistent and v.saturated is False
    assert not any(v.conditions.values())


def test_example_witness_identity():
    act = diag_action(2, [1, -1])
    m = act.algebra
    r = 1 / np.sqrt(2)
    xs = [m.element([np.array([[r, r], [0, 0]])]), m.element([np.array([[0, 0], [r, r]])])]
    assert witness_identity_residual(build(act), xs) < 1e-12
    assert witness_identity_residual(build(act), xs[:1]) > 0.1


def test_epsilon_grid_reported():
    v = saturation_battery(diag_action(2, [1, -1]), epsilon=1e-3)
    assert set(v.approx_witness) == {1e-2, 1e-3, 1e-4, 1e-6}
    with pytest.raises(PreconditionError):
        saturation_battery(diag_action(2, [1, -1]), epsilon=0.0)


def test_hopf_level_agrees():
    assert hopf_saturation(hopf_action_from_group_action(diag_action(2, [1, -1]))).saturated
    assert not hopf_saturation(hopf_action_from_group_action(diag_action(2, [1, 1]))).saturated


def test_rokhlin_swap():
    m = StarAlgebra((2, 2))
    act = make_block_permutation_action(m, FiniteGroup.cyclic(2), [[0, 1], [1, 0]])
    p0, p1 = m.central_projections()
    rep = rokhlin_witness_check(act, [p0, p1])
    assert rep.is_rokhlin
    assert not rep.literal_passes  # e_g e_g* = e_g, not 1
    assert rep.corrected_passes
    assert rep.battery_saturated is True
