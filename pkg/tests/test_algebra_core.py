import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satlab.algebra_core import (
    StarAlgebra,
    StructureAlgebra,
    block_ranks,
    inner,
    is_central,
    is_projection,
    is_unitary,
    mvn_equivalent,
    operator_norm,
    span,
    trace_state,
    two_sided_ideal,
)
from satlab.errors import PreconditionError, StructuralError

dims = st.lists(st.integers(1, 3), min_size=1, max_size=3).map(tuple)


def dense(x):
    """Block-diagonal matrix of an element, used as an independent oracle."""
    n = sum(x.parent.block_dims)
    out = np.zeros((n, n), dtype=complex)
    k = 0
    for b in x.blocks:
        d = b.shape[0]
        out[k:k + d, k:k + d] = b
        k += d
    return out


@settings(max_examples=25, deadline=None)
@given(dims, st.integers(0, 2**32 - 1))
def test_product_and_adjoint_match_block_matrices(block_dims, seed):
    rng = np.random.default_rng(seed)
    m = StarAlgebra(block_dims)
    x, y = m.random_element(rng), m.random_element(rng)
    assert np.allclose(dense(x * y), dense(x) @ dense(y))
    assert np.allclose(dense(x.adjoint()), dense(x).conj().T)
    assert np.allclose(dense(x + 2 * y), dense(x) + 2 * dense(y))
    assert np.isclose(operator_norm(x), np.linalg.norm(dense(x), 2))


@settings(max_examples=15, deadline=None)
@given(dims, st.integers(0, 2**32 - 1))
def test_trace_state_is_normalized_tracial(block_dims, seed):
    rng = np.random.default_rng(seed)
    m = StarAlgebra(block_dims)
    x, y = m.random_element(rng), m.random_element(rng)
    assert np.isclose(trace_state(m.one()), 1.0)
    assert np.isclose(trace_state(x * y), trace_state(y * x))
    assert np.isclose(trace_state(x), np.trace(dense(x)) / sum(block_dims))


def test_matrix_units_are_trace_orthonormal():
    m = StarAlgebra((2, 1, 3))
    units = m.matrix_units()
    assert len(units) == m.dim == 14
    scaled = [u * m.basis_scale for u in units]
    gram = np.array([[inner(a, b) for b in scaled] for a in scaled])
    assert np.allclose(gram, np.eye(m.dim))


def test_structure_constants_match_products(rng):
    m = StarAlgebra((2, 1))
    c = m.structure_constants()
    units = m.matrix_units()
    for i, a in enumerate(units):
        for j, b in enumerate(units):
            assert np.allclose(c[i, j], (a * b).vec)


def test_central_projections_and_predicates(rng):
    m = StarAlgebra((2, 2))
    ps = m.central_projections()
    assert len(ps) == 2
    assert all(is_projection(p) and is_central(p) for p in ps)
    u = m.random_unitary(rng)
    assert is_unitary(u)
    assert not is_central(m.matrix_unit(0, 0, 1))


def test_mvn_equivalence_by_block_rank():
    m = StarAlgebra((2, 1))
    p = m.matrix_unit(0, 0, 0)
    q = m.matrix_unit(0, 1, 1)
    r = m.matrix_unit(1, 0, 0)
    assert block_ranks(p) == (1, 0)
    assert mvn_equivalent(p, q)
    assert not mvn_equivalent(p, r)
    with pytest.raises(PreconditionError):
        mvn_equivalent(p, m.matrix_unit(0, 0, 1))


def test_ideal_generated_by_central_projection_is_its_block():
    m = StarAlgebra((2, 1))
    ideal = two_sided_ideal([m.central_projections()[0]])
    assert ideal.dim == 4
    assert two_sided_ideal([m.one()]).dim == m.dim


def test_span_drops_dependent_vectors(rng):
    m = StarAlgebra((2,))
    x = m.random_element(rng)
    sub = span([x, 2 * x, x.adjoint()])
    assert sub.dim == 2
    assert sub.contains(x + x.adjoint())
    assert sub.orthonormality_defect() < 1e-12


def test_mixing_algebras_is_a_structural_error():
    a, b = StarAlgebra((2,)), StarAlgebra((1, 1))
    with pytest.raises(StructuralError):
        a.one() + b.one()
    with pytest.raises(StructuralError):
        a.element([np.eye(3)])


def test_structure_algebra_axioms_from_star_algebra():
    m = StarAlgebra((2, 1))
    s = StructureAlgebra(m.structure_constants(), m.unit_vec, m.star_matrix)
    assert s.associativity_residual() < 1e-12
    assert s.star_residual() < 1e-12
    assert s.unit_residual() < 1e-12
