import os
import subprocess
import sys

import numpy as np
import pytest

from satlab import kernels
from satlab.algebra_core import StarAlgebra
from satlab.group_action import FiniteGroup, random_inner_action

needs_numba = pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not importable")


def inputs(rng, name="Z3"):
    m = StarAlgebra((2, 1))
    group = FiniteGroup.by_name(name)
    act = random_inner_action(m, group, rng)
    coeffs = rng.standard_normal((group.order, m.dim)) + 1j * rng.standard_normal((group.order, m.dim))
    return m, group, act, coeffs


@needs_numba
@pytest.mark.parametrize("name", ["Z2", "Z4", "V4"])
def test_crossed_structure_flavours_agree(rng, name):
    m, group, act, _ = inputs(rng, name)
    args = (group.table, act.maps, m.structure_constants())
    assert np.allclose(kernels.crossed_structure_numpy(*args), kernels.crossed_structure_numba(*args), atol=1e-13)


@needs_numba
def test_regular_representation_flavours_agree(rng):
    m, group, act, coeffs = inputs(rng)
    args = (group.table, group.inverse, act.maps, coeffs, m.dense_embedding, m.trace_denominator)
    a = kernels.regular_representation_numpy(*args)
    b = kernels.regular_representation_numba(*args)
    assert np.allclose(a, b, atol=1e-13)


@needs_numba
@pytest.mark.parametrize("max_rank", [-1, 3])
def test_orthonormalize_flavours_agree(rng, max_rank):
    base = rng.standard_normal((4, 9)) + 1j * rng.standard_normal((4, 9))
    vecs = rng.standard_normal((10, 4)) @ base  # rank 4
    a = kernels.orthonormalize_numpy(vecs, 1e-9, max_rank)
    b = kernels.orthonormalize_numba(vecs, 1e-9, max_rank)
    assert a.shape == b.shape == (4 if max_rank < 0 else 3, 9)
    assert np.allclose(a, b, atol=1e-12)
    assert np.allclose(a @ a.conj().T, np.eye(len(a)), atol=1e-12)


def test_orthonormalize_rejects_zero_vectors():
    out = kernels.orthonormalize(np.zeros((3, 4)), 1e-9)
    assert out.shape == (0, 4)


@pytest.mark.parametrize("flag,backend", [("1", "numpy"), ("true", "numpy"), ("0", "numba"), ("", "numba")])
def test_environment_flag_selects_backend(flag, backend):
    if backend == "numba" and not kernels.HAVE_NUMBA:
        backend = "numpy"
    env = dict(os.environ, SATLAB_DISABLE_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", "from satlab import kernels; print(kernels.BACKEND)"],
                         capture_output=True, text=True, check=True, env=env).stdout.strip()
    assert out == backend
