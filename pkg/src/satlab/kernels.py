"""Hot numeric loops, each in a numba-compiled and a pure-numpy flavour.

The dispatching names (``orthonormalize``, ``crossed_structure``,
``regular_representation``) resolve to the numba versions unless numba is
missing or ``SATLAB_DISABLE_NUMBA`` is set to a truthy value before import.
Both flavours are always importable under their suffixed names so tests and
the benchmark can compare them directly.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("SATLAB_DISABLE_NUMBA", "").strip().lower()
_DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _DISABLED
BACKEND = "numba" if USE_NUMBA else "numpy"


# --------------------------------------------------------------------------
# Gram-Schmidt with rejection
# --------------------------------------------------------------------------


def orthonormalize_numpy(vectors: np.ndarray, rel_tol: float, max_rank: int = -1) -> np.ndarray:
    """Modified Gram-Schmidt (two passes) over the rows of ``vectors``.

    A row is discarded when its residual norm is at most ``rel_tol`` times the
    largest input row norm. Returns the accepted orthonormal rows; stops early
    once ``max_rank`` rows are accepted (``-1`` means the ambient dimension).
    """
    vectors = np.asarray(vectors, dtype=np.complex128)
    m, n = vectors.shape
    if max_rank < 0:
        max_rank = n
    out = np.empty((min(m, max_rank), n), dtype=np.complex128)
    if m == 0 or max_rank == 0:
        return out[:0]
    norms = np.sqrt(np.sum(np.abs(vectors) ** 2, axis=1))
    cutoff = rel_tol * norms.max()
    if norms.max() == 0.0:
        return out[:0]
    k = 0
    for i in range(m):
        if norms[i] <= cutoff:
            continue
        v = vectors[i].copy()
        for _ in range(2):
            if k:
                basis = out[:k]
                v -= basis.T @ (basis.conj() @ v)
        r = np.sqrt(np.sum(np.abs(v) ** 2))
        if r <= cutoff:
            continue
        out[k] = v / r
        k += 1
        if k >= max_rank:
            break
    return out[:k]


def _orthonormalize_loops(vectors, rel_tol, max_rank):
    m, n = vectors.shape
    if max_rank < 0:
        max_rank = n
    cap = min(m, max_rank)
    out = np.empty((cap, n), dtype=np.complex128)
    if m == 0 or max_rank == 0:
        return out[:0]
    norms = np.empty(m)
    top = 0.0
    for i in range(m):
        s = 0.0
        for j in range(n):
            s += vectors[i, j].real ** 2 + vectors[i, j].imag ** 2
        norms[i] = np.sqrt(s)
        if norms[i] > top:
            top = norms[i]
    if top == 0.0:
        return out[:0]
    cutoff = rel_tol * top
    v = np.empty(n, dtype=np.complex128)
    k = 0
    for i in range(m):
        if norms[i] <= cutoff:
            continue
        for j in range(n):
            v[j] = vectors[i, j]
        for _ in range(2):
            for q in range(k):
                c = 0j
                for j in range(n):
                    c += np.conj(out[q, j]) * v[j]
                for j in range(n):
                    v[j] -= c * out[q, j]
        s = 0.0
        for j in range(n):
            s += v[j].real ** 2 + v[j].imag ** 2
        r = np.sqrt(s)
        if r <= cutoff:
            continue
        for j in range(n):
            out[k, j] = v[j] / r
        k += 1
        if k >= max_rank:
            break
    return out[:k]


# --------------------------------------------------------------------------
# Crossed-product structure constants
# --------------------------------------------------------------------------


def crossed_structure_numpy(table: np.ndarray, maps: np.ndarray, cm: np.ndarray) -> np.ndarray:
    """Structure constants of M x_alpha G in the basis x_p lambda_g.

    ``table`` is the group multiplication table, ``maps[g]`` the matrix of
    alpha_g on coordinates of M, ``cm[p, q, r]`` the structure constants of M.
    Basis index of x_p lambda_g is ``g * N + p``.
    """
    n_g = table.shape[0]
    n = cm.shape[0]
    twisted = np.einsum("psr,gsq->gpqr", cm, maps)
    out = np.zeros((n_g * n, n_g * n, n_g * n), dtype=np.complex128)
    for g in range(n_g):
        for h in range(n_g):
            gh = table[g, h]
            out[g * n:(g + 1) * n, h * n:(h + 1) * n, gh * n:(gh + 1) * n] = twisted[g]
    return out


def _crossed_structure_loops(table, maps, cm):
    n_g = table.shape[0]
    n = cm.shape[0]
    twisted = np.zeros((n_g, n, n, n), dtype=np.complex128)
    for g in range(n_g):
        for p in range(n):
            for s in range(n):
                for r in range(n):
                    c = cm[p, s, r]
                    if c == 0:
                        continue
                    for q in range(n):
                        twisted[g, p, q, r] += c * maps[g, s, q]
    out = np.zeros((n_g * n, n_g * n, n_g * n), dtype=np.complex128)
    for g in range(n_g):
        for h in range(n_g):
            gh = table[g, h]
            for p in range(n):
                for q in range(n):
                    for r in range(n):
                        out[g * n + p, h * n + q, gh * n + r] = twisted[g, p, q, r]
    return out


# --------------------------------------------------------------------------
# Regular representation of a crossed-product element
# --------------------------------------------------------------------------


def regular_representation_numpy(
    table: np.ndarray,
    inverse: np.ndarray,
    maps: np.ndarray,
    coeffs: np.ndarray,
    embed: np.ndarray,
    width: int,
) -> np.ndarray:
    """Matrix of sum_g x_g lambda_g on H (x) l2(G).

    Block (h, g^{-1}h) of x lambda_g is alpha_{h^{-1}}(x), represented through
    ``embed`` (coordinates of M -> flattened width x width matrix).
    """
    n_g = table.shape[0]
    out = np.zeros((n_g * width, n_g * width), dtype=np.complex128)
    for h in range(n_g):
        twisted = maps[inverse[h]] @ coeffs.T  # column g is alpha_{h^-1}(x_g)
        blocks = (embed @ twisted).T.reshape(n_g, width, width)
        for g in range(n_g):
            k = table[inverse[g], h]
            out[h * width:(h + 1) * width, k * width:(k + 1) * width] += blocks[g]
    return out


def _regular_representation_loops(table, inverse, maps, coeffs, embed, width):
    n_g = table.shape[0]
    n = coeffs.shape[1]
    out = np.zeros((n_g * width, n_g * width), dtype=np.complex128)
    y = np.empty(n, dtype=np.complex128)
    for h in range(n_g):
        hinv = inverse[h]
        for g in range(n_g):
            k = table[inverse[g], h]
            for a in range(n):
                c = 0j
                for b in range(n):
                    c += maps[hinv, a, b] * coeffs[g, b]
                y[a] = c
            for idx in range(width * width):
                c = 0j
                for a in range(n):
                    c += embed[idx, a] * y[a]
                if c != 0:
                    i = idx // width
                    j = idx % width
                    out[h * width + i, k * width + j] += c
    return out


if HAVE_NUMBA:
    orthonormalize_numba = njit(cache=True)(_orthonormalize_loops)
    crossed_structure_numba = njit(cache=True)(_crossed_structure_loops)
    regular_representation_numba = njit(cache=True)(_regular_representation_loops)
else:  # pragma: no cover
    orthonormalize_numba = _orthonormalize_loops
    crossed_structure_numba = _crossed_structure_loops
    regular_representation_numba = _regular_representation_loops


def orthonormalize(vectors, rel_tol: float, max_rank: int = -1) -> np.ndarray:
    vectors = np.ascontiguousarray(vectors, dtype=np.complex128)
    if USE_NUMBA:
        return orthonormalize_numba(vectors, float(rel_tol), int(max_rank))
    return orthonormalize_numpy(vectors, rel_tol, max_rank)


def crossed_structure(table, maps, cm) -> np.ndarray:
    table = np.ascontiguousarray(table, dtype=np.int64)
    maps = np.ascontiguousarray(maps, dtype=np.complex128)
    cm = np.ascontiguousarray(cm, dtype=np.complex128)
    if USE_NUMBA:
        return crossed_structure_numba(table, maps, cm)
    return crossed_structure_numpy(table, maps, cm)


def regular_representation(table, inverse, maps, coeffs, embed, width: int) -> np.ndarray:
    args = (
        np.ascontiguousarray(table, dtype=np.int64),
        np.ascontiguousarray(inverse, dtype=np.int64),
        np.ascontiguousarray(maps, dtype=np.complex128),
        np.ascontiguousarray(coeffs, dtype=np.complex128),
        np.ascontiguousarray(embed, dtype=np.complex128),
        int(width),
    )
    if USE_NUMBA:
        return regular_representation_numba(*args)
    return regular_representation_numpy(*args)
