"""Finite-dimensional C*-algebras as direct sums of full matrix blocks.

Coordinates: an element of M_{d_1} + ... + M_{d_k} is flattened to a vector of
length N = sum d_i^2 by concatenating the row-major blocks. Matrix units are
ordered the same way, so coordinate i is the coefficient of the i-th matrix
unit. The tracial state tau(x) = (sum_i Tr x_i) / (sum_i d_i) makes the trace
inner product a fixed multiple of the Euclidean one on coordinates, which is
what every span/rank routine below relies on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from numbers import Number
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import PreconditionError, StructuralError

EPS_EQ = 1e-9
EPS_RANK = 1e-9
EPS_ORTH = 1e-10


@dataclass(frozen=True, eq=False)
class StarAlgebra:
    """M_{d_1} + ... + M_{d_k} with the tracial state tau(1) = 1."""

    block_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.block_dims)
        if not dims or any(d < 1 for d in dims):
            raise StructuralError(f"block dimensions must be a non-empty list of positive integers, got {self.block_dims!r}")
        object.__setattr__(self, "block_dims", dims)

    def __eq__(self, other):
        return isinstance(other, StarAlgebra) and self.block_dims == other.block_dims

    def __hash__(self):
        return hash(("StarAlgebra", self.block_dims))

    def __repr__(self):
        return "StarAlgebra(" + " + ".join(f"M_{d}" for d in self.block_dims) + ")"

    @cached_property
    def dim(self) -> int:
        return sum(d * d for d in self.block_dims)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for d in self.block_dims:
            out.append(acc)
            acc += d * d
        return tuple(out)

    @cached_property
    def trace_denominator(self) -> int:
        return sum(self.block_dims)

    @property
    def basis_scale(self) -> float:
        """Factor turning a unit coordinate vector into a trace-unit element."""
        return float(np.sqrt(self.trace_denominator))

    # construction -------------------------------------------------------

    def element(self, blocks: Sequence) -> "AlgebraElement":
        return AlgebraElement(self, tuple(np.asarray(b, dtype=np.complex128) for b in blocks))

    def from_vec(self, vec) -> "AlgebraElement":
        vec = np.asarray(vec, dtype=np.complex128)
        if vec.shape != (self.dim,):
            raise StructuralError(f"coordinate vector of length {vec.shape} does not match dimension {self.dim}")
        blocks = [vec[o:o + d * d].reshape(d, d) for o, d in zip(self.offsets, self.block_dims)]
        return AlgebraElement(self, tuple(blocks))

    def zero(self) -> "AlgebraElement":
        return self.from_vec(np.zeros(self.dim))

    def one(self) -> "AlgebraElement":
        return self.element([np.eye(d) for d in self.block_dims])

    def scalar(self, c) -> "AlgebraElement":
        return self.one() * c

    def matrix_unit(self, block: int, row: int, col: int) -> "AlgebraElement":
        vec = np.zeros(self.dim, dtype=np.complex128)
        d = self.block_dims[block]
        vec[self.offsets[block] + row * d + col] = 1.0
        return self.from_vec(vec)

    def matrix_units(self) -> list["AlgebraElement"]:
        eye = np.eye(self.dim)
        return [self.from_vec(eye[i]) for i in range(self.dim)]

    def central_projections(self) -> list["AlgebraElement"]:
        out = []
        for i, _ in enumerate(self.block_dims):
            out.append(self.element([np.eye(d) if j == i else np.zeros((d, d)) for j, d in enumerate(self.block_dims)]))
        return out

    # linear-algebra views -------------------------------------------------

    @cached_property
    def unit_vec(self) -> np.ndarray:
        return self.one().vec

    @cached_property
    def _units(self) -> list[tuple[int, int, int]]:
        out = []
        for b, d in enumerate(self.block_dims):
            for r in range(d):
                for c in range(d):
                    out.append((b, r, c))
        return out

    def structure_constants(self) -> np.ndarray:
        """C[i, j, k] with e_i e_j = sum_k C[i, j, k] e_k on matrix units."""
        return self._structure

    @cached_property
    def _structure(self) -> np.ndarray:
        n = self.dim
        out = np.zeros((n, n, n), dtype=np.complex128)
        for i, (b, r, c) in enumerate(self._units):
            o, d = self.offsets[b], self.block_dims[b]
            for s in range(d):
                out[i, o + c * d + s, o + r * d + s] = 1.0
        out.setflags(write=False)
        return out

    @cached_property
    def star_matrix(self) -> np.ndarray:
        """Permutation K with coords(x*) = K @ conj(coords(x))."""
        n = self.dim
        out = np.zeros((n, n))
        for i, (b, r, c) in enumerate(self._units):
            d = self.block_dims[b]
            out[self.offsets[b] + c * d + r, i] = 1.0
        return out

    @cached_property
    def dense_embedding(self) -> np.ndarray:
        """Linear map coords -> flattened block-diagonal matrix of size sum(d)."""
        width = self.trace_denominator
        out = np.zeros((width * width, self.dim))
        start = 0
        for b, d in enumerate(self.block_dims):
            for r in range(d):
                for c in range(d):
                    out[(start + r) * width + start + c, self.offsets[b] + r * d + c] = 1.0
            start += d
        return out

    def left_matrix(self, x: "AlgebraElement") -> np.ndarray:
        """Matrix of y -> x y on coordinates."""
        self._check(x)
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for o, d, blk in zip(self.offsets, self.block_dims, x.blocks):
            out[o:o + d * d, o:o + d * d] = np.kron(blk, np.eye(d))
        return out

    def right_matrix(self, x: "AlgebraElement") -> np.ndarray:
        """Matrix of y -> y x on coordinates."""
        self._check(x)
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for o, d, blk in zip(self.offsets, self.block_dims, x.blocks):
            out[o:o + d * d, o:o + d * d] = np.kron(np.eye(d), blk.T)
        return out

    def _check(self, x):
        if not isinstance(x, AlgebraElement) or x.parent != self:
            raise StructuralError(f"element does not belong to {self!r}")

    # random elements (test and property-suite support) -------------------

    def random_element(self, rng: np.random.Generator) -> "AlgebraElement":
        return self.element([rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)) for d in self.block_dims])

    def random_unitary(self, rng: np.random.Generator) -> "AlgebraElement":
        return self.element([haar_unitary(d, rng) for d in self.block_dims])


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    parent: StarAlgebra
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.blocks) != len(self.parent.block_dims):
            raise StructuralError(f"expected {len(self.parent.block_dims)} blocks, got {len(self.blocks)}")
        frozen = []
        for blk, d in zip(self.blocks, self.parent.block_dims):
            blk = np.array(blk, dtype=np.complex128)
            if blk.shape != (d, d):
                raise StructuralError(f"block of shape {blk.shape} where ({d}, {d}) was expected")
            if not np.all(np.isfinite(blk)):
                raise StructuralError("element coordinates must be finite")
            blk.setflags(write=False)
            frozen.append(blk)
        object.__setattr__(self, "blocks", tuple(frozen))

    @cached_property
    def vec(self) -> np.ndarray:
        out = np.concatenate([b.ravel() for b in self.blocks])
        out.setflags(write=False)
        return out

    def _same(self, other):
        if not isinstance(other, AlgebraElement):
            raise StructuralError(f"cannot combine AlgebraElement with {type(other).__name__}")
        if other.parent != self.parent:
            raise StructuralError(f"parent mismatch: {self.parent!r} vs {other.parent!r}")

    def __add__(self, other):
        self._same(other)
        return AlgebraElement(self.parent, tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def __sub__(self, other):
        self._same(other)
        return AlgebraElement(self.parent, tuple(a - b for a, b in zip(self.blocks, other.blocks)))

    def __neg__(self):
        return AlgebraElement(self.parent, tuple(-a for a in self.blocks))

    def __mul__(self, other):
        if isinstance(other, Number):
            return AlgebraElement(self.parent, tuple(a * other for a in self.blocks))
        self._same(other)
        return AlgebraElement(self.parent, tuple(a @ b for a, b in zip(self.blocks, other.blocks)))

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        return self * (1.0 / other)

    def adjoint(self) -> "AlgebraElement":
        return AlgebraElement(self.parent, tuple(a.conj().T for a in self.blocks))

    @property
    def H(self) -> "AlgebraElement":
        return self.adjoint()

    def norm(self) -> float:
        return operator_norm(self)

    def allclose(self, other, tol: float = EPS_EQ) -> bool:
        return operator_norm(self - other) <= tol

    def __repr__(self):
        return f"AlgebraElement({self.parent!r}, blocks={[b.tolist() for b in self.blocks]})"


def add(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x + y


def mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y


def adjoint(x: AlgebraElement) -> AlgebraElement:
    return x.adjoint()


def scalar_mul(c, x: AlgebraElement) -> AlgebraElement:
    return x * c


def trace_state(x: AlgebraElement) -> complex:
    """tau(x) = (sum of block traces) / (sum of block sizes)."""
    return complex(sum(np.trace(b) for b in x.blocks) / x.parent.trace_denominator)


def inner(x: AlgebraElement, y: AlgebraElement) -> complex:
    """Trace inner product tau(x* y)."""
    x._same(y)
    return complex(np.vdot(x.vec, y.vec) / x.parent.trace_denominator)


def operator_norm(x) -> float:
    if isinstance(x, AlgebraElement):
        return float(max(np.linalg.norm(b, 2) for b in x.blocks))
    return float(x.norm())


# --------------------------------------------------------------------------
# subspaces
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subspace:
    """Linear subspace of an algebra, stored as Euclidean-orthonormal coordinate rows.

    ``basis`` rescales the rows so they are orthonormal for the algebra's own
    trace inner product.
    """

    parent: object
    vectors: np.ndarray = field(repr=False)

    def __post_init__(self):
        vecs = np.array(self.vectors, dtype=np.complex128).reshape(-1, self.parent.dim)
        vecs.setflags(write=False)
        object.__setattr__(self, "vectors", vecs)

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def __len__(self):
        return self.dim

    @property
    def basis(self) -> list:
        scale = getattr(self.parent, "basis_scale", 1.0)
        return [self.parent.from_vec(v * scale) for v in self.vectors]

    def project_vec(self, vec) -> np.ndarray:
        vec = np.asarray(vec, dtype=np.complex128)
        return self.vectors.T @ (self.vectors.conj() @ vec)

    def project(self, x):
        return self.parent.from_vec(self.project_vec(x.vec))

    def residual(self, x) -> float:
        """Operator norm of the component of x orthogonal to the subspace."""
        return operator_norm(self.parent.from_vec(x.vec - self.project_vec(x.vec)))

    def contains(self, x, tol: float = EPS_EQ) -> bool:
        return self.residual(x) <= tol * max(1.0, operator_norm(x))

    def contains_subspace(self, other: "Subspace", tol: float = EPS_EQ) -> bool:
        if other.dim == 0:
            return True
        rest = other.vectors - (other.vectors @ self.vectors.T.conj()) @ self.vectors
        return float(np.abs(rest).max()) <= tol

    def same_as(self, other: "Subspace", tol: float = EPS_EQ) -> bool:
        return self.dim == other.dim and self.contains_subspace(other, tol) and other.contains_subspace(self, tol)

    def orthonormality_defect(self) -> float:
        """Max deviation of the trace-inner-product Gram matrix of ``basis`` from I."""
        if self.dim == 0:
            return 0.0
        gram = self.vectors.conj() @ self.vectors.T
        return float(np.abs(gram - np.eye(self.dim)).max())


def span_vectors(parent, vectors, rel_tol: float = EPS_RANK) -> Subspace:
    vectors = np.asarray(vectors, dtype=np.complex128).reshape(-1, parent.dim)
    return Subspace(parent, kernels.orthonormalize(vectors, rel_tol, parent.dim))


def span(elements: Iterable, parent=None) -> Subspace:
    """Gram-Schmidt span; vectors with residual <= 1e-9 * (largest input norm) are dropped."""
    elements = list(elements)
    if not elements:
        if parent is None:
            raise PreconditionError("span of an empty list needs an explicit parent")
        return Subspace(parent, np.zeros((0, parent.dim)))
    parent = elements[0].parent if parent is None else parent
    for x in elements:
        if x.parent != parent:
            raise StructuralError("span: elements from different algebras")
    return span_vectors(parent, np.stack([x.vec for x in elements]))


def sandwich_vectors(structure: np.ndarray, generator_vec: np.ndarray) -> np.ndarray:
    """Rows are coordinates of e_j g e_k for all basis pairs (j, k)."""
    n = structure.shape[0]
    left = np.einsum("jlk,l->jk", structure, generator_vec)  # e_j g
    return (left @ structure.reshape(n, n * n)).reshape(n * n, n)


def two_sided_ideal(generators: Iterable, parent=None) -> Subspace:
    """span{b_j g b_k}: in finite dimensions this is the ideal generated by the set."""
    generators = list(generators)
    if parent is None:
        if not generators:
            raise PreconditionError("two_sided_ideal of an empty list needs an explicit parent")
        parent = generators[0].parent
    structure = parent.structure_constants()
    chunks = [sandwich_vectors(structure, g.vec) for g in generators]
    if not chunks:
        return Subspace(parent, np.zeros((0, parent.dim)))
    return span_vectors(parent, np.concatenate(chunks))


def product_closure_residual(sub: Subspace) -> float:
    """Largest distance from sub of products and adjoints of its basis elements."""
    worst = 0.0
    basis = sub.basis
    for a in basis:
        worst = max(worst, sub.residual(a.adjoint()))
        for b in basis:
            worst = max(worst, sub.residual(a * b))
    return worst


def ideal_closure_residual(sub: Subspace, ambient_basis: Sequence) -> float:
    """Largest distance from sub of b x, x b, x* for x in sub and b in ambient_basis."""
    worst = 0.0
    for x in sub.basis:
        worst = max(worst, sub.residual(x.adjoint()))
        for b in ambient_basis:
            worst = max(worst, sub.residual(b * x), sub.residual(x * b))
    return worst


# --------------------------------------------------------------------------
# predicates
# --------------------------------------------------------------------------


def is_projection(x: AlgebraElement, tol: float = EPS_EQ) -> bool:
    return operator_norm(x * x - x) <= tol and operator_norm(x.adjoint() - x) <= tol


def is_unitary(x: AlgebraElement, tol: float = EPS_EQ) -> bool:
    one = x.parent.one()
    return operator_norm(x.adjoint() * x - one) <= tol and operator_norm(x * x.adjoint() - one) <= tol


def is_central(x: AlgebraElement, tol: float = EPS_EQ) -> bool:
    return all(operator_norm(x * b - b * x) <= tol for b in x.parent.matrix_units())


def _block_rank(m: np.ndarray) -> int:
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > EPS_RANK * max(1.0, s[0])))


def block_ranks(p: AlgebraElement) -> tuple[int, ...]:
    return tuple(_block_rank(b) for b in p.blocks)


def mvn_equivalent(p: AlgebraElement, q: AlgebraElement) -> bool:
    """Murray-von Neumann equivalence of projections: equal rank in every block."""
    p._same(q)
    if not (is_projection(p) and is_projection(q)):
        raise PreconditionError("mvn_equivalent expects two projections")
    return block_ranks(p) == block_ranks(q)


# --------------------------------------------------------------------------
# algebras presented by structure constants
# --------------------------------------------------------------------------


class StructureAlgebra:
    """Finite-dimensional *-algebra given by structure constants on a basis.

    ``structure[i, j, k]`` is the e_k coefficient of e_i e_j; the involution is
    coords(x*) = star @ conj(coords(x)).
    """

    basis_scale = 1.0

    def __init__(self, structure: np.ndarray, unit: np.ndarray, star: np.ndarray, name: str = ""):
        structure = np.array(structure, dtype=np.complex128)
        n = structure.shape[0]
        if structure.shape != (n, n, n):
            raise StructuralError(f"structure constants must be cubic, got {structure.shape}")
        structure.setflags(write=False)
        self._structure = structure
        self.unit_vec = np.array(unit, dtype=np.complex128)
        self.star_matrix = np.array(star, dtype=np.complex128)
        self.name = name

    @property
    def dim(self) -> int:
        return self._structure.shape[0]

    def structure_constants(self) -> np.ndarray:
        return self._structure

    def __repr__(self):
        return f"StructureAlgebra({self.name or 'anonymous'}, dim={self.dim})"

    def element_class(self):
        return StructElement

    def from_vec(self, vec) -> "StructElement":
        return self.element_class()(self, vec)

    def basis_element(self, i: int) -> "StructElement":
        vec = np.zeros(self.dim, dtype=np.complex128)
        vec[i] = 1.0
        return self.from_vec(vec)

    def basis_elements(self) -> list:
        return [self.basis_element(i) for i in range(self.dim)]

    def one(self):
        return self.from_vec(self.unit_vec)

    def zero(self):
        return self.from_vec(np.zeros(self.dim))

    def mul_vec(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self._structure)

    def left_regular(self, x: np.ndarray) -> np.ndarray:
        return np.einsum("i,ijk->kj", x, self._structure)

    def associativity_residual(self) -> float:
        """max |(e_i e_j) e_k - e_i (e_j e_k)| over all basis triples."""
        c = self._structure
        n = self.dim
        flat = c.reshape(n, n * n)
        worst = 0.0
        for i in range(n):
            lhs = (c[i] @ flat).reshape(n, n, n)  # (e_i e_j) e_k
            rhs = np.einsum("jkm,mn->jkn", c, c[i])  # e_i (e_j e_k)
            worst = max(worst, float(np.abs(lhs - rhs).max()))
        return worst

    def star_residual(self) -> float:
        """max |(e_i e_j)* - e_j* e_i*| plus involutivity of the star."""
        k = self.star_matrix
        c = self._structure
        star_basis = k.T  # row i: coords of e_i*
        lhs = np.einsum("ijm,nm->ijn", c.conj(), k)
        rhs = np.einsum("ja,ib,abn->ijn", star_basis, star_basis, c)
        invol = np.abs(k @ k.conj() - np.eye(self.dim)).max()
        return float(max(np.abs(lhs - rhs).max(), invol))

    def unit_residual(self) -> float:
        u = self.unit_vec
        left = np.einsum("i,ijk->jk", u, self._structure)
        right = np.einsum("j,ijk->ik", u, self._structure)
        eye = np.eye(self.dim)
        return float(max(np.abs(left - eye).max(), np.abs(right - eye).max()))


class StructElement:
    __slots__ = ("parent", "vec")

    def __init__(self, parent: StructureAlgebra, vec):
        vec = np.array(vec, dtype=np.complex128)
        if vec.shape != (parent.dim,):
            raise StructuralError(f"coordinate vector of length {vec.shape} does not match dimension {parent.dim}")
        if not np.all(np.isfinite(vec)):
            raise StructuralError("element coordinates must be finite")
        vec.setflags(write=False)
        self.parent = parent
        self.vec = vec

    def _same(self, other):
        if not isinstance(other, StructElement) or other.parent is not self.parent:
            raise StructuralError("operands belong to different algebras")

    def _new(self, vec):
        return self.parent.from_vec(vec)

    def __add__(self, other):
        self._same(other)
        return self._new(self.vec + other.vec)

    def __sub__(self, other):
        self._same(other)
        return self._new(self.vec - other.vec)

    def __neg__(self):
        return self._new(-self.vec)

    def __mul__(self, other):
        if isinstance(other, Number):
            return self._new(self.vec * other)
        self._same(other)
        return self._new(self.parent.mul_vec(self.vec, other.vec))

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self._new(self.vec * other)
        return NotImplemented

    def __truediv__(self, other):
        return self * (1.0 / other)

    def adjoint(self):
        return self._new(self.parent.star_matrix @ self.vec.conj())

    @property
    def H(self):
        return self.adjoint()

    def norm(self) -> float:
        """Operator norm of left multiplication on coordinates."""
        return float(np.linalg.norm(self.parent.left_regular(self.vec), 2))

    def allclose(self, other, tol: float = EPS_EQ) -> bool:
        return (self - other).norm() <= tol

    def __repr__(self):
        return f"{type(self).__name__}({np.round(self.vec, 12).tolist()})"
