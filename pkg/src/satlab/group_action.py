"""Finite groups as multiplication tables and their *-automorphism actions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .algebra_core import (
    EPS_EQ,
    EPS_RANK,
    AlgebraElement,
    StarAlgebra,
    Subspace,
    haar_unitary,
    is_unitary,
    product_closure_residual,
)
from .errors import CapacityError, ConsistencyError, ConstructionError, PreconditionError

SUBGROUP_BOUND = 16


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Group on {0, ..., n-1} given by its multiplication table."""

    table: np.ndarray = field(repr=False)
    name: str = ""

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int64)
        n = t.shape[0] if t.ndim == 2 else 0
        if t.ndim != 2 or t.shape != (n, n) or n == 0:
            raise ConstructionError("group table must be a non-empty square array")
        if t.min() < 0 or t.max() >= n:
            raise ConstructionError("group table entries must be element indices")
        for row in t:
            if len(set(row.tolist())) != n:
                raise ConstructionError("group table rows must be permutations (Latin square)")
        ids = [e for e in range(n) if np.array_equal(t[e], np.arange(n)) and np.array_equal(t[:, e], np.arange(n))]
        if not ids:
            raise ConstructionError("group table has no two-sided identity")
        e = ids[0]
        inv = np.empty(n, dtype=np.int64)
        for g in range(n):
            hits = np.nonzero(t[g] == e)[0]
            if hits.size != 1 or t[hits[0], g] != e:
                raise ConstructionError(f"element {g} has no two-sided inverse")
            inv[g] = hits[0]
        # associativity: (gh)k == g(hk) for all triples
        lhs = t[t[:, :, None], np.arange(n)[None, None, :]]
        rhs = t[np.arange(n)[:, None, None], t[None, :, :]]
        if not np.array_equal(lhs, rhs):
            g, h, k = (int(v[0]) for v in np.nonzero(lhs != rhs))
            raise ConstructionError(f"group table is not associative at ({g}, {h}, {k})")
        t.setflags(write=False)
        inv.setflags(write=False)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "_identity", int(e))
        object.__setattr__(self, "_inverse", inv)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self):
        return self.order

    @property
    def identity(self) -> int:
        return self._identity

    @property
    def inverse(self) -> np.ndarray:
        return self._inverse

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def inv(self, g: int) -> int:
        return int(self._inverse[g])

    def power(self, g: int, k: int) -> int:
        out = self.identity
        base = g if k >= 0 else self.inv(g)
        for _ in range(abs(k)):
            out = self.mul(out, base)
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    def elements(self) -> range:
        return range(self.order)

    def closure(self, elements) -> frozenset[int]:
        """Subgroup generated by ``elements``."""
        found = {self.identity}
        frontier = list(set(int(g) for g in elements) | {self.identity})
        found.update(frontier)
        gens = list(found)
        while frontier:
            nxt = []
            for a in frontier:
                for b in gens:
                    for c in (self.mul(a, b), self.mul(b, a)):
                        if c not in found:
                            found.add(c)
                            nxt.append(c)
            frontier = nxt
        return frozenset(found)

    def is_abelian(self) -> bool:
        return np.array_equal(self.table, self.table.T)

    # constructors -------------------------------------------------------

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        idx = np.arange(n)
        return cls((idx[:, None] + idx[None, :]) % n, name=f"Z{n}")

    @classmethod
    def direct_product(cls, a: "FiniteGroup", b: "FiniteGroup") -> "FiniteGroup":
        na, nb = a.order, b.order
        table = np.empty((na * nb, na * nb), dtype=np.int64)
        for (g1, g2), (h1, h2) in itertools.product(itertools.product(range(na), range(nb)), repeat=2):
            table[g1 * nb + g2, h1 * nb + h2] = a.table[g1, h1] * nb + b.table[g2, h2]
        return cls(table, name=f"{a.name}x{b.name}")

    @classmethod
    def from_permutations(cls, generators: Sequence[Sequence[int]], name: str = "") -> "FiniteGroup":
        """Permutation group generated by ``generators`` (identity gets index 0)."""
        gens = [tuple(int(i) for i in p) for p in generators]
        degree = len(gens[0]) if gens else 1
        ident = tuple(range(degree))
        elems = [ident]
        seen = {ident: 0}
        i = 0
        while i < len(elems):
            for s in gens:
                c = tuple(elems[i][s[x]] for x in range(degree))  # elems[i] o s
                if c not in seen:
                    seen[c] = len(elems)
                    elems.append(c)
            i += 1
        n = len(elems)
        table = np.empty((n, n), dtype=np.int64)
        for a, pa in enumerate(elems):
            for b, pb in enumerate(elems):
                table[a, b] = seen[tuple(pa[pb[x]] for x in range(degree))]
        group = cls(table, name=name)
        object.__setattr__(group, "permutations", tuple(elems))
        return group

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        if n == 1:
            return cls.cyclic(1)
        transposition = [1, 0] + list(range(2, n))
        cycle = list(range(1, n)) + [0]
        return cls.from_permutations([transposition, cycle], name=f"S{n}")

    @classmethod
    def dihedral(cls, n: int) -> "FiniteGroup":
        rotation = [(i + 1) % n for i in range(n)]
        reflection = [(-i) % n for i in range(n)]
        return cls.from_permutations([rotation, reflection], name=f"D{n}")

    @classmethod
    def by_name(cls, name: str) -> "FiniteGroup":
        """``Zn``, ``Sn``, ``Dn``, ``V4`` / ``Z2xZ2`` and products like ``Z2xZ3``."""
        key = name.strip()
        if key in ("V4", "K4"):
            key = "Z2xZ2"
        if "x" in key:
            parts = [cls.by_name(p) for p in key.split("x")]
            out = parts[0]
            for p in parts[1:]:
                out = cls.direct_product(out, p)
            return out
        try:
            kind, n = key[0], int(key[1:])
        except (IndexError, ValueError):
            raise PreconditionError(f"unknown group name {name!r}") from None
        if n < 1:
            raise PreconditionError(f"unknown group name {name!r}")
        if kind == "Z":
            return cls.cyclic(n)
        if kind == "S":
            return cls.symmetric(n)
        if kind == "D" and n >= 3:
            return cls.dihedral(n)
        raise PreconditionError(f"unknown group name {name!r}")


@dataclass(frozen=True)
class SubgroupLattice:
    group: FiniteGroup = field(repr=False)
    subgroups: tuple[frozenset, ...]

    def __len__(self):
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)


def enumerate_subgroups(group: FiniteGroup, bound: int = SUBGROUP_BOUND) -> SubgroupLattice:
    """All subgroups, by breadth-first closure of (subgroup + one element)."""
    if group.order > bound:
        raise CapacityError(f"group order {group.order} exceeds the subgroup-enumeration bound {bound}")
    trivial = frozenset({group.identity})
    found = {trivial}
    queue = [trivial]
    while queue:
        h = queue.pop(0)
        for g in group.elements():
            if g in h:
                continue
            k = group.closure(set(h) | {g})
            if k not in found:
                found.add(k)
                queue.append(k)
    ordered = sorted(found, key=lambda s: (len(s), sorted(s)))
    return SubgroupLattice(group, tuple(ordered))


# --------------------------------------------------------------------------
# actions
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GroupAction:
    """alpha: G -> Aut(M), one N x N coordinate matrix per group element.

    Construction verifies the automorphism and homomorphism identities on the
    matrix-unit basis; the first failure is reported by name.
    """

    group: FiniteGroup
    algebra: StarAlgebra
    maps: np.ndarray = field(repr=False)

    def __post_init__(self):
        n, d = self.group.order, self.algebra.dim
        maps = np.array(self.maps, dtype=np.complex128)
        if maps.shape != (n, d, d):
            raise ConstructionError(f"action maps have shape {maps.shape}, expected {(n, d, d)}")
        maps.setflags(write=False)
        object.__setattr__(self, "maps", maps)
        self._verify()

    def _verify(self, tol: float = EPS_EQ):
        g_ = self.group
        alg = self.algebra
        eye = np.eye(alg.dim)
        if np.abs(self.maps[g_.identity] - eye).max() > tol:
            raise ConstructionError("alpha_identity is not the identity map")
        cm = alg.structure_constants()
        star = alg.star_matrix
        one = alg.unit_vec
        for g in g_.elements():
            a = self.maps[g]
            if np.abs(a @ one - one).max() > tol:
                raise ConstructionError(f"alpha_{g} is not unital")
            if np.abs(a @ star - star @ a.conj()).max() > tol:
                raise ConstructionError(f"alpha_{g} does not preserve the adjoint")
            lhs = np.einsum("kl,ijl->ijk", a, cm)
            rhs = np.einsum("ai,bj,abk->ijk", a, a, cm)
            if np.abs(lhs - rhs).max() > tol:
                raise ConstructionError(f"alpha_{g} is not multiplicative")
        for g in g_.elements():
            for h in g_.elements():
                if np.abs(self.maps[g] @ self.maps[h] - self.maps[g_.mul(g, h)]).max() > tol:
                    raise ConstructionError(f"alpha_{g} o alpha_{h} != alpha_{g_.mul(g, h)} for the pair (g, h) = ({g}, {h})")

    def apply(self, g: int, x: AlgebraElement) -> AlgebraElement:
        return self.algebra.from_vec(self.maps[g] @ x.vec)

    def __call__(self, g: int, x: AlgebraElement) -> AlgebraElement:
        return self.apply(g, x)

    def is_trivial(self, tol: float = EPS_EQ) -> bool:
        return all(np.abs(m - np.eye(self.algebra.dim)).max() <= tol for m in self.maps)

    @cached_property
    def average_map(self) -> np.ndarray:
        return self.maps.mean(axis=0)


def _index_map(group: FiniteGroup, data) -> list:
    if isinstance(data, Mapping):
        missing = [g for g in group.elements() if g not in data]
        if missing:
            raise ConstructionError(f"no data for group elements {missing}")
        return [data[g] for g in group.elements()]
    data = list(data)
    if len(data) != group.order:
        raise ConstructionError(f"expected {group.order} entries (one per group element), got {len(data)}")
    return data


def make_inner_action(algebra: StarAlgebra, group: FiniteGroup, u) -> GroupAction:
    """alpha_g = Ad(u_g) for a strict unitary representation g -> u_g."""
    us = _index_map(group, u)
    for g, ug in enumerate(us):
        if not isinstance(ug, AlgebraElement) or ug.parent != algebra:
            raise ConstructionError(f"u_{g} is not an element of {algebra!r}")
        if not is_unitary(ug):
            raise ConstructionError(f"u_{g} is not unitary")
    for g in group.elements():
        for h in group.elements():
            diff = us[g] * us[h] - us[group.mul(g, h)]
            if max(np.abs(b).max() for b in diff.blocks) > EPS_EQ:
                raise ConstructionError(f"u_g u_h != u_gh for the pair (g, h) = ({g}, {h}); projective representations are not accepted")
    maps = np.stack([algebra.left_matrix(ug) @ algebra.right_matrix(ug.adjoint()) for ug in us])
    return GroupAction(group, algebra, maps)


def cyclic_powers(w: AlgebraElement, n: int) -> list[AlgebraElement]:
    """[1, w, w^2, ..., w^(n-1)] for use with the cyclic group Z_n."""
    out = [w.parent.one()]
    for _ in range(n - 1):
        out.append(out[-1] * w)
    return out


def _check_permutation_hom(group: FiniteGroup, perms: list[list[int]], size: int, what: str):
    for g, p in enumerate(perms):
        if sorted(p) != list(range(size)):
            raise ConstructionError(f"{what} for element {g} is not a permutation of {size} items")
    for g in group.elements():
        for h in group.elements():
            composed = [perms[g][perms[h][x]] for x in range(size)]
            if composed != perms[group.mul(g, h)]:
                raise ConstructionError(f"{what} is not a homomorphism at the pair (g, h) = ({g}, {h})")


def make_permutation_action(points, group: FiniteGroup, perm) -> GroupAction:
    """Action on C(X) = M_1 + ... + M_1 by alpha_g(f)(x) = f(g^{-1} x).

    ``perm[g][x]`` is the image g.x; ``points`` is |X| or a StarAlgebra of 1x1 blocks.
    """
    if isinstance(points, StarAlgebra):
        algebra = points
        if any(d != 1 for d in algebra.block_dims):
            raise ConstructionError("permutation actions live on commutative algebras C(X)")
    else:
        algebra = StarAlgebra((1,) * int(points))
    size = algebra.dim
    perms = [[int(i) for i in p] for p in _index_map(group, perm)]
    _check_permutation_hom(group, perms, size, "point permutation")
    maps = np.zeros((group.order, size, size))
    for g, p in enumerate(perms):
        for y in range(size):
            maps[g, p[y], y] = 1.0
    return GroupAction(group, algebra, maps)


def make_block_permutation_action(algebra: StarAlgebra, group: FiniteGroup, perm, unitaries=None) -> GroupAction:
    """alpha_g moves block i to block perm[g][i], optionally followed by Ad(u_g)."""
    k = len(algebra.block_dims)
    perms = [[int(i) for i in p] for p in _index_map(group, perm)]
    _check_permutation_hom(group, perms, k, "block permutation")
    for p in perms:
        if any(algebra.block_dims[i] != algebra.block_dims[p[i]] for i in range(k)):
            raise ConstructionError("block permutations may only exchange blocks of equal size")
    maps = np.zeros((group.order, algebra.dim, algebra.dim), dtype=np.complex128)
    for g, p in enumerate(perms):
        for i, d in enumerate(algebra.block_dims):
            src, dst = algebra.offsets[i], algebra.offsets[p[i]]
            maps[g, dst:dst + d * d, src:src + d * d] = np.eye(d * d)
    if unitaries is not None:
        us = _index_map(group, unitaries)
        for g, ug in enumerate(us):
            if not is_unitary(ug):
                raise ConstructionError(f"u_{g} is not unitary")
            maps[g] = algebra.left_matrix(ug) @ algebra.right_matrix(ug.adjoint()) @ maps[g]
    return GroupAction(group, algebra, maps)


def direct_sum_action(first: GroupAction, second: GroupAction) -> GroupAction:
    """alpha + beta on M + N, for two actions of the same group."""
    if first.group is not second.group and not np.array_equal(first.group.table, second.group.table):
        raise ConstructionError("direct sum needs two actions of the same group")
    algebra = StarAlgebra(first.algebra.block_dims + second.algebra.block_dims)
    n1, n2 = first.algebra.dim, second.algebra.dim
    maps = np.zeros((first.group.order, n1 + n2, n1 + n2), dtype=np.complex128)
    maps[:, :n1, :n1] = first.maps
    maps[:, n1:, n1:] = second.maps
    return GroupAction(first.group, algebra, maps)


def null_space(matrix: np.ndarray, rel_tol: float = EPS_RANK) -> np.ndarray:
    """Rows form a Euclidean-orthonormal basis of the kernel of ``matrix``."""
    n = matrix.shape[1]
    if matrix.shape[0] == 0:
        return np.eye(n, dtype=np.complex128)
    _, s, vh = np.linalg.svd(matrix)
    top = s[0] if s.size else 0.0
    rank = int(np.sum(s > rel_tol * max(1.0, top)))
    return vh[rank:].conj()


def fixed_point_algebra(action: GroupAction) -> Subspace:
    """Intersection of ker(alpha_g - id), verified to be a unital *-subalgebra."""
    eye = np.eye(action.algebra.dim)
    rows = [action.maps[g] - eye for g in action.group.elements() if g != action.group.identity]
    stacked = np.concatenate(rows) if rows else np.zeros((0, action.algebra.dim))
    sub = Subspace(action.algebra, null_space(stacked))
    residual = max(product_closure_residual(sub), sub.residual(action.algebra.one()))
    if residual > EPS_EQ:
        raise ConsistencyError(f"fixed-point space is not a unital *-subalgebra (residual {residual:.3e})")
    return sub


# --------------------------------------------------------------------------
# random inner actions (abelian groups)
# --------------------------------------------------------------------------


def abelian_characters(group: FiniteGroup, rng: np.random.Generator | None = None) -> np.ndarray:
    """Rows are the |G| characters of an abelian group, found by diagonalizing the regular representation."""
    if not group.is_abelian():
        raise PreconditionError("characters are only enumerated for abelian groups")
    n = group.order
    rng = np.random.default_rng(0) if rng is None else rng
    lam = np.zeros((n, n, n))
    for g in group.elements():
        for h in group.elements():
            lam[g, group.mul(g, h), h] = 1.0
    weights = rng.normal(size=n) + 1j * rng.normal(size=n)
    generic = np.einsum("g,gab->ab", weights, lam)
    _, vecs = np.linalg.eig(generic)
    vecs = vecs / np.linalg.norm(vecs, axis=0)
    chars = np.einsum("ak,gab,bk->kg", vecs.conj(), lam, vecs)
    # character values are n-th roots of unity; snap them exactly
    steps = np.round(np.angle(chars) * n / (2 * np.pi)).astype(int) % n
    steps = steps[np.lexsort(steps.T[::-1])]
    return np.exp(2j * np.pi * steps / n)


def random_inner_action(algebra: StarAlgebra, group: FiniteGroup, rng: np.random.Generator) -> GroupAction:
    """Ad(u_g) with u_g = V diag(chi_1(g), ..., chi_d(g)) V* per block, V Haar random."""
    chars = abelian_characters(group)
    us = []
    vs = [haar_unitary(d, rng) for d in algebra.block_dims]
    picks = [rng.integers(0, group.order, size=d) for d in algebra.block_dims]
    for g in group.elements():
        blocks = [v @ np.diag(chars[p, g]) @ v.conj().T for v, p in zip(vs, picks)]
        us.append(algebra.element(blocks))
    return make_inner_action(algebra, group, us)
