"""Finite groups acting on finite sets: isotropy strata and the index of C(X) -> C(X)^G.

For alpha_g(f)(x) = f(g^{-1} x) the expectation is
E(f)(x) = (1/|G|) sum_g f(g^{-1} x), and its index is x -> |G| / |G_x|.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra_core import EPS_EQ, AlgebraElement, StarAlgebra
from .errors import CapacityError, ConsistencyError, ConstructionError
from .group_action import FiniteGroup, GroupAction, _check_permutation_hom, enumerate_subgroups, make_permutation_action
from .index_engine import (
    QuasiBasis,
    compute_index,
    expectation_from_group_action,
    reconstruction_residuals,
    saturation_battery,
    solve_quasi_basis,
)

DIMENSION_BUDGET = 4096


@dataclass(frozen=True, eq=False)
class FiniteGSpace:
    points: tuple
    group: FiniteGroup
    perm: tuple  # perm[g][i] = index of g . points[i]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        perms = tuple(tuple(int(i) for i in p) for p in self.perm)
        if len(perms) != self.group.order:
            raise ConstructionError(f"expected {self.group.order} permutations, got {len(perms)}")
        _check_permutation_hom(self.group, [list(p) for p in perms], len(self.points), "point permutation")
        if perms[self.group.identity] != tuple(range(len(self.points))):
            raise ConstructionError("the identity must act trivially")
        object.__setattr__(self, "perm", perms)

    @property
    def size(self) -> int:
        return len(self.points)

    def act(self, g: int, i: int) -> int:
        return self.perm[g][i]

    def stabilizer(self, i: int) -> frozenset:
        return frozenset(g for g in self.group.elements() if self.perm[g][i] == i)

    def orbits(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(self.size):
            if i in seen:
                continue
            orb = tuple(sorted({self.perm[g][i] for g in self.group.elements()}))
            seen.update(orb)
            out.append(orb)
        return out

    def is_free(self) -> bool:
        return all(len(self.stabilizer(i)) == 1 for i in range(self.size))

    def action(self) -> GroupAction:
        return make_permutation_action(self.size, self.group, [list(p) for p in self.perm])


def coset_space(group: FiniteGroup, subgroup) -> FiniteGSpace:
    """G / H with G acting by left multiplication; points are sorted coset tuples."""
    subgroup = frozenset(subgroup)
    cosets = []
    index = {}
    for g in group.elements():
        c = tuple(sorted(group.mul(g, h) for h in subgroup))
        if c not in index:
            index[c] = len(cosets)
            cosets.append(c)
    perm = [[index[tuple(sorted(group.mul(g, x) for x in c))] for c in cosets] for g in group.elements()]
    return FiniteGSpace(tuple(cosets), group, perm)


def disjoint_union(spaces) -> FiniteGSpace:
    spaces = list(spaces)
    group = spaces[0].group
    points, perm = [], [[] for _ in group.elements()]
    offset = 0
    for k, s in enumerate(spaces):
        points.extend((k, p) for p in s.points)
        for g in group.elements():
            perm[g].extend(offset + i for i in s.perm[g])
        offset += s.size
    return FiniteGSpace(tuple(points), group, perm)


def random_gspace(group: FiniteGroup, rng: np.random.Generator, max_points: int = 12, free_bias: float = 0.3) -> FiniteGSpace:
    """Random disjoint union of coset spaces G/H (every finite G-set has this form), randomly relabelled."""
    subs = [h for h in enumerate_subgroups(group) if group.order // len(h) <= max_points]
    if rng.random() < free_bias:
        subs = subs[:1]  # trivial subgroup only: a free action
    pieces = []
    total = 0
    while True:
        fits = [h for h in subs if total + group.order // len(h) <= max_points]
        if not fits or (pieces and rng.random() < 0.3):
            break
        h = fits[rng.integers(len(fits))]
        pieces.append(coset_space(group, h))
        total += group.order // len(h)
    space = disjoint_union(pieces)
    relabel = rng.permutation(space.size)  # new label of old point i
    inv = np.argsort(relabel)
    perm = [[int(relabel[p[inv[j]]]) for j in range(space.size)] for p in space.perm]
    points = tuple(space.points[inv[j]] for j in range(space.size))
    return FiniteGSpace(points, group, perm)


@dataclass(frozen=True)
class StrataPartition:
    strata: dict  # subgroup (frozenset) -> tuple of point indices
    isotropy: tuple  # point index -> stabilizer

    def nonempty(self) -> dict:
        return {h: pts for h, pts in self.strata.items() if pts}


def strata(space: FiniteGSpace) -> StrataPartition:
    subgroups = enumerate_subgroups(space.group)
    iso = tuple(space.stabilizer(i) for i in range(space.size))
    parts = {h: tuple(i for i in range(space.size) if iso[i] == h) for h in subgroups}
    covered = sorted(i for pts in parts.values() for i in pts)
    if covered != list(range(space.size)):
        raise ConsistencyError("isotropy strata do not partition X")
    return StrataPartition(parts, iso)


def conjugacy_defect(space: FiniteGSpace) -> int:
    """Number of (g, x) with G_{gx} != g G_x g^{-1}; zero for any genuine action."""
    g_ = space.group
    bad = 0
    for i in range(space.size):
        gx = space.stabilizer(i)
        for g in g_.elements():
            conj = frozenset(g_.mul(g_.mul(g, h), g_.inv(g)) for h in gx)
            if space.stabilizer(space.act(g, i)) != conj:
                bad += 1
    return bad


def burnside_check(space: FiniteGSpace) -> tuple[Fraction, int]:
    """(sum_x |G_x|/|G|, number of orbits); the two agree exactly since |Gx| = |G|/|G_x|."""
    n = space.group.order
    total = sum((Fraction(len(space.stabilizer(i)), n) for i in range(space.size)), Fraction(0))
    return total, len(space.orbits())


def index_function(space: FiniteGSpace) -> AlgebraElement:
    """x -> |G| / |G_x| as an element of C(X)."""
    alg = StarAlgebra((1,) * space.size)
    vals = [space.group.order / len(space.stabilizer(i)) for i in range(space.size)]
    return alg.from_vec(np.array(vals, dtype=np.complex128))


def strata_quasi_basis(space: FiniteGSpace) -> QuasiBasis:
    """u_x = sqrt(|G|/|G_x|) chi_{x}, verified against E."""
    action = space.action()
    expectation = expectation_from_group_action(action)
    alg = action.algebra
    elements = []
    for i in range(space.size):
        vec = np.zeros(space.size, dtype=np.complex128)
        vec[i] = np.sqrt(space.group.order / len(space.stabilizer(i)))
        u = alg.from_vec(vec)
        elements.append((u, u.adjoint()))
    left, right = reconstruction_residuals(elements, expectation)
    return QuasiBasis(elements, expectation, left, right)


def index_formula_residual(space: FiniteGSpace) -> float:
    """Pointwise gap between the general engine's index and |G|/|G_x|."""
    qb = solve_quasi_basis(expectation_from_group_action(space.action()))
    idx = compute_index(qb).index_element
    return float(np.abs(idx.vec - index_function(space).vec).max())


@dataclass(frozen=True)
class FreenessVerdict:
    free: bool
    index_is_order: bool
    saturated: bool

    def to_dict(self) -> dict:
        return {"free": self.free, "index_is_group_order": self.index_is_order, "saturated": self.saturated}


def freeness_saturation_check(space: FiniteGSpace, budget: int = DIMENSION_BUDGET) -> FreenessVerdict:
    dim = space.size * space.group.order
    if dim > budget:
        raise CapacityError(f"crossed product dimension {dim} exceeds the budget {budget}")
    free = space.is_free()
    index_is_order = bool(np.abs(index_function(space).vec - space.group.order).max() <= EPS_EQ)
    verdict = saturation_battery(space.action())
    if not verdict.consistent:
        raise ConsistencyError(f"saturation battery is internally inconsistent: {verdict.conditions}")
    out = FreenessVerdict(free, index_is_order, bool(verdict.saturated))
    if not (free == index_is_order == out.saturated):
        raise ConsistencyError(f"freeness={free}, index==|G| {index_is_order}, saturated={out.saturated} disagree")
    return out
