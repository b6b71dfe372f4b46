"""Finite-dimensional Hopf *-algebras, their actions, and smash products.

A Hopf algebra is stored as a linear basis b_0..b_{D-1} of a subalgebra of a
block-matrix StarAlgebra (the ambient, which supplies the C*-norm). All
structure maps are tensors in basis coordinates:

    comult[i, a, b]   Delta(b_i) = sum comult[i, a, b] b_a (x) b_b
    counit[i]         eps(b_i)
    antipode[j, i]    S(b_i) = sum_j antipode[j, i] b_j
    haar[i]           tau(b_i)

Products and the involution on basis coordinates are recovered from the
ambient by least squares (and the basis is checked to be closed under both).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra_core import (
    EPS_EQ,
    EPS_RANK,
    AlgebraElement,
    StarAlgebra,
    StructElement,
    StructureAlgebra,
    operator_norm,
    span_vectors,
)
from .errors import ConsistencyError, ConstructionError, StructuralError
from .group_action import FiniteGroup, GroupAction, null_space


class HopfElement(StructElement):
    __slots__ = ()

    def ambient(self) -> AlgebraElement:
        return self.parent.to_ambient(self.vec)

    def norm(self) -> float:
        return operator_norm(self.ambient())


def _solve_in_basis(basis: np.ndarray, targets: np.ndarray, what: str) -> np.ndarray:
    """Coordinates c with c @ basis = targets (row-wise); raises if a target leaves the span."""
    coords, *_ = np.linalg.lstsq(basis.T, targets.T, rcond=None)
    coords = coords.T
    miss = np.abs(coords @ basis - targets).max() if targets.size else 0.0
    if miss > EPS_EQ * max(1.0, np.abs(targets).max()):
        raise ConstructionError(f"the Hopf basis is not closed under {what} (defect {miss:.3e})")
    return coords


class HopfAlgebra(StructureAlgebra):
    def __init__(self, ambient: StarAlgebra, basis, comult, counit, antipode, haar=None, e=None, name: str = ""):
        basis = np.array(basis, dtype=np.complex128)
        if basis.ndim != 2 or basis.shape[1] != ambient.dim:
            raise StructuralError(f"basis must have shape (D, {ambient.dim}), got {basis.shape}")
        d = basis.shape[0]
        if np.linalg.matrix_rank(basis, tol=EPS_RANK * max(1.0, np.abs(basis).max())) != d:
            raise StructuralError("Hopf basis vectors are linearly dependent")
        self.ambient_algebra = ambient
        self.basis_vectors = basis
        cm = ambient.structure_constants()
        prods = np.einsum("ia,jb,abk->ijk", basis, basis, cm).reshape(d * d, -1)
        structure = _solve_in_basis(basis, prods, "multiplication").reshape(d, d, d)
        stars = basis.conj() @ ambient.star_matrix.T
        star = _solve_in_basis(basis, stars, "the involution").T
        unit = _solve_in_basis(basis, ambient.unit_vec[None, :], "the unit")[0]
        super().__init__(structure, unit, star, name=name)

        self.comult = _tensor(comult, (d, d, d), "comultiplication")
        self.counit = _tensor(counit, (d,), "counit")
        self.antipode = _tensor(antipode, (d, d), "antipode")
        if haar is None:
            haar = self._solve_haar()
        self.haar = _tensor(haar, (d,), "Haar trace")
        if e is None:
            e = self._solve_distinguished()
        self.e_vec = _tensor(e, (d,), "distinguished projection")

    def element_class(self):
        return HopfElement

    def to_ambient(self, vec) -> AlgebraElement:
        return self.ambient_algebra.from_vec(np.asarray(vec) @ self.basis_vectors)

    @property
    def e(self) -> HopfElement:
        return self.from_vec(self.e_vec)

    # maps on elements ------------------------------------------------------

    def Delta(self, x) -> np.ndarray:
        """Delta(x) as a D x D coefficient array over b_a (x) b_b."""
        return np.einsum("i,iab->ab", _vec(x), self.comult)

    def eps(self, x) -> complex:
        return complex(_vec(x) @ self.counit)

    def S(self, x) -> HopfElement:
        return self.from_vec(self.antipode @ _vec(x))

    def tau(self, x) -> complex:
        return complex(_vec(x) @ self.haar)

    # derived data for user-supplied tensors --------------------------------

    def _solve_haar(self) -> np.ndarray:
        """Unique functional with sum tau(a_L) a_R = tau(a) 1 = sum tau(a_R) a_L and tau(1) = 1."""
        d = self.dim
        u = self.unit_vec
        # rows indexed by (i, c): sum_a comult[i,a,c] t_a - t_i u_c = 0
        left = np.einsum("iac->ica", self.comult) - np.einsum("ia,c->ica", np.eye(d), u)
        right = self.comult - np.einsum("ib,c->icb", np.eye(d), u)
        system = np.concatenate([left.reshape(d * d, d), right.reshape(d * d, d)])
        ker = null_space(system)
        if ker.shape[0] != 1:
            raise ConstructionError(f"Haar trace is not unique: invariant functionals form a space of dimension {ker.shape[0]}")
        t = ker[0]
        norm = t @ u
        if abs(norm) < EPS_EQ:
            raise ConstructionError("invariant functional vanishes on the unit")
        return t / norm

    def _solve_distinguished(self) -> np.ndarray:
        """The unique e with b_i e = eps(b_i) e for all i and eps(e) = 1."""
        d = self.dim
        c = self.structure_constants()
        # coords of b_i e are sum_j e_j c[i, j, :]
        system = np.concatenate([c[i].T - self.counit[i] * np.eye(d) for i in range(d)])
        ker = null_space(system)
        if ker.shape[0] != 1:
            raise ConstructionError(f"distinguished projection is ambiguous: solution space has dimension {ker.shape[0]}")
        v = ker[0]
        scale = v @ self.counit
        if abs(scale) < EPS_EQ:
            raise ConstructionError("left integral has zero counit; no distinguished projection")
        return v / scale

    # verification ----------------------------------------------------------

    def _tensor_product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        c = self.structure_constants()
        return np.einsum("ab,cd,ack,bdl->kl", x, y, c, c, optimize=True)

    def verify_hopf_axioms(self) -> dict[str, float]:
        """Residual of every structural identity, keyed by name."""
        d = self.dim
        c = self.structure_constants()
        dl, eps, s, k, u, t = self.comult, self.counit, self.antipode, self.star_matrix, self.unit_vec, self.haar
        eye = np.eye(d)

        def gap(a, b):
            return float(np.abs(np.asarray(a) - np.asarray(b)).max()) if np.size(a) else 0.0

        r = {}
        r["associativity"] = self.associativity_residual()
        r["star_antimultiplicative"] = self.star_residual()
        r["unit"] = self.unit_residual()

        mult = 0.0
        for i in range(d):
            for j in range(d):
                lhs = np.einsum("k,kab->ab", c[i, j], dl)
                mult = max(mult, gap(lhs, self._tensor_product(dl[i], dl[j])))
        r["comult_multiplicative"] = mult
        r["comult_star"] = max(gap(np.einsum("ci,cab->iab", k, dl), np.einsum("ca,iab,db->icd", k, dl.conj(), k)), 0.0)
        r["comult_unit"] = gap(np.einsum("i,iab->ab", u, dl), np.outer(u, u))
        r["coassociativity"] = gap(np.einsum("iab,acd->icdb", dl, dl), np.einsum("iab,bcd->iacd", dl, dl))

        r["counit_multiplicative"] = gap(c @ eps, np.outer(eps, eps))
        r["counit_star"] = gap(eps @ k, eps.conj())
        r["counit_unit"] = abs(eps @ u - 1.0)
        r["counit_law"] = max(gap(np.einsum("iab,a->ib", dl, eps), eye), gap(np.einsum("iab,b->ia", dl, eps), eye))

        r["antipode_antimultiplicative"] = gap(np.einsum("ijk,mk->ijm", c, s), np.einsum("aj,bi,abm->ijm", s, s, c))
        r["antipode_star"] = gap(s @ k, k @ s.conj())
        r["antipode_involution"] = gap(s @ s, eye)
        r["antipode_unit"] = gap(s @ u, u)
        target = np.outer(eps, u)
        r["antipode_law"] = max(
            gap(np.einsum("iab,ca,cbm->im", dl, s, c), target),  # sum S(a_L) a_R
            gap(np.einsum("iab,cb,acm->im", dl, s, c), target),  # sum a_L S(a_R)
        )
        r["antipode_flipped_sums"] = max(
            gap(np.einsum("iab,ca,bcm->im", dl, s, c), target),  # sum a_R S(a_L)
            gap(np.einsum("iab,cb,cam->im", dl, s, c), target),  # sum S(a_R) a_L
        )

        r["haar_normalized"] = abs(t @ u - 1.0)
        pairing = c @ t  # tau(b_i b_j)
        r["haar_tracial"] = gap(pairing, pairing.T)
        r["haar_invariance"] = max(
            gap(np.einsum("iab,a->ib", dl, t), np.outer(t, u)),
            gap(np.einsum("iab,b->ia", dl, t), np.outer(t, u)),
        )
        gram = np.einsum("ai,abk,k->ib", k.conj(), c, t)  # tau(b_i* b_j)
        gram = (gram + gram.conj().T) / 2
        w = np.linalg.eigvalsh(gram)
        r["haar_faithful"] = float(w.min() <= EPS_RANK * max(abs(w).max(), 1.0))

        e = self.e_vec
        ee = self.mul_vec(e, e)
        r["e_projection"] = max(gap(ee, e), gap(k @ e.conj(), e))
        lefts = np.einsum("i,ijk->jk", e, c)  # e b_j
        rights = np.einsum("j,ijk->ik", e, c)  # b_i e
        r["e_central"] = gap(lefts, rights)
        r["e_integral"] = gap(rights, np.outer(eps, e))
        r["e_antipode"] = gap(s @ e, e)
        r["e_trace"] = abs(t @ e - 1.0 / d)
        r["e_counit"] = abs(eps @ e - 1.0)
        corner = span_vectors(self, np.stack([self.mul_vec(self.mul_vec(e, b), e) for b in eye]))
        r["e_minimal"] = float(abs(corner.dim - 1))
        return r

    def counit_identically_one(self) -> bool:
        """Whether eps(b_i) = 1 on every basis element (true for group algebras only)."""
        return bool(np.abs(self.counit - 1.0).max() <= EPS_EQ)

    def check(self, tol: float = EPS_EQ, internal: bool = False):
        residuals = self.verify_hopf_axioms()
        bad = {name: val for name, val in residuals.items() if not val <= tol}
        if bad:
            name = max(bad, key=bad.get)
            cls = ConsistencyError if internal else ConstructionError
            raise cls(f"Hopf axiom '{name}' fails with residual {bad[name]:.3e}")
        return residuals


def _vec(x) -> np.ndarray:
    return x.vec if isinstance(x, StructElement) else np.asarray(x, dtype=np.complex128)


def _tensor(data, shape, what) -> np.ndarray:
    arr = np.array(data, dtype=np.complex128)
    if arr.shape != shape:
        raise StructuralError(f"{what} must have shape {shape}, got {arr.shape}")
    arr.setflags(write=False)
    return arr


# --------------------------------------------------------------------------
# built-in Hopf algebras
# --------------------------------------------------------------------------


def regular_matrices(group: FiniteGroup) -> np.ndarray:
    """lambda_g as |G| x |G| permutation matrices, (lambda_g)[g h, h] = 1."""
    n = group.order
    mats = np.zeros((n, n, n))
    for g in group.elements():
        for h in group.elements():
            mats[g, group.mul(g, h), h] = 1.0
    return mats


def group_hopf(group: FiniteGroup) -> HopfAlgebra:
    """C*(G) inside M_|G| via the left regular representation."""
    n = group.order
    ambient = StarAlgebra((n,))
    basis = regular_matrices(group).reshape(n, n * n)
    comult = np.zeros((n, n, n))
    for g in group.elements():
        comult[g, g, g] = 1.0
    antipode = np.zeros((n, n))
    for g in group.elements():
        antipode[group.inv(g), g] = 1.0
    haar = np.zeros(n)
    haar[group.identity] = 1.0
    e = np.full(n, 1.0 / n)
    hopf = HopfAlgebra(ambient, basis, comult, np.ones(n), antipode, haar, e, name=f"C*({group.name or 'G'})")
    hopf.group = group
    hopf.check(internal=True)
    return hopf


def dual_function_hopf(group: FiniteGroup) -> HopfAlgebra:
    """C(G) with pointwise product and Delta(f)(g, h) = f(gh)."""
    n = group.order
    ambient = StarAlgebra((1,) * n)
    comult = np.zeros((n, n, n))
    for h in group.elements():
        for k in group.elements():
            comult[group.mul(h, k), h, k] = 1.0
    counit = np.zeros(n)
    counit[group.identity] = 1.0
    antipode = np.zeros((n, n))
    for g in group.elements():
        antipode[group.inv(g), g] = 1.0
    hopf = HopfAlgebra(ambient, np.eye(n), comult, counit, antipode, np.full(n, 1.0 / n), counit.copy(), name=f"C({group.name or 'G'})")
    hopf.group = group
    hopf.check(internal=True)
    return hopf


def hopf_from_tensors(block_dims, basis, comult, counit, antipode, haar=None, name: str = "") -> HopfAlgebra:
    """User-supplied Hopf data, accepted only if every axiom holds."""
    ambient = StarAlgebra(tuple(block_dims))
    if basis is None:
        basis = np.eye(ambient.dim)
    hopf = HopfAlgebra(ambient, basis, comult, counit, antipode, haar, None, name=name)
    hopf.check()
    return hopf


# --------------------------------------------------------------------------
# actions
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HopfAction:
    """Bilinear action A x M -> M; tensor[i] is the matrix of x -> b_i . x."""

    hopf: HopfAlgebra
    algebra: StarAlgebra
    tensor: np.ndarray

    def __post_init__(self):
        d, n = self.hopf.dim, self.algebra.dim
        t = np.array(self.tensor, dtype=np.complex128)
        if t.shape != (d, n, n):
            raise ConstructionError(f"action tensor has shape {t.shape}, expected {(d, n, n)}")
        t.setflags(write=False)
        object.__setattr__(self, "tensor", t)
        bad = {k: v for k, v in self.axiom_residuals().items() if not v <= EPS_EQ}
        if bad:
            name = max(bad, key=bad.get)
            raise ConstructionError(f"Hopf action axiom '{name}' fails with residual {bad[name]:.3e}")

    def axiom_residuals(self) -> dict[str, float]:
        h, m, t = self.hopf, self.algebra, self.tensor
        cm = m.structure_constants()
        km = m.star_matrix
        one = m.unit_vec
        eye = np.eye(m.dim)
        r = {}
        r["unit_acts_trivially"] = float(np.abs(np.einsum("i,ipq->pq", h.unit_vec, t) - eye).max())
        r["unit_of_M"] = float(np.abs(t @ one - np.outer(h.counit, one)).max())
        r["module"] = float(np.abs(np.einsum("ijk,kpq->ijpq", h.structure_constants(), t) - np.einsum("ipr,jrq->ijpq", t, t)).max())
        lhs = np.einsum("pqr,isr->ipqs", cm, t)  # b_i . (E_p E_q)
        rhs = np.einsum("iab,asp,btq,stu->ipqu", h.comult, t, t, cm, optimize=True)
        r["leibniz"] = float(np.abs(lhs - rhs).max())
        lhs = np.einsum("rs,isp->irp", km, t.conj())  # (b_i . E_p)*
        sk = h.antipode @ h.star_matrix  # coords of S(b_i*) in column i
        rhs = np.einsum("di,drs,sp->irp", sk, t, km)
        r["star"] = float(np.abs(lhs - rhs).max())
        return r

    def apply(self, a, x: AlgebraElement) -> AlgebraElement:
        return self.algebra.from_vec(np.einsum("i,ipq,q->p", _vec(a), self.tensor, x.vec))


def hopf_action_from_group_action(action: GroupAction) -> HopfAction:
    """C*(G) acting through lambda_g . x = alpha_g(x)."""
    return HopfAction(group_hopf(action.group), action.algebra, action.maps)


def expectation_E_hopf(action: HopfAction, x: AlgebraElement) -> AlgebraElement:
    """E(x) = e . x."""
    return action.apply(action.hopf.e_vec, x)


def fixed_point_space(action: HopfAction):
    """{x : a . x = eps(a) x for all a}, as a Subspace of M."""
    from .algebra_core import Subspace

    n = action.algebra.dim
    rows = np.concatenate([action.tensor[i] - action.hopf.counit[i] * np.eye(n) for i in range(action.hopf.dim)])
    return Subspace(action.algebra, null_space(rows))


# --------------------------------------------------------------------------
# smash product
# --------------------------------------------------------------------------


class SmashProduct(StructureAlgebra):
    """M # A on M (x) A with basis E_p (x) b_i at index i * N + p."""

    def __init__(self, action: HopfAction):
        self.action = action
        self.hopf = action.hopf
        self.algebra = action.algebra
        h, m, t = self.hopf, self.algebra, action.tensor
        d, n = h.dim, m.dim
        cm = m.structure_constants()
        twisted = np.einsum("asq,psr->apqr", t, cm)  # E_p (b_a . E_q)
        structure = np.einsum("iab,apqr,bjk->ipjqkr", h.comult, twisted, h.structure_constants(), optimize=True)
        structure = structure.reshape(d * n, d * n, d * n)
        acted_star = np.einsum("crs,sp->crp", t, m.star_matrix)  # b_c . E_p*
        star = np.einsum("iab,kb,ca,crp->krip", h.comult, h.star_matrix, h.star_matrix, acted_star, optimize=True)
        star = star.reshape(d * n, d * n)
        unit = np.kron(h.unit_vec, m.unit_vec)
        super().__init__(structure, unit, star, name=f"{m!r} # {h.name}")
        self.basis_scale = m.basis_scale

    def coeffs(self, xi) -> np.ndarray:
        return _vec(xi).reshape(self.hopf.dim, self.algebra.dim)

    def embed_M(self, x: AlgebraElement) -> StructElement:
        return self.from_vec(np.kron(self.hopf.unit_vec, x.vec))

    def embed_A(self, a) -> StructElement:
        return self.from_vec(np.kron(_vec(a), self.algebra.unit_vec))

    def pure(self, x: AlgebraElement, a) -> StructElement:
        """x (x) a."""
        return self.from_vec(np.kron(_vec(a), x.vec))


def smash_product(action: HopfAction) -> SmashProduct:
    sp = SmashProduct(action)
    checks = {
        "associativity": sp.associativity_residual(),
        "star": sp.star_residual(),
        "unit": sp.unit_residual(),
    }
    bad = {k: v for k, v in checks.items() if not v <= EPS_EQ}
    if bad:
        name = max(bad, key=bad.get)
        raise ConstructionError(f"smash product {name} check fails with residual {bad[name]:.3e}")
    return sp


def expectation_F_hopf(sp: SmashProduct, xi) -> AlgebraElement:
    """F(sum x_i (x) b_i) = sum tau(b_i) x_i."""
    return sp.algebra.from_vec(sp.hopf.haar @ sp.coeffs(xi))
