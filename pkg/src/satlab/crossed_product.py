"""The crossed product M x_alpha G of a finite group action.

Elements sum_g x_g lambda_g are stored as coefficient vectors with the basis
element x_p lambda_g at index ``g * N + p``. Products use structure constants
assembled by :func:`satlab.kernels.crossed_structure`; norms go through the
regular representation on (sum_i C^{d_i}) (x) l2(G), where x lambda_g acts by
the block matrix with (h, g^{-1} h) entry alpha_{h^{-1}}(x).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import kernels
from .algebra_core import (
    EPS_EQ,
    EPS_RANK,
    AlgebraElement,
    StructElement,
    StructureAlgebra,
    Subspace,
    span,
    span_vectors,
    two_sided_ideal,
)
from .errors import CapacityError, ConsistencyError, StructuralError
from .group_action import GroupAction, fixed_point_algebra

# the structure tensor is dense: (|G| N)^3 complex entries
DENSE_DIM_LIMIT = 256


class CrossedElement(StructElement):
    __slots__ = ()

    @property
    def coeffs(self) -> np.ndarray:
        cp = self.parent
        return self.vec.reshape(cp.group.order, cp.algebra.dim)

    def coefficient(self, g: int) -> AlgebraElement:
        return self.parent.algebra.from_vec(self.coeffs[g])

    def represent(self) -> np.ndarray:
        return self.parent.represent_vec(self.vec)

    def norm(self) -> float:
        """Norm in the (faithful) regular representation."""
        return float(np.linalg.norm(self.represent(), 2))


class CrossedAlgebra(StructureAlgebra):
    def __init__(self, action: GroupAction):
        self.action = action
        self.group = action.group
        self.algebra = action.algebra
        g_, m = self.group, self.algebra
        n = m.dim
        if g_.order * n > DENSE_DIM_LIMIT:
            raise CapacityError(
                f"crossed product dimension {g_.order * n} exceeds the dense limit {DENSE_DIM_LIMIT} "
                f"({16 * (g_.order * n) ** 3 / 2**30:.1f} GiB of structure constants)"
            )
        structure = kernels.crossed_structure(g_.table, action.maps, m.structure_constants())
        unit = np.zeros(g_.order * n, dtype=np.complex128)
        unit[g_.identity * n:(g_.identity + 1) * n] = m.unit_vec
        # (x lambda_g)* = alpha_{g^-1}(x*) lambda_{g^-1}
        star = np.zeros((g_.order * n, g_.order * n), dtype=np.complex128)
        for g in g_.elements():
            gi = g_.inv(g)
            star[gi * n:(gi + 1) * n, g * n:(g + 1) * n] = action.maps[gi] @ m.star_matrix
        super().__init__(structure, unit, star, name=f"{m!r} x {g_.name or 'G'}")
        self.basis_scale = m.basis_scale

    def element_class(self):
        return CrossedElement

    @property
    def represented_width(self) -> int:
        return self.algebra.trace_denominator * self.group.order

    def represent_vec(self, vec: np.ndarray) -> np.ndarray:
        g_ = self.group
        coeffs = np.asarray(vec, dtype=np.complex128).reshape(g_.order, self.algebra.dim)
        return kernels.regular_representation(
            g_.table, g_.inverse, self.action.maps, coeffs, self.algebra.dense_embedding, self.algebra.trace_denominator
        )

    # named elements -----------------------------------------------------

    def from_coeffs(self, coeffs) -> CrossedElement:
        """From a mapping g -> AlgebraElement (missing entries are zero) or a (|G|, N) array."""
        n = self.algebra.dim
        out = np.zeros((self.group.order, n), dtype=np.complex128)
        if isinstance(coeffs, Mapping):
            for g, x in coeffs.items():
                if x.parent != self.algebra:
                    raise StructuralError("coefficient from a different algebra")
                out[g] = x.vec
        else:
            out[:] = np.asarray(coeffs)
        return self.from_vec(out.ravel())

    def lam(self, g: int) -> CrossedElement:
        return self.from_coeffs({g: self.algebra.one()})

    def embed(self, x: AlgebraElement) -> CrossedElement:
        return self.from_coeffs({self.group.identity: x})

    # verification ---------------------------------------------------------

    def representation_residual(self) -> float:
        """*-homomorphism defects of the regular representation on generators."""
        g_, m = self.group, self.algebra
        rep = self.represent_vec
        units = m.matrix_units()
        pis = [rep(self.embed(x).vec) for x in units]
        lams = [rep(self.lam(g).vec) for g in g_.elements()]
        worst = 0.0
        for i, x in enumerate(units):
            worst = max(worst, np.abs(pis[i].conj().T - rep(self.embed(x.adjoint()).vec)).max())
            for j, y in enumerate(units):
                worst = max(worst, np.abs(pis[i] @ pis[j] - rep(self.embed(x * y).vec)).max())
        for g in g_.elements():
            worst = max(worst, np.abs(lams[g].conj().T - lams[g_.inv(g)]).max())
            for h in g_.elements():
                worst = max(worst, np.abs(lams[g] @ lams[h] - lams[g_.mul(g, h)]).max())
            for i, x in enumerate(units):
                twisted = rep(self.embed(self.action.apply(g, x)).vec)
                worst = max(worst, np.abs(lams[g] @ pis[i] @ lams[g].conj().T - twisted).max())
                # structure constants agree with the representation on generator products
                worst = max(worst, np.abs(pis[i] @ lams[g] - rep((self.embed(x) * self.lam(g)).vec)).max())
                worst = max(worst, np.abs(lams[g] @ pis[i] - rep((self.lam(g) * self.embed(x)).vec)).max())
        return float(worst)

    def represented_dimension(self) -> int:
        mats = np.stack([self.represent_vec(np.eye(self.dim)[i]).ravel() for i in range(self.dim)])
        s = np.linalg.svd(mats, compute_uv=False)
        return int(np.sum(s > EPS_RANK * s[0]))


def build(action: GroupAction) -> CrossedAlgebra:
    """Crossed product with its regular representation checked for faithfulness."""
    cp = CrossedAlgebra(action)
    residual = cp.representation_residual()
    if residual > EPS_EQ:
        raise ConsistencyError(f"regular representation is not a *-homomorphism (residual {residual:.3e})")
    rdim = cp.represented_dimension()
    if rdim != cp.dim:
        raise ConsistencyError(f"regular representation is not faithful: span has dimension {rdim} < {cp.dim}")
    return cp


def distinguished_projection(cp: CrossedAlgebra) -> CrossedElement:
    """e = (1/|G|) sum_g lambda_g."""
    one = cp.algebra.one() / cp.group.order
    return cp.from_coeffs({g: one for g in cp.group.elements()})


def expectation_E(action: GroupAction, x: AlgebraElement) -> AlgebraElement:
    """E(x) = (1/|G|) sum_g alpha_g(x)."""
    return action.algebra.from_vec(action.average_map @ x.vec)


def expectation_F(cp: CrossedAlgebra, xi: CrossedElement) -> AlgebraElement:
    """F(sum_g x_g lambda_g) = x_identity."""
    return xi.coefficient(cp.group.identity)


def f_pair(cp: CrossedAlgebra, x: AlgebraElement, y: AlgebraElement) -> CrossedElement:
    """f_{x,y} = (1/|G|) sum_g x alpha_g(y) lambda_g, so that f_{1,1} = e."""
    n_g = cp.group.order
    return cp.from_coeffs({g: x * cp.action.apply(g, y) / n_g for g in cp.group.elements()})


def _f_pair_rows(cp: CrossedAlgebra, lefts: np.ndarray, rights: np.ndarray) -> np.ndarray:
    """Coordinates of f_{a_i, b_i} for paired rows of ``lefts`` and ``rights``."""
    m = cp.algebra
    cm = m.structure_constants()
    n_g = cp.group.order
    twisted = np.einsum("gab,ib->iga", cp.action.maps, rights)  # alpha_g(b_i)
    prods = np.einsum("ia,igb,abk->igk", lefts, twisted, cm)
    return (prods / n_g).reshape(len(lefts), -1)


def ideal_J_alpha(cp: CrossedAlgebra, check: bool = True) -> Subspace:
    """span{f_{x,y}} over matrix units, cross-checked against two other constructions.

    The same space is also computed as the ideal generated by e and as
    span{f_{c,c*}} over the polarization vectors c = b_q + w b_p, w in {1, -i, -1, i}.
    A mismatch raises :class:`ConsistencyError`.
    """
    n = cp.algebra.dim
    eye = np.eye(n, dtype=np.complex128)
    lefts = np.repeat(eye, n, axis=0)
    rights = np.tile(eye, (n, 1))
    j_alpha = span_vectors(cp, _f_pair_rows(cp, lefts, rights))
    if not check:
        return j_alpha

    by_ideal = two_sided_ideal([distinguished_projection(cp)])

    star = cp.algebra.star_matrix
    cs = [eye]
    for w in (1.0, -1j, -1.0, 1j):
        cs.append((np.repeat(eye, n, axis=0) * w + np.tile(eye, (n, 1))))
    cs = np.concatenate(cs)
    by_polarization = span_vectors(cp, _f_pair_rows(cp, cs, cs.conj() @ star.T))

    if not (j_alpha.same_as(by_ideal) and j_alpha.same_as(by_polarization)):
        raise ConsistencyError(
            "J_alpha constructions disagree: "
            f"dim span f_(x,y) = {j_alpha.dim}, dim ideal(e) = {by_ideal.dim}, dim span f_(c,c*) = {by_polarization.dim}"
        )
    return j_alpha


def hereditary_corner(cp: CrossedAlgebra) -> Subspace:
    """span{e xi e} over a basis of the crossed product."""
    e = distinguished_projection(cp)
    return span([e * b * e for b in cp.basis_elements()], parent=cp)


@dataclass(frozen=True)
class CornerReport:
    corner_dim: int
    fixed_dim: int
    image_residual: float
    image_dim: int
    multiplicative_residual: float
    star_residual: float

    @property
    def ok(self) -> bool:
        return (
            self.corner_dim == self.fixed_dim == self.image_dim
            and max(self.image_residual, self.multiplicative_residual, self.star_residual) <= EPS_EQ
        )


def corner_isomorphism_check(cp: CrossedAlgebra) -> CornerReport:
    """Check x -> f_{x,1} maps the fixed-point algebra bijectively and *-homomorphically onto e(MxG)e."""
    corner = hereditary_corner(cp)
    fixed = fixed_point_algebra(cp.action)
    one = cp.algebra.one()
    basis = fixed.basis
    images = [f_pair(cp, x, one) for x in basis]
    image_residual = max((corner.residual(y) for y in images), default=0.0)
    image_dim = span(images, parent=cp).dim if images else 0
    mult = 0.0
    star = 0.0
    for x, fx in zip(basis, images):
        star = max(star, (fx.adjoint() - f_pair(cp, x.adjoint(), one)).norm())
        for y, fy in zip(basis, images):
            mult = max(mult, (fx * fy - f_pair(cp, x * y, one)).norm())
    return CornerReport(corner.dim, fixed.dim, image_residual, image_dim, mult, star)
