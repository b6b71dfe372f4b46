"""Quasi-bases, the Watatani index, and the saturation criteria.

A conditional expectation is handled as an N x N coordinate matrix on M
together with the subspace it projects onto. Quasi-bases come from the frame
operator S(b) = sum_j m_j E(m_j* b) over a trace-orthonormal basis {m_j}:
v_j = S^{-1/2} m_j gives b = sum_j v_j E(v_j* b). The inverse square root is
taken with respect to the inner product <x, y> = tau(E(x* y)), in which S is
self-adjoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .algebra_core import (
    EPS_EQ,
    EPS_RANK,
    AlgebraElement,
    StarAlgebra,
    Subspace,
    is_central,
    is_projection,
    operator_norm,
    span_vectors,
)
from .crossed_product import CrossedAlgebra, build, ideal_J_alpha
from .errors import ConsistencyError, IndexFiniteTypeError, PreconditionError
from .group_action import GroupAction, fixed_point_algebra, null_space
from .hopf import HopfAction, fixed_point_space, smash_product

EPS_QB = 1e-7
DEFAULT_EPSILONS = (1e-2, 1e-4, 1e-6)


# --------------------------------------------------------------------------
# conditional expectations
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Expectation:
    algebra: StarAlgebra
    matrix: np.ndarray = field(repr=False)
    onto: Subspace = field(repr=False)
    name: str = ""

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        return self.algebra.from_vec(self.matrix @ x.vec)

    @property
    def trace_functional(self) -> np.ndarray:
        """Row vector of tau on coordinates."""
        m = self.algebra
        return m.unit_vec / m.trace_denominator

    def phi_gram(self) -> np.ndarray:
        """G[p, q] = tau(E(e_p* e_q)) on matrix-unit coordinates."""
        m = self.algebra
        cm = m.structure_constants()
        phi = (self.trace_functional @ self.matrix)
        gram = np.einsum("ap,aqk,k->pq", m.star_matrix, cm, phi)
        return (gram + gram.conj().T) / 2

    def verify(self, tol: float = EPS_EQ) -> dict[str, float]:
        """Idempotence, range, unitality, bimodule property and faithfulness; raises on failure."""
        m = self.algebra
        e = self.matrix
        r = {}
        r["idempotent"] = float(np.abs(e @ e - e).max())
        onto = self.onto.vectors.T  # columns
        r["range"] = float(np.abs(e - onto @ (onto.conj().T @ e)).max())
        r["fixes_range"] = float(np.abs(e @ onto - onto).max()) if onto.size else 0.0
        r["unital"] = float(np.abs(e @ m.unit_vec - m.unit_vec).max())
        bimodule = 0.0
        for a in self.onto.basis:
            la, ra = m.left_matrix(a), m.right_matrix(a)
            bimodule = max(bimodule, np.abs(e @ la - la @ e).max(), np.abs(e @ ra - ra @ e).max())
        r["bimodule"] = float(bimodule)
        w = np.linalg.eigvalsh(self.phi_gram())
        # 1.0 when tau o E has a null direction (a 0/1 flag, since the scale of w is arbitrary)
        r["faithful"] = float(w.min() <= EPS_RANK * max(abs(w).max(), 1.0))
        bad = {k: v for k, v in r.items() if not v <= tol}
        if bad:
            name = max(bad, key=bad.get)
            raise PreconditionError(f"not a faithful conditional expectation: '{name}' fails with residual {bad[name]:.3e}")
        return r


def expectation_from_group_action(action: GroupAction) -> Expectation:
    """E = (1/|G|) sum_g alpha_g onto the fixed-point algebra."""
    return Expectation(action.algebra, np.array(action.average_map), fixed_point_algebra(action), name="group average")


def expectation_from_hopf_action(action: HopfAction) -> Expectation:
    """E(x) = e . x onto M^A."""
    mat = np.einsum("i,ipq->pq", action.hopf.e_vec, action.tensor)
    return Expectation(action.algebra, mat, fixed_point_space(action), name="hopf average")


def identity_expectation(algebra: StarAlgebra) -> Expectation:
    return Expectation(algebra, np.eye(algebra.dim), Subspace(algebra, np.eye(algebra.dim)), name="identity")


# --------------------------------------------------------------------------
# quasi-bases and the index
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class QuasiBasis:
    elements: list  # list of (u_i, w_i) pairs, reconstruction b = sum u_i E(w_i b)
    expectation: Expectation = field(repr=False)
    residual_left: float
    residual_right: float
    frame_min_eigenvalue: float | None = None

    @property
    def residual(self) -> float:
        return max(self.residual_left, self.residual_right)

    @property
    def left(self) -> list:
        return [u for u, _ in self.elements]


def _pairs(candidate) -> list:
    out = []
    for c in candidate:
        if isinstance(c, AlgebraElement):
            out.append((c, c.adjoint()))
        else:
            u, w = c
            out.append((u, w))
    return out


def reconstruction_residuals(pairs, expectation: Expectation) -> tuple[float, float]:
    """max over matrix units b of ||sum u_i E(w_i b) - b|| and ||sum E(b u_i) w_i - b||."""
    m = expectation.algebra
    e = expectation.matrix
    n = m.dim
    left_total = np.zeros((n, n), dtype=np.complex128)
    right_total = np.zeros((n, n), dtype=np.complex128)
    for u, w in pairs:
        left_total += m.left_matrix(u) @ e @ m.left_matrix(w)
        right_total += m.right_matrix(w) @ e @ m.right_matrix(u)
    eye = np.eye(n)
    worst_l = max(operator_norm(m.from_vec(col)) for col in (left_total - eye).T)
    worst_r = max(operator_norm(m.from_vec(col)) for col in (right_total - eye).T)
    return float(worst_l), float(worst_r)


def check_quasi_basis(candidate, expectation: Expectation) -> float:
    """Both-sided reconstruction residual for elements u (paired with u*) or explicit pairs (u, w)."""
    return max(reconstruction_residuals(_pairs(candidate), expectation))


def _hermitian_power(mat: np.ndarray, power: float) -> tuple[np.ndarray, np.ndarray]:
    w, v = np.linalg.eigh((mat + mat.conj().T) / 2)
    return (v * w**power) @ v.conj().T, w


def frame_operator(expectation: Expectation) -> np.ndarray:
    """S = sum_j L(m_j) E L(m_j*) over the trace-orthonormal matrix-unit basis."""
    m = expectation.algebra
    total = np.zeros((m.dim, m.dim), dtype=np.complex128)
    for x in m.matrix_units():
        total += m.left_matrix(x) @ expectation.matrix @ m.left_matrix(x.adjoint())
    return total * m.basis_scale**2


def solve_quasi_basis(expectation: Expectation, verify: bool = True) -> QuasiBasis:
    if verify:
        expectation.verify()
    m = expectation.algebra
    s = frame_operator(expectation)
    gram = expectation.phi_gram()
    g_half, gw = _hermitian_power(gram, 0.5)
    g_ihalf, _ = _hermitian_power(gram, -0.5)
    s_phi = g_half @ s @ g_ihalf
    w, v = np.linalg.eigh((s_phi + s_phi.conj().T) / 2)
    if w.min() <= EPS_RANK * max(abs(w).max(), 1.0):
        raise IndexFiniteTypeError(
            f"expectation not of index-finite type: frame operator eigenvalue {w.min():.3e} below tolerance"
        )
    t = g_ihalf @ ((v * w**-0.5) @ v.conj().T) @ g_half
    scale = m.basis_scale
    elements = []
    for x in m.matrix_units():
        u = m.from_vec(t @ (x.vec * scale))
        elements.append((u, u.adjoint()))
    left, right = reconstruction_residuals(elements, expectation)
    return QuasiBasis(elements, expectation, left, right, float(w.min()))


@dataclass(frozen=True)
class IndexReport:
    index_element: AlgebraElement
    is_central: bool
    scalar_value: float | None
    matches_group_order: bool | None
    self_adjoint_residual: float
    min_eigenvalue: float

    def to_dict(self) -> dict:
        return {
            "scalar_value": self.scalar_value,
            "is_central": self.is_central,
            "matches_group_order": self.matches_group_order,
            "block_eigenvalues": [np.linalg.eigvalsh((b + b.conj().T) / 2).round(9).tolist() for b in self.index_element.blocks],
        }


def index_element(pairs) -> AlgebraElement:
    pairs = _pairs(pairs)
    total = pairs[0][0] * pairs[0][1]
    for u, w in pairs[1:]:
        total = total + u * w
    return total


def compute_index(qb, group_order: int | None = None) -> IndexReport:
    pairs = qb.elements if isinstance(qb, QuasiBasis) else _pairs(qb)
    idx = index_element(pairs)
    m = idx.parent
    sa = operator_norm(idx - idx.adjoint())
    eig = min(np.linalg.eigvalsh((b + b.conj().T) / 2).min() for b in idx.blocks)
    c = float(np.real(np.sum([np.trace(b) for b in idx.blocks]) / m.trace_denominator))
    scalar = c if operator_norm(idx - m.scalar(c)) <= EPS_EQ else None
    matches = None
    if group_order is not None:
        matches = operator_norm(idx - m.scalar(group_order)) <= EPS_EQ
    return IndexReport(idx, is_central(idx), scalar, matches, float(sa), float(eig))


# --------------------------------------------------------------------------
# the saturation battery for group actions
# --------------------------------------------------------------------------


def phi_of_one(cp: CrossedAlgebra, quasi_basis: Sequence[AlgebraElement]):
    """(1/|G|) sum_g (sum_i u_i alpha_g(u_i*)) lambda_g."""
    g_ = cp.group
    coeffs = {}
    for g in g_.elements():
        total = cp.algebra.zero()
        for u in quasi_basis:
            total = total + u * cp.action.apply(g, u.adjoint())
        coeffs[g] = total / g_.order
    return cp.from_coeffs(coeffs)


def witness_identity_residual(cp: CrossedAlgebra, xs: Sequence[AlgebraElement]) -> float:
    """||sum_k sum_j x_j alpha_k(x_j*) lambda_k - 1|| in the crossed product."""
    coeffs = {}
    for g in cp.group.elements():
        total = cp.algebra.zero()
        for x in xs:
            total = total + x * cp.action.apply(g, x.adjoint())
        coeffs[g] = total
    return (cp.from_coeffs(coeffs) - cp.one()).norm()


def witness_residuals(action: GroupAction, family: Sequence[Mapping]) -> tuple[float, float]:
    """For b^j_g (family[j][g]): (sum_j max_{g,h} ||alpha_g(b^j_h) - b^j_gh||, max_{g,h} ||sum_j b^j_g b^j_h* - delta||)."""
    g_ = action.group
    m = action.algebra
    cov = 0.0
    for g in g_.elements():
        for h in g_.elements():
            total = sum(operator_norm(action.apply(g, b[h]) - b[g_.mul(g, h)]) for b in family)
            cov = max(cov, total)
    orth = 0.0
    for g in g_.elements():
        for h in g_.elements():
            total = m.scalar(1.0 if g == h else 0.0)
            for b in family:
                total = total - b[g] * b[h].adjoint()
            orth = max(orth, operator_norm(total))
    return float(cov), float(orth)


@dataclass
class SaturationVerdict:
    ideal_full: bool
    dim_J: int
    dim_crossed: int
    index_is_order: bool
    index_scalar: float | None
    index_residual: float
    qb_orthogonality: bool
    qb_max_norm: float
    exact_witness: list | None
    witness_covariance_residual: float
    witness_orthogonality_residual: float
    approx_witness: dict
    approx_witness_pass: bool
    epsilon: float
    phi_one_projection: bool
    phi_one_distance_to_one: float
    consistent: bool
    group_order: int
    quasi_basis: list = field(default=None, repr=False)

    @property
    def conditions(self) -> dict[str, bool]:
        return {
            "ideal_full": self.ideal_full,
            "index_is_order": self.index_is_order,
            "qb_orthogonality": self.qb_orthogonality,
            "exact_witness": self.exact_witness is not None,
            "approx_witness": self.approx_witness_pass,
        }

    @property
    def saturated(self) -> bool | None:
        return self.ideal_full if self.consistent else None

    def to_dict(self) -> dict:
        return {
            "saturated": self.saturated,
            "consistent": self.consistent,
            "conditions": self.conditions,
            "ideal": {"dim_J_alpha": self.dim_J, "dim_crossed_product": self.dim_crossed},
            "index": {
                "scalar": _round(self.index_scalar),
                "group_order": self.group_order,
                "distance_to_group_order": _round(self.index_residual),
            },
            "quasi_basis_orthogonality": {"max_norm_g_ne_identity": _round(self.qb_max_norm)},
            "witness": {
                "size": None if self.exact_witness is None else len(self.exact_witness),
                "covariance_residual": _round(self.witness_covariance_residual),
                "orthogonality_residual": _round(self.witness_orthogonality_residual),
            },
            "approx_witness": {f"{k:.0e}": v for k, v in sorted(self.approx_witness.items(), reverse=True)},
            "epsilon": self.epsilon,
            "phi_one": {"is_projection": self.phi_one_projection, "distance_to_one": _round(self.phi_one_distance_to_one)},
        }


def _round(x, digits: int = 12):
    if x is None:
        return None
    x = float(x)
    return 0.0 if abs(x) < 10.0**-digits else float(f"{x:.{digits}g}")


def saturation_battery(action: GroupAction, epsilon: float = 1e-6, cp: CrossedAlgebra | None = None) -> SaturationVerdict:
    if not epsilon > 0:
        raise PreconditionError("epsilon must be positive")
    g_ = action.group
    m = action.algebra
    cp = build(action) if cp is None else cp

    # (i) the ideal generated by e
    j_alpha = ideal_J_alpha(cp)
    ideal_full = j_alpha.dim == cp.dim

    # (ii) the index
    expectation = expectation_from_group_action(action)
    qb = solve_quasi_basis(expectation)
    if qb.residual > EPS_QB:
        raise ConsistencyError(f"quasi-basis reconstruction residual {qb.residual:.3e} exceeds {EPS_QB}")
    report = compute_index(qb, g_.order)
    index_residual = operator_norm(report.index_element - m.scalar(g_.order))
    index_is_order = index_residual <= EPS_EQ

    # (iii) orthogonality of the quasi-basis under the action
    us = qb.left
    qb_max = 0.0
    for g in g_.elements():
        if g == g_.identity:
            continue
        total = m.zero()
        for u in us:
            total = total + u * action.apply(g, u.adjoint())
        qb_max = max(qb_max, operator_norm(total))
    qb_orth = index_is_order and qb_max <= EPS_EQ * g_.order

    # (iv) the candidate witness b^j_g = alpha_g(u_j) / sqrt|G|
    root = np.sqrt(g_.order)
    family = [{g: action.apply(g, u) / root for g in g_.elements()} for u in us]
    cov, orth = witness_residuals(action, family)
    exact = family if (qb_orth and cov <= EPS_EQ and orth <= EPS_EQ) else None

    # (v) the same family against the epsilon inequalities
    eps_grid = sorted(set(DEFAULT_EPSILONS) | {float(epsilon)}, reverse=True)
    approx = {eps: bool(cov < eps and orth < eps) for eps in eps_grid}

    phi1 = phi_of_one(cp, us)
    phi_proj = (phi1 * phi1 - phi1).norm() <= EPS_EQ and (phi1.adjoint() - phi1).norm() <= EPS_EQ
    phi_dist = (phi1 - cp.one()).norm()

    conds = [ideal_full, index_is_order, qb_orth, exact is not None, approx[float(epsilon)]]
    return SaturationVerdict(
        ideal_full=ideal_full,
        dim_J=j_alpha.dim,
        dim_crossed=cp.dim,
        index_is_order=index_is_order,
        index_scalar=report.scalar_value,
        index_residual=float(index_residual),
        qb_orthogonality=qb_orth,
        qb_max_norm=float(qb_max),
        exact_witness=exact,
        witness_covariance_residual=cov,
        witness_orthogonality_residual=orth,
        approx_witness=approx,
        approx_witness_pass=approx[float(epsilon)],
        epsilon=float(epsilon),
        phi_one_projection=bool(phi_proj),
        phi_one_distance_to_one=float(phi_dist),
        consistent=all(conds) or not any(conds),
        group_order=g_.order,
        quasi_basis=us,
    )


# --------------------------------------------------------------------------
# Hopf-level criterion
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class HopfVerdict:
    span_dim: int
    smash_dim: int
    span_full: bool
    index_scalar: float | None
    index_is_dim: bool
    hopf_dim: int
    quasi_basis_residual: float

    @property
    def saturated(self) -> bool:
        return self.span_full

    def to_dict(self) -> dict:
        return {
            "saturated": self.saturated,
            "span_xey": {"dim": self.span_dim, "dim_smash_product": self.smash_dim, "full": self.span_full},
            "index": {"scalar": _round(self.index_scalar), "hopf_dim": self.hopf_dim, "equals_dim": self.index_is_dim},
            "quasi_basis_residual": _round(self.quasi_basis_residual),
        }


def hopf_saturation(action: HopfAction) -> HopfVerdict:
    """span{x e y} against dim(M # A), and Index(e . ) against dim(A) 1; these must agree."""
    sp = smash_product(action)
    h, m = action.hopf, action.algebra
    c = sp.structure_constants()
    xs = np.stack([np.kron(h.unit_vec, row) for row in np.eye(m.dim)])
    ev = np.kron(h.e_vec, m.unit_vec)
    xe = np.einsum("pi,j,ijk->pk", xs, ev, c)
    xey = np.einsum("pi,qj,ijk->pqk", xe, xs, c).reshape(-1, sp.dim)
    sub = span_vectors(sp, xey)
    span_full = sub.dim == sp.dim

    expectation = expectation_from_hopf_action(action)
    qb = solve_quasi_basis(expectation)
    report = compute_index(qb)
    index_is_dim = operator_norm(report.index_element - m.scalar(h.dim)) <= EPS_EQ
    verdict = HopfVerdict(sub.dim, sp.dim, span_full, report.scalar_value, bool(index_is_dim), h.dim, qb.residual)
    if span_full != index_is_dim:
        raise ConsistencyError(
            f"span{{xey}} has dimension {sub.dim} of {sp.dim} but Index(E) "
            f"{'equals' if index_is_dim else 'differs from'} {h.dim} (scalar {report.scalar_value})"
        )
    return verdict


# --------------------------------------------------------------------------
# Rokhlin families
# --------------------------------------------------------------------------


@dataclass
class RokhlinReport:
    projection_residual: float
    orthogonality_residual: float
    partition_residual: float
    covariance_residual: float
    is_rokhlin: bool
    literal_residuals: tuple[float, float]
    literal_passes: bool
    corrected_residuals: tuple[float, float]
    corrected_passes: bool
    battery_saturated: bool | None
    agrees: bool | None
    epsilon: float

    def to_dict(self) -> dict:
        return {
            "is_rokhlin_family": self.is_rokhlin,
            "residuals": {
                "projection": _round(self.projection_residual),
                "orthogonality": _round(self.orthogonality_residual),
                "partition_of_unity": _round(self.partition_residual),
                "covariance": _round(self.covariance_residual),
            },
            "single_family_witness": {"passes": self.literal_passes, "residuals": [_round(r) for r in self.literal_residuals]},
            "translated_family_witness": {"passes": self.corrected_passes, "residuals": [_round(r) for r in self.corrected_residuals]},
            "battery_saturated": self.battery_saturated,
            "agrees": self.agrees,
            "epsilon": self.epsilon,
        }


def rokhlin_witness_check(action: GroupAction, family, epsilon: float = 1e-6, run_battery: bool = True) -> RokhlinReport:
    """Test a family g -> e_g against the Rokhlin conditions and the witness conditions it induces.

    Two witness families are tried: m = 1 with b_g = e_g, and m = |G| with
    b^k_g = e_{gk}. Only the second satisfies sum_j b^j_g (b^j_h)* = delta_gh
    in general, since e_g e_g* = e_g is not 1.
    """
    g_ = action.group
    m = action.algebra
    fam = {g: family[g] for g in g_.elements()}
    proj = max(max(operator_norm(p * p - p), operator_norm(p.adjoint() - p)) for p in fam.values())
    orth = 0.0
    for g in g_.elements():
        for h in g_.elements():
            if g != h:
                orth = max(orth, operator_norm(fam[g] * fam[h]))
    total = m.zero()
    for p in fam.values():
        total = total + p
    part = operator_norm(total - m.one())
    cov = max(operator_norm(action.apply(g, fam[h]) - fam[g_.mul(g, h)]) for g in g_.elements() for h in g_.elements())
    is_rokhlin = max(proj, orth, part, cov) < epsilon

    literal = witness_residuals(action, [fam])
    corrected_family = [{g: fam[g_.mul(g, k)] for g in g_.elements()} for k in g_.elements()]
    corrected = witness_residuals(action, corrected_family)

    battery = None
    agrees = None
    if run_battery and is_rokhlin:
        battery = saturation_battery(action, epsilon).saturated
        agrees = battery is True
    return RokhlinReport(
        float(proj), float(orth), float(part), float(cov), bool(is_rokhlin),
        literal, bool(max(literal) < epsilon),
        corrected, bool(max(corrected) < epsilon),
        battery, agrees, float(epsilon),
    )
