"""Acceptance criteria 1-11, one test each; every test prints a PASS/FAIL line.

    pytest tests/test_acceptance.py -v
    python3 tests/test_acceptance.py
"""

import cmath
import sys

import numpy as np
import pytest

from satlab.algebra_core import StarAlgebra
from satlab.commutative_strata import (
    freeness_saturation_check,
    index_formula_residual,
    random_gspace,
    strata_quasi_basis,
)
from satlab.crossed_product import build
from satlab.errors import ConsistencyError
from satlab.graph_gauge import (
    cartesian_product,
    cycle_graph,
    binary_tree_with_loops,
    fixed_core_blocks,
    graph_Z,
    loops,
    random_graph,
    two_loop_vertex,
    validate_graph,
    witness_battery,
)
from satlab.group_action import FiniteGroup, cyclic_powers, make_block_permutation_action, make_inner_action, random_inner_action
from satlab.hopf import dual_function_hopf, group_hopf, hopf_action_from_group_action
from satlab.index_engine import (
    check_quasi_basis,
    compute_index,
    expectation_from_group_action,
    hopf_saturation,
    rokhlin_witness_check,
    saturation_battery,
    solve_quasi_basis,
    witness_identity_residual,
)

LAMBDA = cmath.exp(2j * cmath.pi / 3)
SX = np.array([[0, 1], [1, 0]], dtype=complex)


@pytest.fixture
def verdict(capsys):
    """verdict(number, title, ok, detail) prints the PASS/FAIL line and asserts."""

    def emit(number, title, ok, detail=""):
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}: {title}" + (f" [{detail}]" if detail else "")
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return emit


def diag_action(n, phases):
    m = StarAlgebra((2,))
    return make_inner_action(m, FiniteGroup.cyclic(n), cyclic_powers(m.element([np.diag(phases)]), n))


def battery_graphs():
    # (targets graph, witness graph); the Z window is widened so no walk reaches its edge
    return [
        (two_loop_vertex(), None),
        (cycle_graph(3), None),
        (graph_Z(6), graph_Z(18)),
        (random_graph(6, 3, np.random.default_rng(0)), None),
    ]


def test_criterion_01_flip_is_saturated(verdict):
    act = diag_action(2, [1, -1])
    v = saturation_battery(act)
    idx = compute_index(solve_quasi_basis(expectation_from_group_action(act)))
    m = act.algebra
    r = 1 / np.sqrt(2)
    xs = [m.element([np.array([[r, r], [0, 0]])]), m.element([np.array([[0, 0], [r, r]])])]
    res = witness_identity_residual(build(act), xs)
    ok = (v.consistent and v.saturated is True and all(v.conditions.values())
          and idx.scalar_value is not None and abs(idx.scalar_value - 2.0) <= 1e-7 and res <= 1e-9)
    verdict(1, "Z2 = Ad(diag(1,-1)) on M2 saturated, Index 2, x_j identity",
            ok, f"index={idx.scalar_value:.12g}, identity residual={res:.2e}")


def test_criterion_02_non_saturated_examples(verdict):
    trivial = saturation_battery(diag_action(2, [1, 1]))
    act = diag_action(3, [LAMBDA, LAMBDA.conjugate()])
    v = saturation_battery(act)
    e = expectation_from_group_action(act)
    idx = compute_index(solve_quasi_basis(e))
    m = act.algebra
    res = check_quasi_basis([(m.one(), m.one()), (m.element([SX]), m.element([SX]))], e)
    given = compute_index([(m.one(), m.one()), (m.element([SX]), m.element([SX]))])
    ok = (trivial.consistent and trivial.saturated is False
          and v.consistent and v.saturated is False
          and abs(idx.scalar_value - 2.0) <= 1e-7 and abs(given.scalar_value - 2.0) <= 1e-7
          and res <= 1e-9)
    verdict(2, "trivial and Z3 diag(lambda, lambda-bar) not saturated, Index 2, given quasi-basis",
            ok, f"index={idx.scalar_value:.12g}, quasi-basis residual={res:.2e}")


def random_inner_suite():
    rng = np.random.default_rng(20240601)
    groups = [FiniteGroup.cyclic(2), FiniteGroup.cyclic(3), FiniteGroup.cyclic(4), FiniteGroup.by_name("V4")]
    algebras = [StarAlgebra((2,)), StarAlgebra((2, 1)), StarAlgebra((1, 1))]
    out = []
    for rep in range(8):
        for g in groups:
            for m in algebras:
                out.append(random_inner_action(m, g, rng))
    return out


@pytest.fixture(scope="module")
def inner_suite():
    acts = random_inner_suite()
    return acts, [saturation_battery(a) for a in acts]


def test_criterion_03_battery_equivalence(verdict, inner_suite):
    acts, verdicts = inner_suite
    bad = [i for i, v in enumerate(verdicts) if not v.consistent or len(set(v.conditions.values())) != 1]
    sat = sum(bool(v.saturated) for v in verdicts)
    ok = len(acts) >= 50 and not bad and 0 < sat < len(acts)
    verdict(3, "five battery conditions agree on random inner actions",
            ok, f"{len(acts)} actions, {sat} saturated, {len(bad)} inconsistent")


def test_criterion_04_hopf_agrees(verdict, inner_suite):
    acts, verdicts = inner_suite
    bad = []
    for i, (a, v) in enumerate(zip(acts, verdicts)):
        try:
            h = hopf_saturation(hopf_action_from_group_action(a))
        except ConsistencyError:
            bad.append(i)
            continue
        if h.saturated != v.saturated or h.index_is_dim != v.saturated:
            bad.append(i)
    verdict(4, "Hopf-level criterion agrees with the group battery",
            len(acts) >= 50 and not bad, f"{len(acts)} actions, {len(bad)} disagreements")


@pytest.fixture(scope="module")
def gspace_suite():
    rng = np.random.default_rng(7)
    names = ["Z1", "Z2", "Z3", "Z4", "V4", "Z5", "Z6", "S3"]
    spaces = []
    for k in range(3):
        for name in names:
            spaces.append(random_gspace(FiniteGroup.by_name(name), rng, max_points=12))
    return spaces


def test_criterion_05_strata_index_formula(verdict, gspace_suite):
    worst_index = max(index_formula_residual(sp) for sp in gspace_suite)
    worst_qb = max(strata_quasi_basis(sp).residual for sp in gspace_suite)
    sizes = all(sp.group.order <= 6 and sp.size <= 12 for sp in gspace_suite)
    ok = len(gspace_suite) >= 20 and sizes and worst_index <= 1e-7 and worst_qb <= 1e-9
    verdict(5, "Index(E)(x) = |G|/|G_x| on random G-spaces",
            ok, f"{len(gspace_suite)} spaces, index gap {worst_index:.2e}, quasi-basis residual {worst_qb:.2e}")


def test_criterion_06_freeness_equivalence(verdict, gspace_suite):
    bad, free = 0, 0
    for sp in gspace_suite:
        try:
            v = freeness_saturation_check(sp)
        except ConsistencyError:
            bad += 1
            continue
        if not (v.free == v.index_is_order == v.saturated):
            bad += 1
        free += v.free
    ok = not bad and 0 < free < len(gspace_suite)
    verdict(6, "free <=> Index = |G| <=> saturated",
            ok, f"{len(gspace_suite)} spaces, {free} free, {bad} disagreements")


def test_criterion_07_hopf_axioms(verdict):
    worst, worst_name, worst_e = 0.0, "", 0.0
    for name in ("Z2", "Z3", "Z4", "S3"):
        g = FiniteGroup.by_name(name)
        for h in (group_hopf(g), dual_function_hopf(g)):
            r = h.verify_hopf_axioms()
            name_max = max(r, key=r.get)
            if r[name_max] > worst:
                worst, worst_name = r[name_max], f"{h.name}:{name_max}"
            worst_e = max(worst_e, abs(h.haar @ h.e_vec - 1.0 / h.dim))
    # "machine precision": within a few ulps of 1/dim
    ok = worst <= 1e-10 and worst_e <= 4 * np.finfo(float).eps
    verdict(7, "Hopf axioms for C*(G) and C(G), tau(e) = 1/dim",
            ok, f"max residual {worst:.2e} ({worst_name or 'none'}), tau(e) gap {worst_e:.2e}")


def test_criterion_08_rokhlin_swap(verdict):
    m = StarAlgebra((2, 2))
    act = make_block_permutation_action(m, FiniteGroup.cyclic(2), [[0, 1], [1, 0]])
    rep = rokhlin_witness_check(act, list(m.central_projections()))
    v = saturation_battery(act)
    ok = rep.is_rokhlin and rep.corrected_passes and rep.battery_saturated is True and v.saturated is True
    verdict(8, "Rokhlin family for the swap on M2 + M2 gives saturation",
            ok, f"covariance residual {rep.covariance_residual:.2e}")


def test_criterion_09_gauge_witnesses(verdict):
    total, replayed, failures = 0, 0, 0
    cases = {"i": 0, "ii": 0}
    adjoint = 0
    valid = True
    for g, wg in battery_graphs():
        rep = validate_graph(g)
        valid &= rep.no_sinks and rep.no_sources
        b = witness_battery(g, 4, 4, witness_graph=wg)
        total += b.targets
        replayed += b.replayed
        failures += len(b.failures)
        for k in cases:
            cases[k] += b.case_counts.get(k, 0)
        adjoint += b.adjoint_count
    ok = valid and failures == 0 and replayed == total and total >= 2000 and all(cases.values()) and adjoint > 0
    verdict(9, "gauge witnesses built and replayed for every target",
            ok, f"{replayed}/{total} replayed, case i {cases['i']}, case ii {cases['ii']}, adjoint {adjoint}")


def test_criterion_10_af_core_blocks(verdict):
    g = two_loop_vertex()
    loops_ok = all(fixed_core_blocks(g, n, "v") == 2 ** n for n in range(11))
    radius = 6
    z = graph_Z(radius)
    # inside the window, every vertex v has exactly one path of length n ending at v
    z_ok = all(fixed_core_blocks(z, n, v) == 1 for n in range(radius + 1) for v in range(-radius + n, radius + 1))
    verdict(10, "core blocks 2^n for the two-loop vertex, 1 on graph Z", loops_ok and z_ok)


def test_criterion_11_products_with_Z_loop_free(verdict):
    z = graph_Z(6)
    graphs = [g for g, _ in battery_graphs()] + [binary_tree_with_loops(2)]
    counts = [len(loops(cartesian_product(z, e))) for e in graphs]
    verdict(11, "Z window x E has no loops for every battery graph",
            all(c == 0 for c in counts), f"{len(graphs)} graphs, loop counts {counts}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
