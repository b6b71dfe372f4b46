"""``satlab`` command line: analyze, strata, hopf and graph-witness reports.

Every command prints one report, as JSON (``--format json``, the default) or
as a short human summary. Mathematical verdicts never change the exit code;
only errors do (2 for bad input, 3 for capacity or consistency failures).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__, kernels
from .algebra_core import EPS_EQ, operator_norm
from .commutative_strata import (
    burnside_check,
    conjugacy_defect,
    freeness_saturation_check,
    index_function,
    index_formula_residual,
    strata,
    strata_quasi_basis,
)
from .crossed_product import build
from .errors import (
    CapacityError,
    ConsistencyError,
    IndexFiniteTypeError,
    PreconditionError,
    ProblemFileError,
    SatlabError,
)
from .graph_gauge import (
    Path,
    gauge_witness,
    graph_Z,
    make_path,
    replay,
    validate_graph,
    witness_battery,
)
from .hopf import hopf_action_from_group_action
from .index_engine import (
    check_quasi_basis,
    compute_index,
    expectation_from_group_action,
    hopf_saturation,
    rokhlin_witness_check,
    saturation_battery,
    solve_quasi_basis,
    witness_identity_residual,
)
from .problems import build_action, build_gspace, build_graph, build_hopf, from_complex, load

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RUNTIME = 3


# --------------------------------------------------------------------------
# report helpers
# --------------------------------------------------------------------------


def clean(x, digits: int = 12):
    """Round floats to ``digits`` significant digits (and -0.0 to 0.0) throughout a report."""
    if isinstance(x, dict):
        return {str(k): clean(v, digits) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [clean(v, digits) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not np.isfinite(x):
            return str(x)
        if abs(x) < 10.0**-digits:
            return 0.0
        return float(f"{x:.{digits}g}")
    if isinstance(x, frozenset):
        return sorted(clean(v, digits) for v in x)
    return x


def coords(x) -> list:
    """Element as a list of blocks of [re, im] entries."""
    return [from_complex(b) for b in x.blocks]


def _group_info(group) -> dict:
    return {"name": group.name, "order": group.order}


def _check_problem(problem, kind: str, command: str):
    if problem.kind != kind:
        raise ProblemFileError(f"'{command}' expects a {kind} problem, got kind '{problem.kind}'", "/kind")


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return "null"
    return str(x)


# --------------------------------------------------------------------------
# analyze
# --------------------------------------------------------------------------


def cmd_analyze(args) -> dict:
    problem = load(args.file)
    _check_problem(problem, "action", "analyze")
    ap = build_action(problem)
    action = ap.action
    epsilon = args.epsilon if args.epsilon is not None else (ap.epsilon or 1e-6)
    cp = build(action)
    verdict = saturation_battery(action, epsilon, cp=cp)
    if not verdict.consistent:
        raise ConsistencyError(f"saturation conditions disagree: {verdict.conditions}")

    expectation = expectation_from_group_action(action)
    qb = solve_quasi_basis(expectation)
    index = compute_index(qb, action.group.order)

    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for _ in range(8):
        b = action.algebra.random_element(rng)
        rebuilt = action.algebra.zero()
        for u, w in qb.elements:
            rebuilt = rebuilt + u * expectation(w * b)
        worst = max(worst, operator_norm(rebuilt - b) / max(operator_norm(b), 1.0))

    checks = {}
    if ap.quasi_basis is not None:
        r = check_quasi_basis(ap.quasi_basis, expectation)
        given = compute_index(ap.quasi_basis, action.group.order)
        checks["supplied_quasi_basis"] = {
            "residual": r,
            "passes": r <= EPS_EQ,
            "index_scalar": given.scalar_value,
            "index_residual_to_engine": operator_norm(given.index_element - index.index_element),
        }
    if ap.witness_x is not None:
        r = witness_identity_residual(cp, ap.witness_x)
        checks["witness_identity"] = {"residual": r, "passes": r <= EPS_EQ}
    if ap.rokhlin_family is not None:
        checks["rokhlin"] = rokhlin_witness_check(action, ap.rokhlin_family, epsilon).to_dict()

    return {
        "command": "analyze",
        "problem": problem.name,
        "algebra": {"block_dims": list(action.algebra.block_dims), "dim": action.algebra.dim},
        "group": _group_info(action.group),
        "saturation": verdict.to_dict(),
        "index": {
            **index.to_dict(),
            "distance_to_group_order": operator_norm(index.index_element - action.algebra.scalar(action.group.order)),
            "self_adjoint_residual": index.self_adjoint_residual,
            "element": coords(index.index_element),
        },
        "quasi_basis": {
            "reconstruction_residual": qb.residual,
            "frame_min_eigenvalue": qb.frame_min_eigenvalue,
            "elements": [coords(u) for u in qb.left],
            "random_reconstruction": {"samples": 8, "seed": args.seed, "max_relative_residual": worst},
        },
        "checks": checks,
    }


def text_analyze(r: dict) -> list[str]:
    s = r["saturation"]
    idx = r["index"]
    lines = [
        f"problem: {r['problem'] or '-'}",
        f"algebra: {'+'.join(f'M{d}' for d in r['algebra']['block_dims'])}, group: {r['group']['name'] or '?'}",
        f"saturated: {_fmt(s['saturated'])}",
        f"index: {idx['scalar_value'] if idx['scalar_value'] is not None else 'not scalar'}",
        f"|G|: {r['group']['order']}",
        f"  ideal J_alpha: dim {s['ideal']['dim_J_alpha']} of {s['ideal']['dim_crossed_product']}",
        f"  Index = |G|: {_fmt(s['conditions']['index_is_order'])} (distance {s['index']['distance_to_group_order']})",
        f"  quasi-basis orthogonality: {_fmt(s['conditions']['qb_orthogonality'])} "
        f"(max norm {s['quasi_basis_orthogonality']['max_norm_g_ne_identity']})",
        f"  exact witness: {_fmt(s['conditions']['exact_witness'])} (covariance {s['witness']['covariance_residual']}, "
        f"orthogonality {s['witness']['orthogonality_residual']})",
        f"  approximate witness at epsilon {s['epsilon']}: {_fmt(s['conditions']['approx_witness'])}",
    ]
    for name, c in r["checks"].items():
        if "passes" in c:
            lines.append(f"  check {name}: {_fmt(c['passes'])} (residual {c['residual']})")
        else:
            lines.append(f"  check {name}: rokhlin family {_fmt(c['is_rokhlin_family'])}, "
                         f"translated witness {_fmt(c['translated_family_witness']['passes'])}, "
                         f"battery saturated {_fmt(c['battery_saturated'])}")
    return lines


# --------------------------------------------------------------------------
# strata
# --------------------------------------------------------------------------


def cmd_strata(args) -> dict:
    problem = load(args.file)
    _check_problem(problem, "gspace", "strata")
    space = build_gspace(problem)
    part = strata(space)  # raises CapacityError above the subgroup bound
    verdict = freeness_saturation_check(space)
    idx = index_function(space)
    total, n_orbits = burnside_check(space)
    qb = strata_quasi_basis(space)
    table = []
    for h, pts in part.nonempty().items():
        table.append({
            "subgroup": sorted(h),
            "order": len(h),
            "points": [space.points[i] for i in pts],
            "index_value": space.group.order / len(h),
        })
    return {
        "command": "strata",
        "problem": problem.name,
        "group": _group_info(space.group),
        "points": list(space.points),
        "orbits": [[space.points[i] for i in o] for o in space.orbits()],
        "strata": table,
        "index": [float(v.real) for v in idx.vec],
        "index_formula_residual": index_formula_residual(space),
        "strata_quasi_basis_residual": qb.residual,
        "burnside": {"sum_stabilizer_fractions": str(total), "orbits": n_orbits, "holds": total == n_orbits},
        "conjugacy_defect": conjugacy_defect(space),
        "verdict": verdict.to_dict(),
    }


def text_strata(r: dict) -> list[str]:
    lines = [f"problem: {r['problem'] or '-'}", f"group: {r['group']['name'] or '?'} (|G|: {r['group']['order']})",
             "stratum   |H|  |G|/|H|  points"]
    for row in r["strata"]:
        lines.append(f"{str(row['subgroup']):<9} {row['order']:>3}  {row['index_value']:>7}  {row['points']}")
    v = r["verdict"]
    values = [int(x) if float(x).is_integer() else x for x in r["index"]]
    lines.append(f"index: ({', '.join(str(x) for x in values)})")
    lines.append(f"free: {_fmt(v['free'])}, saturated: {_fmt(v['saturated'])}, index == |G|: {_fmt(v['index_is_group_order'])}")
    lines.append(f"  index formula residual {r['index_formula_residual']}, quasi-basis residual {r['strata_quasi_basis_residual']}")
    return lines


# --------------------------------------------------------------------------
# hopf
# --------------------------------------------------------------------------


def cmd_hopf(args) -> dict:
    problem = load(args.file)
    action = None
    if problem.kind == "action":
        action = hopf_action_from_group_action(build_action(problem).action)
        hopf = action.hopf
    elif problem.kind == "hopf":
        hp = build_hopf(problem)
        hopf, action = hp.hopf, hp.action
    else:
        raise ProblemFileError(f"'hopf' expects a hopf or action problem, got kind '{problem.kind}'", "/kind")
    axioms = hopf.verify_hopf_axioms()
    tau_e = complex(hopf.tau(hopf.e_vec))
    out = {
        "command": "hopf",
        "problem": problem.name,
        "hopf": {"name": hopf.name, "dim": hopf.dim},
        "axioms": {"residuals": axioms, "max_residual": max(axioms.values()), "pass": max(axioms.values()) <= EPS_EQ},
        "tau_e": {"value": tau_e.real, "expected": 1.0 / hopf.dim, "residual": abs(tau_e - 1.0 / hopf.dim)},
        "counit_identically_one": hopf.counit_identically_one(),
        "haar": from_complex(hopf.haar),
        "distinguished_projection": from_complex(hopf.e_vec),
    }
    if action is not None:
        res = action.axiom_residuals()
        out["action"] = {
            "algebra": list(action.algebra.block_dims),
            "axiom_residuals": res,
            "saturation": hopf_saturation(action).to_dict(),
        }
    return out


def text_hopf(r: dict) -> list[str]:
    lines = [f"problem: {r['problem'] or '-'}", f"hopf algebra: {r['hopf']['name'] or '?'} (dim {r['hopf']['dim']})",
             f"axioms: {'pass' if r['axioms']['pass'] else 'FAIL'} (max residual {r['axioms']['max_residual']})",
             f"tau(e): {r['tau_e']['value']} (1/dim = {r['tau_e']['expected']})"]
    if "action" in r:
        s = r["action"]["saturation"]
        lines.append(f"saturated: {_fmt(s['saturated'])}")
        lines.append(f"index: {s['index']['scalar'] if s['index']['scalar'] is not None else 'not scalar'}")
        lines.append(f"  span{{xey}}: dim {s['span_xey']['dim']} of {s['span_xey']['dim_smash_product']}")
    return lines


# --------------------------------------------------------------------------
# graph-witness
# --------------------------------------------------------------------------


def parse_path_arg(g, text: str, flag: str) -> Path:
    """``e.f`` (edge ids), ``v`` (a vertex) or the explicit ``vertex:v`` / ``edges:e.f``."""
    verts = {str(v): v for v in g.vertices}
    edges = {str(e[0]): e[0] for e in g.edges}
    forced = None
    if text.startswith("vertex:") or text.startswith("edges:"):
        forced, _, text = text.partition(":")
    parts = text.split(".")
    is_vertex = text in verts and forced != "edges"
    is_edges = all(p in edges for p in parts) and forced != "vertex"
    if is_vertex and is_edges:
        raise ProblemFileError(f"{flag} {text!r} names both a vertex and an edge; prefix it with vertex: or edges:")
    try:
        if is_vertex:
            return make_path(g, (), vertex=verts[text])
        if is_edges:
            return make_path(g, [edges[p] for p in parts])
    except SatlabError as exc:
        raise ProblemFileError(f"{flag}: {exc}") from None
    raise ProblemFileError(f"{flag}: {text!r} is neither a vertex nor a dot-separated list of edge ids")


def _witness_graph(gp, need: int):
    """Wider window for the named graph_Z when the file gives no witness radius."""
    g = gp.graph
    if gp.witness_graph is not g or not g.windowed or not g.name.startswith("graph_Z:"):
        return gp.witness_graph
    return graph_Z(g.window_radius + need)


def cmd_graph_witness(args) -> dict:
    problem = load(args.file)
    _check_problem(problem, "graph", "graph-witness")
    gp = build_graph(problem)
    g = gp.graph
    out = {"command": "graph-witness", "problem": problem.name, "graph": g.name or "custom"}
    if args.batch is not None:
        if args.alpha or args.beta:
            raise ProblemFileError("--batch cannot be combined with --alpha/--beta")
        if args.batch < 0:
            raise ProblemFileError("--batch needs a non-negative length")
        wg = _witness_graph(gp, 3 * args.batch)
        report = validate_graph(wg)
        out["graph_report"] = report.to_dict()
        _require_no_sinks_sources(report)
        battery = witness_battery(g, args.batch, args.batch, witness_graph=wg)
        out["witness_window_radius"] = wg.window_radius
        out["batch"] = {"max_length": args.batch, "max_degree": args.batch, **battery.to_dict()}
        out["all_verified"] = battery.ok
        return out

    if args.alpha is not None or args.beta is not None:
        if args.alpha is None or args.beta is None:
            raise ProblemFileError("give both --alpha and --beta")
        targets = [(parse_path_arg(g, args.alpha, "--alpha"), parse_path_arg(g, args.beta, "--beta"), args.n)]
    else:
        targets = gp.targets
        if not targets:
            raise ProblemFileError("no targets: give --alpha/--beta/--n, --batch, or a 'targets' list in the file")
    need = max(len(a) + len(b) + abs(n) for a, b, n in targets)
    wg = _witness_graph(gp, need)
    report = validate_graph(wg)
    out["graph_report"] = report.to_dict()
    _require_no_sinks_sources(report)
    if wg.windowed:
        out["witness_window_radius"] = wg.window_radius
    witnesses = []
    for alpha, beta, n in targets:
        w = gauge_witness(wg, alpha, beta, n, report)
        witnesses.append({**w.to_dict(), "replayed": replay(w, wg)})
    out["witnesses"] = witnesses
    out["all_verified"] = all(w["replayed"] for w in witnesses)
    return out


def _require_no_sinks_sources(report):
    if not report.no_sinks:
        raise PreconditionError(f"no sinks required; sinks at {list(report.sinks)}")
    if not report.no_sources:
        raise PreconditionError(f"no sources required; sources at {list(report.sources)}")


def text_graph_witness(r: dict) -> list[str]:
    lines = [f"problem: {r['problem'] or '-'}", f"graph: {r['graph']}"]
    if "batch" in r:
        b = r["batch"]
        lines.append(f"batch |alpha|, |beta|, |n| <= {b['max_length']}: {b['replayed']} of {b['targets']} witnesses replayed "
                     f"(case i: {b['cases']['i']}, case ii: {b['cases']['ii']}, adjoint route: {b['adjoint_route']})")
        for f in b["failures"][:10]:
            lines.append(f"  failure: {f}")
    for w in r.get("witnesses", []):
        lines.append(f"target {w['target']}: a = {w['a']}, b = {w['b']} (case {w['case']}"
                     f"{', adjoint route' if w['adjoint_route'] else ''}), replayed: {_fmt(w['replayed'])}")
        for _, step in w["transcript"]:
            lines.append(f"  {step}")
    lines.append(f"all verified: {_fmt(r['all_verified'])}")
    return lines


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------

COMMANDS = {
    "analyze": (cmd_analyze, text_analyze),
    "strata": (cmd_strata, text_strata),
    "hopf": (cmd_hopf, text_hopf),
    "graph-witness": (cmd_graph_witness, text_graph_witness),
}


def _common(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the global flags with suppressed defaults so that
    # "satlab --format text analyze f" and "satlab analyze f --format text" both work
    def d(value):
        return argparse.SUPPRESS if suppress else value

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--epsilon", type=float, default=d(None), help="tolerance for the approximate witness test (default 1e-6)")
    common.add_argument("--format", choices=("json", "text"), default=d("json"))
    common.add_argument("--seed", type=int, default=d(0), help="seed for randomized checks")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="satlab", description="Saturation of finite group and Hopf actions.",
                                     parents=[_common(False)])
    parser.add_argument("--version", action="version", version=f"satlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (("analyze", "saturation battery and index of a group action"),
                        ("strata", "isotropy strata and index of a finite G-space"),
                        ("hopf", "Hopf axioms and Hopf-level saturation")):
        p = sub.add_parser(name, help=help_, parents=[_common(True)])
        p.add_argument("file")
    p = sub.add_parser("graph-witness", help="gauge-action saturation witnesses on a graph", parents=[_common(True)])
    p.add_argument("file")
    p.add_argument("--alpha", default=None, help="path as dot-separated edge ids, or a vertex")
    p.add_argument("--beta", default=None)
    p.add_argument("--n", type=int, default=0, help="gauge degree of the target")
    p.add_argument("--batch", type=int, default=None, metavar="L", help="all targets with |alpha|, |beta|, |n| <= L")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    run, render = COMMANDS[args.command]
    start = time.perf_counter()
    try:
        if args.epsilon is not None and not args.epsilon > 0:
            raise ProblemFileError("--epsilon must be positive")
        report = run(args)
    except (ProblemFileError, SatlabError) as exc:
        code = EXIT_RUNTIME if isinstance(exc, (CapacityError, ConsistencyError, IndexFiniteTypeError)) else EXIT_INPUT
        error = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        if args.format == "json":
            print(json.dumps(error, indent=2))
        print(f"satlab: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return code
    report = clean(report)
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6), "backend": kernels.BACKEND}
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(render(report)))
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
