"""Directed graphs, monomials s_a s_b* and witnesses for saturation of the gauge action.

The calculus here is partial on purpose. Products of monomials are reduced with
the prefix rule

    (s_a s_b*)(s_m s_n*) = s_{a m'} s_n*   if m = b m'
                         = s_a s_{n b'}*   if b = m b'
                         = 0               otherwise

and nothing else. The Cuntz-Krieger relation p_v = sum_{s(e)=v} s_e s_e* is
never used as a rewrite, so equality decided by this engine is sound but not
complete in C*(E). The gauge action is formal: z^k is an integer degree.

Infinite graphs (the integer line Z) are presented through finite windows;
boundary vertices whose edges were cut off are marked as truncated, and any
walk that needs to leave the window raises CapacityError naming the radius it
would need.
"""

from __future__ import annotations

import builtins
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

from .errors import CapacityError, PreconditionError, StructuralError


def _key(x):
    return (type(x).__name__, x)


# --------------------------------------------------------------------------
# graphs
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Graph:
    vertices: tuple
    edges: tuple  # (id, source, range)
    name: str = ""
    window_radius: int | None = None
    truncated_in: frozenset = frozenset()
    truncated_out: frozenset = frozenset()

    def __post_init__(self):
        verts = tuple(self.vertices)
        edges = tuple((e[0], e[1], e[2]) for e in self.edges)
        if len(set(verts)) != len(verts):
            raise StructuralError("duplicate vertex labels")
        ids = [e[0] for e in edges]
        if len(set(ids)) != len(ids):
            raise StructuralError("duplicate edge ids")
        vs = set(verts)
        for eid, s, r in edges:
            if s not in vs or r not in vs:
                raise StructuralError(f"edge {eid!r} has an endpoint outside the vertex set")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "truncated_in", frozenset(self.truncated_in))
        object.__setattr__(self, "truncated_out", frozenset(self.truncated_out))

    @cached_property
    def _source(self) -> dict:
        return {e: s for e, s, _ in self.edges}

    @cached_property
    def _range(self) -> dict:
        return {e: r for e, _, r in self.edges}

    @cached_property
    def out_edges(self) -> dict:
        out = {v: [] for v in self.vertices}
        for e, s, _ in self.edges:
            out[s].append(e)
        return {v: tuple(sorted(es, key=_key)) for v, es in out.items()}

    @cached_property
    def in_edges(self) -> dict:
        out = {v: [] for v in self.vertices}
        for e, _, r in self.edges:
            out[r].append(e)
        return {v: tuple(sorted(es, key=_key)) for v, es in out.items()}

    def s(self, e):
        return self._source[e]

    def r(self, e):
        return self._range[e]

    def has_edge(self, e) -> bool:
        return e in self._source

    def has_vertex(self, v) -> bool:
        return v in self.out_edges

    @property
    def windowed(self) -> bool:
        return self.window_radius is not None

    def _exhausted(self, v, steps_left: int, direction: str):
        need = (self.window_radius or 0) + steps_left
        raise CapacityError(
            f"walk {direction} from vertex {v!r} leaves the window of radius {self.window_radius}; "
            f"rebuild the graph with window radius >= {need}"
        )

    def to_dict(self) -> dict:
        out = {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}
        if self.name:
            out["name"] = self.name
        return out


def graph_from_edges(vertices, edges, name: str = "") -> Graph:
    return Graph(tuple(vertices), tuple(tuple(e) for e in edges), name=name)


def two_loop_vertex() -> Graph:
    """One vertex v with loops e and f."""
    return Graph(("v",), (("e", "v", "v"), ("f", "v", "v")), name="two_loop_vertex")


def cycle_graph(n: int) -> Graph:
    """Vertices 0..n-1 with edges c{i}: i -> i+1 mod n."""
    return Graph(tuple(range(n)), tuple((f"c{i}", i, (i + 1) % n) for i in range(n)), name=f"cycle:{n}")


def graph_Z(radius: int) -> Graph:
    """Window [-radius, radius] of the line graph with edges e{k}: k -> k+1."""
    if radius < 0:
        raise PreconditionError("window radius must be non-negative")
    verts = tuple(range(-radius, radius + 1))
    edges = tuple((f"e{k}", k, k + 1) for k in range(-radius, radius))
    return Graph(verts, edges, name=f"graph_Z:{radius}", window_radius=radius,
                 truncated_in=frozenset({-radius}), truncated_out=frozenset({radius}))


def binary_tree_with_loops(depth: int = 2) -> Graph:
    """Complete binary tree of the given depth, each leaf carrying a loop and each node a loop (no sinks, no sources)."""
    verts = [""]
    for d in range(depth):
        verts += ["".join(p) for p in itertools.product("01", repeat=d + 1)]
    edges = []
    for v in verts:
        edges.append((f"l{v or 'root'}", v, v))
        if len(v) < depth:
            for b in "01":
                edges.append((f"t{v}{b}", v, v + b))
    return Graph(tuple(verts), tuple(edges), name=f"binary_tree_loops:{depth}")


def random_graph(n_vertices: int, n_extra: int, rng: np.random.Generator) -> Graph:
    """Random graph without sinks or sources: a random permutation's edges plus extra random edges."""
    perm = rng.permutation(n_vertices)
    edges = [(f"g{i}", int(i), int(perm[i])) for i in range(n_vertices)]
    for k in range(n_extra):
        s, r = rng.integers(0, n_vertices, size=2)
        edges.append((f"h{k}", int(s), int(r)))
    return Graph(tuple(range(n_vertices)), tuple(edges), name=f"random:{n_vertices}")


@dataclass(frozen=True)
class GraphReport:
    row_finite: bool
    locally_finite: bool
    sinks: tuple
    sources: tuple
    windowed: bool
    window_radius: int | None

    @property
    def no_sinks(self) -> bool:
        return not self.sinks

    @property
    def no_sources(self) -> bool:
        return not self.sources

    def to_dict(self) -> dict:
        return {
            "row_finite": self.row_finite,
            "locally_finite": self.locally_finite,
            "sinks": list(self.sinks),
            "sources": list(self.sources),
            "no_sinks": self.no_sinks,
            "no_sources": self.no_sources,
            "window_radius": self.window_radius,
        }


def validate_graph(g: Graph) -> GraphReport:
    """Finiteness flags plus sinks and sources; cut-off window boundaries are not counted."""
    sinks = tuple(v for v in g.vertices if not g.out_edges[v] and v not in g.truncated_out)
    sources = tuple(v for v in g.vertices if not g.in_edges[v] and v not in g.truncated_in)
    # a finite edge list is automatically row finite and locally finite
    return GraphReport(True, True, sinks, sources, g.windowed, g.window_radius)


# --------------------------------------------------------------------------
# paths
# --------------------------------------------------------------------------


@dataclass(frozen=True, order=False)
class Path:
    source: object
    edges: tuple
    range: object

    def __len__(self):
        return len(self.edges)

    @property
    def is_vertex(self) -> bool:
        return not self.edges

    def is_prefix_of(self, other: "Path") -> bool:
        return self.source == other.source and other.edges[: len(self.edges)] == self.edges

    def then(self, other: "Path") -> "Path":
        if self.range != other.source:
            raise StructuralError(f"cannot compose paths ending at {self.range!r} and starting at {other.source!r}")
        return Path(self.source, self.edges + other.edges, other.range)

    def drop_prefix(self, k: int, g: Graph) -> "Path":
        rest = self.edges[k:]
        start = g.s(rest[0]) if rest else self.range
        return Path(start, rest, self.range)

    def sort_key(self):
        return (len(self.edges), tuple(_key(e) for e in self.edges), _key(self.source), _key(self.range))

    def __str__(self):
        if self.is_vertex:
            return f"{self.source}"
        return ".".join(str(e) for e in self.edges)

    def to_dict(self) -> dict:
        return {"source": self.source, "edges": list(self.edges), "range": self.range}


def vertex_path(v) -> Path:
    return Path(v, (), v)


def make_path(g: Graph, edges: Iterable = (), vertex=None) -> Path:
    """Path from an edge list (or the length-0 path at ``vertex``), checked for composability."""
    edges = tuple(edges)
    if not edges:
        if vertex is None or not g.has_vertex(vertex):
            raise StructuralError(f"unknown vertex {vertex!r}")
        return vertex_path(vertex)
    for e in edges:
        if not g.has_edge(e):
            raise StructuralError(f"unknown edge {e!r}")
    for a, b in zip(edges, edges[1:]):
        if g.r(a) != g.s(b):
            raise StructuralError(f"edges {a!r} and {b!r} are not composable")
    if vertex is not None and vertex != g.s(edges[0]):
        raise StructuralError(f"path does not start at {vertex!r}")
    return Path(g.s(edges[0]), edges, g.r(edges[-1]))


def paths_of_length(g: Graph, n: int, source=None, range=None, within_window: bool = False) -> list[Path]:
    """All paths of length n, optionally with fixed source and/or range, in a canonical order.

    On a windowed graph a walk that reaches a cut-off boundary raises CapacityError
    unless ``within_window`` is set, in which case only paths inside the window are returned.
    """
    if n < 0:
        raise PreconditionError("path length must be non-negative")
    if range is not None:
        if not g.has_vertex(range):
            raise StructuralError(f"unknown vertex {range!r}")
        frontier = [vertex_path(range)]
        for step in builtins.range(n):
            nxt = []
            for p in frontier:
                head = p.source
                if head in g.truncated_in and not within_window:
                    g._exhausted(head, n - step, "backward")
                for e in g.in_edges[head]:
                    nxt.append(Path(g.s(e), (e,) + p.edges, p.range))
            frontier = nxt
        out = [p for p in frontier if source is None or p.source == source]
    else:
        starts = [source] if source is not None else list(g.vertices)
        for v in starts:
            if not g.has_vertex(v):
                raise StructuralError(f"unknown vertex {v!r}")
        frontier = [vertex_path(v) for v in starts]
        for step in builtins.range(n):
            nxt = []
            for p in frontier:
                tail = p.range
                if tail in g.truncated_out and not within_window:
                    g._exhausted(tail, n - step, "forward")
                for e in g.out_edges[tail]:
                    nxt.append(Path(p.source, p.edges + (e,), g.r(e)))
            frontier = nxt
        out = frontier
    return sorted(out, key=Path.sort_key)



def backward_walk(g: Graph, v, length: int) -> Path:
    """Path of the given length ending at v, choosing the smallest incoming edge id at each step."""
    p = vertex_path(v)
    for step in range(length):
        head = p.source
        ins = g.in_edges[head]
        if not ins:
            if head in g.truncated_in:
                g._exhausted(head, length - step, "backward")
            raise PreconditionError(f"vertex {head!r} is a source; no backward walk of length {length}")
        e = ins[0]
        p = Path(g.s(e), (e,) + p.edges, p.range)
    return p


def fixed_core_blocks(g: Graph, n: int, v) -> int:
    """Size m of the matrix block M_m spanned by s_a s_b* with |a| = |b| = n and r(a) = r(b) = v."""
    return len(paths_of_length(g, n, range=v))


# --------------------------------------------------------------------------
# monomials and their combinations
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PathMonomial:
    """z^degree s_alpha s_beta*, with r(alpha) = r(beta)."""

    alpha: Path
    beta: Path
    degree: int = 0

    def __post_init__(self):
        if self.alpha.range != self.beta.range:
            raise StructuralError("s_alpha s_beta* needs r(alpha) = r(beta); use monomial() to get zero instead")

    def __str__(self):
        z = "" if self.degree == 0 else ("z " if self.degree == 1 else f"z^{self.degree} ")
        if self.alpha.is_vertex and self.beta.is_vertex:
            return f"{z}p[{self.alpha.source}]"
        left = "" if self.alpha.is_vertex else f"s[{self.alpha}]"
        right = "" if self.beta.is_vertex else f"s[{self.beta}]*"
        return f"{z}{left}{' ' if left and right else ''}{right}"

    def sort_key(self):
        return (self.degree, self.alpha.sort_key(), self.beta.sort_key())

    def to_dict(self) -> dict:
        return {"alpha": self.alpha.to_dict(), "beta": self.beta.to_dict(), "degree": self.degree}


class Combination:
    """Finite linear combination of monomials with exact (int / Fraction / complex) coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for m, c in (terms or {}).items():
            if c != 0:
                self.terms[m] = self.terms.get(m, 0) + c
        self.terms = {m: c for m, c in self.terms.items() if c != 0}

    @classmethod
    def of(cls, m: PathMonomial | None, coeff=1) -> "Combination":
        return cls({} if m is None else {m: coeff})

    def __add__(self, other: "Combination") -> "Combination":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Combination(out)

    def scale(self, c) -> "Combination":
        return Combination({m: v * c for m, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, PathMonomial):
            other = Combination.of(other)
        return isinstance(other, Combination) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.items():
            parts.append(str(m) if c == 1 else f"({c}) {m}")
        return " + ".join(parts)

    def to_list(self) -> list:
        return [{"coefficient": _coeff_json(c), **m.to_dict()} for m, c in self.items()]


def _coeff_json(c):
    if isinstance(c, complex):
        return [c.real, c.imag]
    return c if isinstance(c, int) else float(c)


def monomial(alpha: Path, beta: Path, degree: int = 0) -> Combination:
    """s_alpha s_beta* z^degree, normalized to zero when r(alpha) != r(beta)."""
    if alpha.range != beta.range:
        return Combination()
    return Combination.of(PathMonomial(alpha, beta, degree))


def _as_combination(x) -> Combination:
    if isinstance(x, Combination):
        return x
    if isinstance(x, PathMonomial):
        return Combination.of(x)
    raise StructuralError(f"expected a monomial or a combination, got {type(x).__name__}")


def _reduce_pair(m1: PathMonomial, m2: PathMonomial, g: Graph) -> PathMonomial | None:
    a, b, mu, nu = m1.alpha, m1.beta, m2.alpha, m2.beta
    deg = m1.degree + m2.degree
    if b.is_prefix_of(mu):
        rest = mu.drop_prefix(len(b), g)
        return PathMonomial(a.then(rest), nu, deg)
    if mu.is_prefix_of(b):
        rest = b.drop_prefix(len(mu), g)
        return PathMonomial(a, nu.then(rest), deg)
    return None


def reduce_product(x, y, g: Graph) -> Combination:
    """Product of two monomials / combinations by the prefix rule; degrees add."""
    x, y = _as_combination(x), _as_combination(y)
    out = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            _check_on_graph(m1, g)
            _check_on_graph(m2, g)
            m = _reduce_pair(m1, m2, g)
            if m is not None:
                out[m] = out.get(m, 0) + c1 * c2
    return Combination(out)


def _check_on_graph(m: PathMonomial, g: Graph):
    for p in (m.alpha, m.beta):
        if p.is_vertex:
            if not g.has_vertex(p.source):
                raise StructuralError(f"monomial {m} is not over this graph")
        elif not all(g.has_edge(e) for e in p.edges):
            raise StructuralError(f"monomial {m} is not over this graph")


def _conj(c):
    return c.conjugate() if isinstance(c, complex) else c


def involution(x) -> Combination:
    """(z^k s_a s_b*)* = z^-k s_b s_a*, coefficients conjugated."""
    x = _as_combination(x)
    return Combination({PathMonomial(m.beta, m.alpha, -m.degree): _conj(c) for m, c in x.terms.items()})


def gauge_act(x) -> Combination:
    """Formal gamma_z: multiplies each s_a s_b* by z^(|a| - |b|)."""
    x = _as_combination(x)
    return Combination({PathMonomial(m.alpha, m.beta, m.degree + len(m.alpha) - len(m.beta)): c for m, c in x.terms.items()})


# --------------------------------------------------------------------------
# witnesses
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Step:
    """One transcript entry: rule name, its inputs and its output (all symbolic)."""

    rule: str
    inputs: tuple
    output: object

    def render(self) -> str:
        if self.rule == "degree":
            n, la, lb = self.inputs
            return f"l = n - (|alpha| - |beta|) = {n} - ({la} - {lb}) = {self.output}"
        if self.rule == "path":
            name, length, end = self.inputs
            where = "s(alpha)" if name == "mu" else "r(alpha)"
            return f"{name} = {self.output} with |{name}| = {length}, r({name}) = {where} = {end}"
        if self.rule == "gauge":
            return f"gamma_z({self.inputs[0]}) = {self.output}"
        if self.rule == "reduce":
            return f"({self.inputs[0]}) * ({self.inputs[1]}) = {self.output}"
        if self.rule == "adjoint":
            return f"({self.inputs[0]})* = {self.output}"
        if self.rule == "check":
            return f"{self.inputs[0]} == {self.inputs[1]}: {self.output}"
        return f"{self.rule}: {self.output}"


@dataclass(frozen=True)
class GaugeWitness:
    """a gamma_z(b) = z^n s_alpha s_beta* (through the adjoint when ``adjoint`` is set)."""

    target: PathMonomial
    case: str  # "i" or "ii"
    path: Path  # mu in case (i), nu in case (ii)
    l: int
    a: Combination
    b: Combination
    adjoint: bool
    transcript: tuple = field(default=(), compare=False)

    def to_dict(self) -> dict:
        return {
            "target": str(self.target),
            "case": self.case,
            "l": self.l,
            "path": {"name": "mu" if self.case == "i" else "nu", **self.path.to_dict()},
            "a": str(self.a),
            "b": str(self.b),
            "adjoint_route": self.adjoint,
            "transcript": [[s.rule, s.render()] for s in self.transcript],
        }


def _evaluate(a: Combination, b: Combination, adjoint: bool, g: Graph) -> tuple[list, Combination]:
    gb = gauge_act(b)
    prod = reduce_product(a, gb, g)
    steps = [Step("gauge", (b,), gb), Step("reduce", (a, gb), prod)]
    if adjoint:
        adj = involution(prod)
        steps.append(Step("adjoint", (prod,), adj))
        prod = adj
    return steps, prod


def gauge_witness(g: Graph, alpha: Path, beta: Path, n: int, report: GraphReport | None = None) -> GaugeWitness:
    """Witness (a, b) with a gamma_z(b) = z^n s_alpha s_beta*, by the two-case construction.

    With l = n - (|alpha| - |beta|): for l >= 0 take mu of length l into s(alpha),
    a = s_mu*, b = s_{mu alpha} s_beta*; for l < 0 take nu of length |beta| + n
    into r(alpha), a = s_alpha s_nu*, b = s_nu s_beta*. Negative n goes through
    the witness for z^-n s_beta s_alpha* and an adjoint.
    """
    if alpha.range != beta.range:
        raise PreconditionError("target needs r(alpha) = r(beta)")
    report = validate_graph(g) if report is None else report
    if not report.no_sinks:
        raise PreconditionError(f"no sinks required; sinks at {list(report.sinks)}")
    if not report.no_sources:
        raise PreconditionError(f"no sources required; sources at {list(report.sources)}")
    target = PathMonomial(alpha, beta, n)
    adjoint = n < 0
    a_, b_, m = (beta, alpha, -n) if adjoint else (alpha, beta, n)

    l = m - (len(a_) - len(b_))
    steps = [Step("degree", (m, len(a_), len(b_)), l)]
    if l >= 0:
        path = backward_walk(g, a_.source, l)
        steps.append(Step("path", ("mu", l, a_.source), path))
        a = monomial(vertex_path(path.range), path)  # s_mu*
        b = monomial(path.then(a_), b_)  # s_{mu alpha} s_beta*
        case = "i"
    else:
        path = backward_walk(g, a_.range, len(b_) + m)
        steps.append(Step("path", ("nu", len(b_) + m, a_.range), path))
        a = monomial(a_, path)  # s_alpha s_nu*
        b = monomial(path, b_)  # s_nu s_beta*
        case = "ii"
    evaluated, result = _evaluate(a, b, adjoint, g)
    steps.extend(evaluated)
    want = Combination.of(target)
    steps.append(Step("check", (result, target), result == want))
    if result != want:  # pragma: no cover - would mean the construction is wrong
        raise PreconditionError(f"witness construction failed for {target}")
    return GaugeWitness(target, case, path, l, a, b, adjoint, tuple(steps))


def replay(w: GaugeWitness, g: Graph) -> bool:
    """Recompute a gamma_z(b) (and the adjoint if used) and compare with the transcript and the target."""
    evaluated, result = _evaluate(w.a, w.b, w.adjoint, g)
    recorded = [s for s in w.transcript if s.rule in ("gauge", "reduce", "adjoint")]
    if recorded != evaluated:
        return False
    first, second = (w.target.beta, w.target.alpha) if w.adjoint else (w.target.alpha, w.target.beta)
    if w.case == "i" and w.l + len(first) - len(second) != abs(w.target.degree):
        return False
    return result == Combination.of(w.target)


def enumerate_targets(g: Graph, max_len: int, within_window: bool = True) -> list[tuple[Path, Path]]:
    """All (alpha, beta) with |alpha|, |beta| <= max_len and r(alpha) = r(beta)."""
    by_range = {}
    for k in range(max_len + 1):
        for p in paths_of_length(g, k, within_window=within_window):
            by_range.setdefault(p.range, []).append(p)
    out = []
    for v in g.vertices:
        ps = by_range.get(v, [])
        out.extend(itertools.product(ps, ps))
    return out


@dataclass(frozen=True)
class WitnessBatteryReport:
    graph: str
    targets: int
    replayed: int
    case_counts: dict
    adjoint_count: int
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures and self.replayed == self.targets

    def to_dict(self) -> dict:
        return {
            "graph": self.graph,
            "targets": self.targets,
            "replayed": self.replayed,
            "cases": dict(self.case_counts),
            "adjoint_route": self.adjoint_count,
            "failures": list(self.failures),
            "ok": self.ok,
        }


def witness_battery(g: Graph, max_len: int, max_n: int, witness_graph: Graph | None = None) -> WitnessBatteryReport:
    """gauge_witness + replay for every target with |alpha|, |beta| <= max_len and |n| <= max_n.

    Targets are enumerated in ``g``; witnesses are built in ``witness_graph`` (default ``g``),
    which for a windowed graph should be a wider window so that no walk hits the boundary.
    """
    wg = g if witness_graph is None else witness_graph
    report = validate_graph(wg)
    cases = {"i": 0, "ii": 0}
    adj = 0
    done = 0
    failures = []
    targets = enumerate_targets(g, max_len)
    total = 0
    for alpha, beta in targets:
        for n in range(-max_n, max_n + 1):
            total += 1
            try:
                w = gauge_witness(wg, alpha, beta, n, report)
            except (CapacityError, PreconditionError) as exc:
                failures.append(f"{alpha} / {beta} / {n}: {exc}")
                continue
            if replay(w, wg):
                done += 1
                cases[w.case] += 1
                adj += w.adjoint
            else:
                failures.append(f"{alpha} / {beta} / {n}: replay mismatch")
    return WitnessBatteryReport(g.name, total, done, cases, adj, tuple(failures))


# --------------------------------------------------------------------------
# products of graphs
# --------------------------------------------------------------------------


def cartesian_product(g1: Graph, g2: Graph) -> Graph:
    """E x F with edges (e, f): (s(e), s(f)) -> (r(e), r(f))."""
    verts = tuple(itertools.product(g1.vertices, g2.vertices))
    edges = tuple(
        ((e1, e2), (s1, s2), (r1, r2)) for (e1, s1, r1), (e2, s2, r2) in itertools.product(g1.edges, g2.edges)
    )
    t_in = frozenset(v for v in verts if v[0] in g1.truncated_in or v[1] in g2.truncated_in)
    t_out = frozenset(v for v in verts if v[0] in g1.truncated_out or v[1] in g2.truncated_out)
    radius = None if g1.window_radius is None and g2.window_radius is None else max(
        r for r in (g1.window_radius, g2.window_radius) if r is not None
    )
    return Graph(verts, edges, name=f"{g1.name or 'E'} x {g2.name or 'F'}", window_radius=radius,
                 truncated_in=t_in, truncated_out=t_out)


def loops(g: Graph) -> list:
    """Edges with s(e) = r(e)."""
    return [e for e, s, r in g.edges if s == r]


def find_cycle(g: Graph) -> list | None:
    """Some directed cycle as a list of edge ids, or None (iterative depth-first search)."""
    color = {v: 0 for v in g.vertices}
    parent_edge = {}
    for root in g.vertices:
        if color[root]:
            continue
        stack = [(root, iter(g.out_edges[root]))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            e = next(it, None)
            if e is None:
                color[v] = 2
                stack.pop()
                continue
            w = g.r(e)
            if color[w] == 0:
                color[w] = 1
                parent_edge[w] = e
                stack.append((w, iter(g.out_edges[w])))
            elif color[w] == 1:
                cyc = [e]
                x = v
                while x != w:
                    pe = parent_edge[x]
                    cyc.append(pe)
                    x = g.s(pe)
                return cyc[::-1]
    return None
