"""Problem files: JSON schema, parsing into satlab objects, canonical serialization.

Four kinds of problem are understood (``"kind"``): ``action``, ``gspace``,
``hopf`` and ``graph``. Complex numbers are written as ``[re, im]``; a bare
real number is accepted on input and canonicalized to ``[x, 0.0]``. The
layout is documented in ``docs/file_format.md``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path as FsPath

import jsonschema
import numpy as np

from .algebra_core import AlgebraElement, StarAlgebra
from .commutative_strata import FiniteGSpace, coset_space, disjoint_union
from .errors import ProblemFileError, SatlabError
from .graph_gauge import (
    Graph,
    Path,
    binary_tree_with_loops,
    cycle_graph,
    graph_Z,
    make_path,
    two_loop_vertex,
)
from .group_action import (
    FiniteGroup,
    GroupAction,
    cyclic_powers,
    direct_sum_action,
    make_block_permutation_action,
    make_inner_action,
    make_permutation_action,
)
from .hopf import HopfAction, HopfAlgebra, dual_function_hopf, group_hopf, hopf_action_from_group_action, hopf_from_tensors

KINDS = ("action", "gspace", "hopf", "graph")

# --------------------------------------------------------------------------
# schema
# --------------------------------------------------------------------------


def _nested(depth: int, leaf: dict) -> dict:
    out = leaf
    for _ in range(depth):
        out = {"type": "array", "items": out}
    return out


_COMPLEX = {"$ref": "#/$defs/complex"}
_INT_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}}
_LABEL = {"type": ["string", "integer"]}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["kind"],
    "properties": {"kind": {"enum": list(KINDS)}, "name": {"type": "string"}},
    "$defs": {
        "complex": {
            "anyOf": [
                {"type": "number"},
                {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
            ]
        },
        "element": {"type": "array", "minItems": 1, "items": _nested(2, _COMPLEX)},
        "elements": {"type": "array", "items": {"$ref": "#/$defs/element"}},
        "block_dims": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 1}},
        "group": {
            "oneOf": [
                {"type": "string", "minLength": 1},
                {"type": "object", "required": ["table"], "additionalProperties": False,
                 "properties": {"table": _INT_MATRIX, "name": {"type": "string"}}},
                {"type": "object", "required": ["generators"], "additionalProperties": False,
                 "properties": {"generators": _INT_MATRIX, "name": {"type": "string"}}},
            ]
        },
        "action": {
            "type": "object",
            "required": ["type"],
            "properties": {"type": {"enum": ["inner", "inner_generator", "block_permutation", "permutation", "maps", "direct_sum"]}},
            "allOf": [
                {"if": {"properties": {"type": {"const": "inner"}}},
                 "then": {"required": ["unitaries"], "additionalProperties": False,
                          "properties": {"type": True, "unitaries": {"$ref": "#/$defs/elements"}}}},
                {"if": {"properties": {"type": {"const": "inner_generator"}}},
                 "then": {"required": ["generator"], "additionalProperties": False,
                          "properties": {"type": True, "generator": {"$ref": "#/$defs/element"}}}},
                {"if": {"properties": {"type": {"const": "block_permutation"}}},
                 "then": {"required": ["permutations"], "additionalProperties": False,
                          "properties": {"type": True, "permutations": _INT_MATRIX,
                                         "unitaries": {"$ref": "#/$defs/elements"}}}},
                {"if": {"properties": {"type": {"const": "permutation"}}},
                 "then": {"required": ["permutations"], "additionalProperties": False,
                          "properties": {"type": True, "permutations": _INT_MATRIX}}},
                {"if": {"properties": {"type": {"const": "maps"}}},
                 "then": {"required": ["maps"], "additionalProperties": False,
                          "properties": {"type": True, "maps": _nested(3, _COMPLEX)}}},
                {"if": {"properties": {"type": {"const": "direct_sum"}}},
                 "then": {"required": ["summands"], "additionalProperties": False,
                          "properties": {"type": True, "summands": {
                              "type": "array", "minItems": 1,
                              "items": {"type": "object", "required": ["algebra", "action"], "additionalProperties": False,
                                        "properties": {"algebra": {"$ref": "#/$defs/block_dims"},
                                                       "action": {"$ref": "#/$defs/action"}}}}}}},
            ],
        },
        "path": {
            "oneOf": [
                {"type": "object", "required": ["vertex"], "additionalProperties": False, "properties": {"vertex": _LABEL}},
                {"type": "object", "required": ["edges"], "additionalProperties": False,
                 "properties": {"edges": {"type": "array", "minItems": 1, "items": _LABEL}}},
            ]
        },
    },
    "allOf": [
        {"if": {"properties": {"kind": {"const": "action"}}},
         "then": {"required": ["algebra", "group", "action"], "additionalProperties": False,
                  "properties": {
                      "kind": True, "name": True,
                      "algebra": {"$ref": "#/$defs/block_dims"},
                      "group": {"$ref": "#/$defs/group"},
                      "action": {"$ref": "#/$defs/action"},
                      "epsilon": {"type": "number", "exclusiveMinimum": 0},
                      "checks": {"type": "object", "additionalProperties": False, "properties": {
                          "quasi_basis": {"type": "array", "items": {"type": "array", "minItems": 2, "maxItems": 2,
                                                                     "items": {"$ref": "#/$defs/element"}}},
                          "witness_x": {"$ref": "#/$defs/elements"},
                          "rokhlin_family": {"$ref": "#/$defs/elements"},
                      }},
                  }}},
        {"if": {"properties": {"kind": {"const": "gspace"}}},
         "then": {"required": ["group"], "additionalProperties": False,
                  "oneOf": [{"required": ["points", "permutations"]}, {"required": ["cosets"]}],
                  "properties": {
                      "kind": True, "name": True,
                      "group": {"$ref": "#/$defs/group"},
                      "points": {"oneOf": [{"type": "integer", "minimum": 1},
                                           {"type": "array", "minItems": 1, "items": _LABEL}]},
                      "permutations": _INT_MATRIX,
                      "cosets": {"type": "array", "minItems": 1, "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
                  }}},
        {"if": {"properties": {"kind": {"const": "hopf"}}},
         "then": {"required": ["hopf"], "additionalProperties": False,
                  "properties": {
                      "kind": True, "name": True,
                      "hopf": {"oneOf": [
                          {"type": "object", "required": ["named", "group"], "additionalProperties": False,
                           "properties": {"named": {"enum": ["group_algebra", "function_algebra"]},
                                          "group": {"$ref": "#/$defs/group"}}},
                          {"type": "object", "required": ["block_dims", "comult", "counit", "antipode"], "additionalProperties": False,
                           "properties": {"block_dims": {"$ref": "#/$defs/block_dims"},
                                          "basis": _nested(2, _COMPLEX),
                                          "comult": _nested(3, _COMPLEX),
                                          "counit": _nested(1, _COMPLEX),
                                          "antipode": _nested(2, _COMPLEX),
                                          "haar": _nested(1, _COMPLEX)}},
                      ]},
                      "action": {"type": "object", "required": ["algebra"], "additionalProperties": False,
                                 "oneOf": [{"required": ["action"]}, {"required": ["tensor"]}],
                                 "properties": {"algebra": {"$ref": "#/$defs/block_dims"},
                                                "action": {"$ref": "#/$defs/action"},
                                                "tensor": _nested(3, _COMPLEX)}},
                  }}},
        {"if": {"properties": {"kind": {"const": "graph"}}},
         "then": {"required": ["graph"], "additionalProperties": False,
                  "properties": {
                      "kind": True, "name": True,
                      "graph": {"oneOf": [
                          {"type": "string", "minLength": 1},
                          {"type": "object", "required": ["vertices", "edges"], "additionalProperties": False,
                           "properties": {"vertices": {"type": "array", "items": _LABEL},
                                          "edges": {"type": "array", "items": {"type": "array", "minItems": 3, "maxItems": 3,
                                                                               "items": _LABEL}}}},
                      ]},
                      "witness_radius": {"type": "integer", "minimum": 0},
                      "targets": {"type": "array", "items": {
                          "type": "object", "required": ["alpha", "beta", "n"], "additionalProperties": False,
                          "properties": {"alpha": {"$ref": "#/$defs/path"}, "beta": {"$ref": "#/$defs/path"},
                                         "n": {"type": "integer"}}}},
                  }}},
    ],
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def _pointer(parts) -> str:
    return "/" + "/".join(str(p) for p in parts) if parts else "/"


def validate(obj) -> None:
    """Raise ProblemFileError at the deepest offending field, if any."""
    errors = list(_VALIDATOR.iter_errors(obj))
    if not errors:
        return
    err = jsonschema.exceptions.best_match(errors)
    # descend into oneOf/anyOf alternatives to find the most specific location
    while err.context:
        err = jsonschema.exceptions.best_match(err.context)
    raise ProblemFileError(err.message, _pointer(err.absolute_path))


# --------------------------------------------------------------------------
# canonical form
# --------------------------------------------------------------------------


def _canon_complex(x) -> list:
    if isinstance(x, list):
        return [float(x[0]), float(x[1])]
    return [float(x), 0.0]


def _canon_nested(x, depth: int):
    if depth == 0:
        return _canon_complex(x)
    return [_canon_nested(y, depth - 1) for y in x]


def _canon_action(a: dict) -> dict:
    kind = a["type"]
    out = {"type": kind}
    if kind == "inner":
        out["unitaries"] = _canon_nested(a["unitaries"], 4)
    elif kind == "inner_generator":
        out["generator"] = _canon_nested(a["generator"], 3)
    elif kind in ("block_permutation", "permutation"):
        out["permutations"] = [[int(i) for i in p] for p in a["permutations"]]
        if "unitaries" in a:
            out["unitaries"] = _canon_nested(a["unitaries"], 4)
    elif kind == "maps":
        out["maps"] = _canon_nested(a["maps"], 3)
    elif kind == "direct_sum":
        out["summands"] = [{"algebra": [int(d) for d in s["algebra"]], "action": _canon_action(s["action"])}
                           for s in a["summands"]]
    return out


def _canon_group(g):
    if isinstance(g, str):
        return g.strip()
    key = "table" if "table" in g else "generators"
    out = {key: [[int(i) for i in row] for row in g[key]]}
    if g.get("name"):
        out["name"] = g["name"]
    return out


def _canon_path(p: dict) -> dict:
    return {"vertex": p["vertex"]} if "vertex" in p else {"edges": list(p["edges"])}


def canonicalize(obj: dict) -> dict:
    """Schema-valid input -> canonical dict (complex pairs, explicit types, no defaults dropped)."""
    validate(obj)
    kind = obj["kind"]
    out = {"kind": kind}
    if obj.get("name"):
        out["name"] = obj["name"]
    if kind == "action":
        out["algebra"] = [int(d) for d in obj["algebra"]]
        out["group"] = _canon_group(obj["group"])
        out["action"] = _canon_action(obj["action"])
        if "epsilon" in obj:
            out["epsilon"] = float(obj["epsilon"])
        if obj.get("checks"):
            c = obj["checks"]
            checks = {}
            if "quasi_basis" in c:
                checks["quasi_basis"] = [[_canon_nested(u, 3), _canon_nested(w, 3)] for u, w in c["quasi_basis"]]
            for key in ("witness_x", "rokhlin_family"):
                if key in c:
                    checks[key] = _canon_nested(c[key], 4)
            out["checks"] = checks
    elif kind == "gspace":
        out["group"] = _canon_group(obj["group"])
        if "cosets" in obj:
            out["cosets"] = [sorted(int(i) for i in h) for h in obj["cosets"]]
        else:
            pts = obj["points"]
            out["points"] = list(range(pts)) if isinstance(pts, int) else list(pts)
            out["permutations"] = [[int(i) for i in p] for p in obj["permutations"]]
    elif kind == "hopf":
        h = obj["hopf"]
        if "named" in h:
            out["hopf"] = {"named": h["named"], "group": _canon_group(h["group"])}
        else:
            hh = {"block_dims": [int(d) for d in h["block_dims"]]}
            for key, depth in (("basis", 2), ("comult", 3), ("counit", 1), ("antipode", 2), ("haar", 1)):
                if key in h:
                    hh[key] = _canon_nested(h[key], depth)
            out["hopf"] = hh
        if "action" in obj:
            a = obj["action"]
            act = {"algebra": [int(d) for d in a["algebra"]]}
            if "action" in a:
                act["action"] = _canon_action(a["action"])
            else:
                act["tensor"] = _canon_nested(a["tensor"], 3)
            out["action"] = act
    elif kind == "graph":
        g = obj["graph"]
        out["graph"] = g.strip() if isinstance(g, str) else {"vertices": list(g["vertices"]),
                                                              "edges": [list(e) for e in g["edges"]]}
        if "witness_radius" in obj:
            out["witness_radius"] = int(obj["witness_radius"])
        if "targets" in obj:
            out["targets"] = [{"alpha": _canon_path(t["alpha"]), "beta": _canon_path(t["beta"]), "n": int(t["n"])}
                              for t in obj["targets"]]
    return out


def serialize(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    data = obj.data if isinstance(obj, Problem) else obj
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


# --------------------------------------------------------------------------
# parsing
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Problem:
    kind: str
    data: dict  # canonical form

    @property
    def name(self) -> str:
        return self.data.get("name", "")


def parse(source) -> Problem:
    """Problem from JSON text, a dict, or a filesystem path."""
    if isinstance(source, FsPath):
        source = source.read_text()
    if isinstance(source, (str, bytes)):
        try:
            obj = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ProblemFileError(f"invalid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from None
    else:
        obj = source
    if not isinstance(obj, dict):
        raise ProblemFileError("top level must be a JSON object", "/")
    data = canonicalize(obj)
    return Problem(data["kind"], data)


def load(path) -> Problem:
    try:
        text = FsPath(path).read_text()
    except OSError as exc:
        raise ProblemFileError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text)


# --------------------------------------------------------------------------
# building objects
# --------------------------------------------------------------------------


def to_complex(data) -> np.ndarray:
    """Canonical nested [re, im] lists -> complex array."""
    arr = np.asarray(data, dtype=np.float64)
    return arr[..., 0] + 1j * arr[..., 1]


def from_complex(arr) -> list:
    arr = np.asarray(arr, dtype=np.complex128)
    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def build_group(desc, path: str = "/group") -> FiniteGroup:
    try:
        if isinstance(desc, str):
            return FiniteGroup.by_name(desc)
        if "table" in desc:
            return FiniteGroup(np.array(desc["table"]), name=desc.get("name", ""))
        gens = desc["generators"]
        if gens and len({len(p) for p in gens}) != 1:
            raise ProblemFileError("generators must all have the same degree", path + "/generators")
        return FiniteGroup.from_permutations(gens, name=desc.get("name", ""))
    except ProblemFileError:
        raise
    except SatlabError as exc:
        raise ProblemFileError(str(exc), path) from None


def build_element(algebra: StarAlgebra, data, path: str) -> AlgebraElement:
    if len(data) != len(algebra.block_dims):
        raise ProblemFileError(f"expected {len(algebra.block_dims)} blocks, got {len(data)}", path)
    blocks = []
    for i, (d, b) in enumerate(zip(algebra.block_dims, data)):
        if len(b) != d or any(len(row) != d for row in b):
            raise ProblemFileError(f"block must be {d}x{d}", f"{path}/{i}")
        blocks.append(to_complex(b).reshape(d, d))
    return algebra.element(blocks)


def _elements(algebra, data, path, count=None) -> list:
    if count is not None and len(data) != count:
        raise ProblemFileError(f"expected {count} entries (one per group element), got {len(data)}", path)
    return [build_element(algebra, x, f"{path}/{i}") for i, x in enumerate(data)]


def _check_cyclic(group: FiniteGroup, path: str):
    # element k must be g^k for the generator g = 1
    n = group.order
    ok = n == 1 or all(group.power(1, k) == k % n for k in range(n + 1))
    if not ok:
        raise ProblemFileError("inner_generator needs a cyclic group whose element k is the k-th power of element 1", path)


def build_action_desc(algebra: StarAlgebra, group: FiniteGroup, desc: dict, path: str) -> GroupAction:
    kind = desc["type"]
    try:
        if kind == "inner":
            us = _elements(algebra, desc["unitaries"], path + "/unitaries", group.order)
            return make_inner_action(algebra, group, us)
        if kind == "inner_generator":
            _check_cyclic(group, path + "/type")
            w = build_element(algebra, desc["generator"], path + "/generator")
            return make_inner_action(algebra, group, cyclic_powers(w, group.order))
        if kind == "block_permutation":
            us = None
            if "unitaries" in desc:
                us = _elements(algebra, desc["unitaries"], path + "/unitaries", group.order)
            return make_block_permutation_action(algebra, group, desc["permutations"], us)
        if kind == "permutation":
            return make_permutation_action(algebra, group, desc["permutations"])
        if kind == "maps":
            return GroupAction(group, algebra, to_complex(desc["maps"]))
        if kind == "direct_sum":
            dims = tuple(d for s in desc["summands"] for d in s["algebra"])
            if dims != algebra.block_dims:
                raise ProblemFileError(f"summand algebras {list(dims)} do not concatenate to {list(algebra.block_dims)}",
                                       path + "/summands")
            parts = [build_action_desc(StarAlgebra(tuple(s["algebra"])), group, s["action"], f"{path}/summands/{i}/action")
                     for i, s in enumerate(desc["summands"])]
            out = parts[0]
            for p in parts[1:]:
                out = direct_sum_action(out, p)
            return out
    except ProblemFileError:
        raise
    except SatlabError as exc:
        raise type(exc)(f"{path}: {exc}") from exc
    raise ProblemFileError(f"unknown action type {kind!r}", path + "/type")  # pragma: no cover


@dataclass
class ActionProblem:
    action: GroupAction
    epsilon: float | None
    quasi_basis: list | None
    witness_x: list | None
    rokhlin_family: list | None


def build_action(problem: Problem) -> ActionProblem:
    d = problem.data
    algebra = StarAlgebra(tuple(d["algebra"]))
    group = build_group(d["group"])
    action = build_action_desc(algebra, group, d["action"], "/action")
    checks = d.get("checks", {})
    qb = None
    if "quasi_basis" in checks:
        qb = [(build_element(algebra, u, f"/checks/quasi_basis/{i}/0"), build_element(algebra, w, f"/checks/quasi_basis/{i}/1"))
              for i, (u, w) in enumerate(checks["quasi_basis"])]
    xs = _elements(algebra, checks["witness_x"], "/checks/witness_x") if "witness_x" in checks else None
    fam = None
    if "rokhlin_family" in checks:
        fam = _elements(algebra, checks["rokhlin_family"], "/checks/rokhlin_family", group.order)
    return ActionProblem(action, d.get("epsilon"), qb, xs, fam)


def build_gspace(problem: Problem) -> FiniteGSpace:
    d = problem.data
    group = build_group(d["group"])
    if "cosets" in d:
        pieces = []
        for i, gens in enumerate(d["cosets"]):
            bad = [g for g in gens if g >= group.order]
            if bad:
                raise ProblemFileError(f"group has no element {bad[0]}", f"/cosets/{i}")
            pieces.append(coset_space(group, group.closure(set(gens) | {group.identity})))
        return disjoint_union(pieces)
    points = d["points"]
    if len(set(map(repr, points))) != len(points):
        raise ProblemFileError("duplicate point labels", "/points")
    perms = d["permutations"]
    if len(perms) != group.order:
        raise ProblemFileError(f"expected {group.order} permutations (one per group element), got {len(perms)}", "/permutations")
    for g, p in enumerate(perms):
        if sorted(p) != list(range(len(points))):
            raise ProblemFileError(f"not a permutation of the {len(points)} point indices", f"/permutations/{g}")
    try:
        return FiniteGSpace(tuple(points), group, perms)
    except SatlabError as exc:
        raise type(exc)(f"/permutations: {exc}") from exc


@dataclass
class HopfProblem:
    hopf: HopfAlgebra
    action: HopfAction | None


def build_hopf(problem: Problem) -> HopfProblem:
    d = problem.data
    h = d["hopf"]
    if "named" in h:
        group = build_group(h["group"], "/hopf/group")
        hopf = group_hopf(group) if h["named"] == "group_algebra" else dual_function_hopf(group)
    else:
        dims = tuple(h["block_dims"])
        n = sum(k * k for k in dims)
        basis = to_complex(h["basis"]) if "basis" in h else np.eye(n)
        try:
            hopf = hopf_from_tensors(
                dims, basis, to_complex(h["comult"]), to_complex(h["counit"]), to_complex(h["antipode"]),
                to_complex(h["haar"]) if "haar" in h else None, name=d.get("name", ""),
            )
        except SatlabError as exc:
            raise type(exc)(f"/hopf: {exc}") from exc
    action = None
    if "action" in d:
        a = d["action"]
        algebra = StarAlgebra(tuple(a["algebra"]))
        if "action" in a:
            group = getattr(hopf, "group", None)
            if group is None or h.get("named") != "group_algebra":
                raise ProblemFileError("a group action can only be attached to a named group_algebra", "/action/action")
            action = hopf_action_from_group_action(build_action_desc(algebra, group, a["action"], "/action/action"))
        else:
            try:
                action = HopfAction(hopf, algebra, to_complex(a["tensor"]))
            except SatlabError as exc:
                raise type(exc)(f"/action/tensor: {exc}") from exc
    return HopfProblem(hopf, action)


def named_graph(name: str, path: str = "/graph") -> Graph:
    key, _, arg = name.partition(":")
    try:
        if key == "two_loop_vertex" and not arg:
            return two_loop_vertex()
        if key == "graph_Z":
            return graph_Z(int(arg))
        if key == "cycle":
            return cycle_graph(int(arg))
        if key == "binary_tree_loops":
            return binary_tree_with_loops(int(arg))
    except ValueError:
        pass
    raise ProblemFileError(
        f"unknown graph {name!r} (known: two_loop_vertex, graph_Z:<radius>, cycle:<n>, binary_tree_loops:<depth>)", path
    )


@dataclass
class GraphProblem:
    graph: Graph
    witness_graph: Graph
    targets: list  # (alpha, beta, n)


def build_path(g: Graph, desc: dict, path: str) -> Path:
    try:
        if "vertex" in desc:
            return make_path(g, (), vertex=desc["vertex"])
        return make_path(g, desc["edges"])
    except SatlabError as exc:
        raise ProblemFileError(str(exc), path) from None


def build_graph(problem: Problem) -> GraphProblem:
    d = problem.data
    desc = d["graph"]
    if isinstance(desc, str):
        g = named_graph(desc)
    else:
        verts = desc["vertices"]
        if len(set(map(repr, verts))) != len(verts):
            raise ProblemFileError("duplicate vertex labels", "/graph/vertices")
        known = set(verts)
        ids = set()
        for i, (eid, s, r) in enumerate(desc["edges"]):
            for j, v in ((1, s), (2, r)):
                if v not in known:
                    raise ProblemFileError(f"unknown vertex {v!r}", f"/graph/edges/{i}/{j}")
            if eid in ids:
                raise ProblemFileError(f"duplicate edge id {eid!r}", f"/graph/edges/{i}/0")
            ids.add(eid)
        g = Graph(tuple(verts), tuple(tuple(e) for e in desc["edges"]), name=d.get("name", ""))
    wg = g
    if "witness_radius" in d:
        if not (isinstance(desc, str) and desc.startswith("graph_Z:")):
            raise ProblemFileError("witness_radius only applies to graph_Z:<radius>", "/witness_radius")
        if d["witness_radius"] < g.window_radius:
            raise ProblemFileError("witness_radius must be at least the window radius", "/witness_radius")
        wg = graph_Z(d["witness_radius"])
    targets = []
    for i, t in enumerate(d.get("targets", [])):
        alpha = build_path(g, t["alpha"], f"/targets/{i}/alpha")
        beta = build_path(g, t["beta"], f"/targets/{i}/beta")
        targets.append((alpha, beta, t["n"]))
    return GraphProblem(g, wg, targets)
