import json

import pytest

from satlab.errors import ConstructionError, ProblemFileError
from satlab.problems import build_action, build_graph, build_gspace, build_hopf, load, parse, serialize


def all_fixtures(d):
    return sorted(p for p in d.glob("*.json") if p.name != "malformed.json")


def test_every_fixture_parses_and_round_trips(fixtures_dir):
    paths = all_fixtures(fixtures_dir)
    assert len(paths) >= 15
    for p in paths:
        prob = load(p)
        text = serialize(prob)
        again = serialize(parse(text))
        assert again == text, p.name
        builder = {"action": build_action, "gspace": build_gspace, "hopf": build_hopf, "graph": build_graph}[prob.kind]
        if p.name != "s4_regular_gspace.json":
            builder(prob)


def test_real_numbers_become_pairs():
    prob = parse({"kind": "action", "algebra": [1], "group": "Z1",
                  "action": {"type": "inner", "unitaries": [[[[1]]]]}})
    assert prob.data["action"]["unitaries"] == [[[[[1.0, 0.0]]]]]


def test_malformed_json(fixtures_dir):
    with pytest.raises(ProblemFileError, match="invalid JSON"):
        load(fixtures_dir / "malformed.json")


@pytest.mark.parametrize("obj,path", [
    ({"kind": "nope"}, "/kind"),
    ({"kind": "action", "algebra": [0], "group": "Z2", "action": {"type": "inner", "unitaries": []}}, "/algebra/0"),
    ({"kind": "action", "algebra": [1], "group": "Z2", "action": {"type": "inner", "unitaries": [[[[[1, 2, 3]]]]]}},
     "/action/unitaries/0/0/0/0"),
    ({"kind": "graph", "graph": {"vertices": ["v"], "edges": [["e", "v"]]}}, "/graph"),
    ({"kind": "gspace", "group": "Z2", "points": 2, "permutations": [[0, -1]]}, "/permutations/0/1"),
])
def test_schema_errors_carry_paths(obj, path):
    with pytest.raises(ProblemFileError) as exc:
        parse(obj)
    assert exc.value.path.startswith(path)


def test_unresolved_ids_are_located():
    prob = parse({"kind": "graph", "graph": {"vertices": ["v"], "edges": [["e", "v", "w"]]}})
    with pytest.raises(ProblemFileError, match="/graph/edges/0/2"):
        build_graph(prob)
    prob = parse({"kind": "graph", "graph": "two_loop_vertex",
                  "targets": [{"alpha": {"edges": ["g"]}, "beta": {"vertex": "v"}, "n": 0}]})
    with pytest.raises(ProblemFileError, match="/targets/0/alpha"):
        build_graph(prob)


def test_block_shape_mismatch_is_located():
    prob = parse({"kind": "action", "algebra": [2], "group": "Z2",
                  "action": {"type": "inner", "unitaries": [[[[1, 0], [0, 1]]], [[[1]]]]}})
    with pytest.raises(ProblemFileError, match="/action/unitaries/1/0"):
        build_action(prob)


def test_action_axiom_failure_names_pair():
    prob = parse({"kind": "action", "algebra": [1, 1, 1], "group": "Z2",
                  "action": {"type": "permutation", "permutations": [[0, 1, 2], [1, 2, 0]]}})
    with pytest.raises(ConstructionError, match=r"pair \(g, h\)"):
        build_action(prob)


def test_inner_generator_needs_cyclic_group():
    prob = parse({"kind": "action", "algebra": [1], "group": "V4",
                  "action": {"type": "inner_generator", "generator": [[[1]]]}})
    with pytest.raises(ProblemFileError, match="cyclic"):
        build_action(prob)


def test_serialize_is_sorted_and_stable():
    text = serialize(parse(json.dumps({"name": "x", "kind": "gspace", "group": "Z2", "points": 2,
                                       "permutations": [[0, 1], [1, 0]]})))
    assert text.index('"group"') < text.index('"kind"') < text.index('"name"')
    assert json.loads(text)["points"] == [0, 1]
