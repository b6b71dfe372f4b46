import numpy as np
import pytest

from satlab.errors import CapacityError, PreconditionError, StructuralError
from satlab.graph_gauge import (
    Combination,
    Graph,
    PathMonomial,
    backward_walk,
    binary_tree_with_loops,
    cartesian_product,
    cycle_graph,
    enumerate_targets,
    find_cycle,
    fixed_core_blocks,
    gauge_act,
    gauge_witness,
    graph_Z,
    involution,
    loops,
    make_path,
    monomial,
    paths_of_length,
    random_graph,
    reduce_product,
    replay,
    two_loop_vertex,
    validate_graph,
    vertex_path,
    witness_battery,
)


def test_cuntz_krieger_relations_two_loop():
    g = two_loop_vertex()
    v = vertex_path("v")
    e, f = make_path(g, ["e"]), make_path(g, ["f"])
    se, sf = monomial(e, v), monomial(f, v)
    pv = monomial(v, v)
    # s_e* s_e = p_v, s_e* s_f = 0
    assert reduce_product(involution(se), se, g) == pv
    assert reduce_product(involution(se), sf, g).is_zero
    # s_e s_e* is a projection
    q = reduce_product(se, involution(se), g)
    assert reduce_product(q, q, g) == q
    assert involution(involution(q)) == q


def test_gauge_degrees():
    g = two_loop_vertex()
    ef = make_path(g, ["e", "f"])
    x = monomial(ef, make_path(g, ["f"]))
    assert str(gauge_act(x)) == "z s[e.f] s[f]*"
    assert str(involution(gauge_act(x))) == "z^-1 s[f] s[e.f]*"


def test_paths_and_walks():
    g = two_loop_vertex()
    assert len(paths_of_length(g, 3)) == 8
    w = backward_walk(g, "v", 4)
    assert len(w) == 4 and w.range == "v"
    with pytest.raises(StructuralError):
        make_path(cycle_graph(3), ["c0", "c2"])


def test_fixed_core_blocks():
    g = two_loop_vertex()
    assert [fixed_core_blocks(g, n, "v") for n in range(6)] == [1, 2, 4, 8, 16, 32]
    z = graph_Z(12)
    assert all(fixed_core_blocks(z, n, v) == 1 for n in range(4) for v in range(-4, 5))


def test_witness_case_i_two_loop():
    g = two_loop_vertex()
    v = vertex_path("v")
    w = gauge_witness(g, v, v, 1)
    assert w.case == "i"
    assert str(w.a) == "s[e]*" and str(w.b) == "s[e]"
    assert replay(w, g)


def test_witness_case_ii_and_adjoint():
    g = cycle_graph(3)
    alpha = make_path(g, ["c0"])
    beta = make_path(g, ["c2", "c0"])
    w = gauge_witness(g, beta, alpha, -3)  # l = 3 - (1 - 2) ... through the adjoint
    assert w.adjoint and replay(w, g)
    w2 = gauge_witness(g, make_path(g, ["c0", "c1", "c2"]), vertex_path(0), 1)
    assert w2.case == "ii" and replay(w2, g)


def test_tampered_witness_fails_replay():
    g = two_loop_vertex()
    v = vertex_path("v")
    w = gauge_witness(g, v, v, 1)
    from dataclasses import replace

    bad = replace(w, b=monomial(make_path(g, ["f"]), v))
    assert not replay(bad, g)


def test_sinks_and_sources_rejected():
    g = Graph(("u", "w"), (("e", "u", "w"), ("l", "u", "u")))
    rep = validate_graph(g)
    assert rep.sinks == ("w",) and not rep.no_sinks
    u = vertex_path("u")
    with pytest.raises(PreconditionError, match="no sinks required"):
        gauge_witness(g, u, u, 1)
    src = Graph(("u", "w"), (("e", "u", "w"), ("l", "w", "w")))
    with pytest.raises(PreconditionError, match="no sources required"):
        gauge_witness(src, vertex_path("w"), vertex_path("w"), 1)


def test_window_exhaustion_names_radius():
    z = graph_Z(2)
    with pytest.raises(CapacityError, match="radius >= "):
        backward_walk(z, -1, 5)


@pytest.mark.parametrize("g", [two_loop_vertex(), cycle_graph(2), binary_tree_with_loops(2)])
def test_small_batteries(g):
    rep = witness_battery(g, 2, 2)
    assert rep.ok, rep.failures[:3]
    assert rep.case_counts["i"] and rep.case_counts["ii"] and rep.adjoint_count


def test_windowed_battery_on_Z():
    rep = witness_battery(graph_Z(3), 2, 2, witness_graph=graph_Z(10))
    assert rep.ok
    assert rep.targets == len(enumerate_targets(graph_Z(3), 2)) * 5


def test_random_graph_is_sink_and_source_free(rng):
    g = random_graph(6, 3, rng)
    rep = validate_graph(g)
    assert rep.no_sinks and rep.no_sources


def test_products_with_Z_have_no_loops():
    z = graph_Z(3)
    for e in (two_loop_vertex(), cycle_graph(3), binary_tree_with_loops(1)):
        p = cartesian_product(z, e)
        assert loops(p) == []
        assert find_cycle(p) is None
    assert find_cycle(cycle_graph(3)) is not None
    assert loops(two_loop_vertex()) == ["e", "f"]


def test_combination_arithmetic():
    g = two_loop_vertex()
    v = vertex_path("v")
    x = monomial(make_path(g, ["e"]), v)
    assert (x + x.scale(-1)).is_zero
    assert x + x == x.scale(2)
    assert monomial(make_path(g, ["e"]), make_path(cycle_graph(2), ["c0"])).is_zero
