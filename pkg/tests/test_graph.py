import dataclasses
import json

import pytest
from hypothesis import given

from choicegraph.gadgets import GadgetInstance, Kind, gen_gadget
from choicegraph.graph import (
    GraphError,
    build_graph,
    complete_graph,
    degree,
    distance,
    distance_layers,
    dumps,
    edge_label,
    is_connected,
    is_independent_set,
    line_graph,
    load,
    loads,
    min_degree,
    path_graph,
    save,
    to_dot,
)
from strategies import graphs

K3 = build_graph("abc", ["ab", "bc", "ca"])
P3 = path_graph("abc")


def test_build_singleton():
    g = build_graph(["a"], [])
    assert g.vertices == ("a",) and g.edges == ()


def test_build_triangle():
    assert K3.edges == (("a", "b"), ("a", "c"), ("b", "c"))


def test_build_dedupes_edges_and_vertices():
    g = build_graph(["a", "b", "a"], [("a", "b"), ("b", "a"), ("a", "b")])
    assert g.vertices == ("a", "b") and len(g.edges) == 1


def test_build_rejects_loop():
    with pytest.raises(GraphError, match="loop"):
        build_graph("ab", [("a", "a")])


def test_build_rejects_missing_endpoint():
    with pytest.raises(GraphError, match="not a vertex"):
        build_graph("ab", [("a", "c")])


def test_graph_is_immutable():
    with pytest.raises(dataclasses.FrozenInstanceError):
        K3.vertices = ()


def test_vertices_sorted_by_label():
    g = build_graph(["t", "A0_1", "A0_0"], [])
    assert g.vertices == ("A0_0", "A0_1", "t")


@pytest.mark.parametrize("g,v,d", [(K3, "a", 2), (build_graph("a"), "a", 0), (P3, "b", 2)])
def test_degree(g, v, d):
    assert degree(g, v) == d


def test_degree_unknown_vertex():
    with pytest.raises(GraphError):
        degree(K3, "z")


def test_connectivity_examples():
    assert is_connected(K3)
    assert not is_connected(build_graph("ab"))
    assert is_connected(gen_gadget(GadgetInstance(Kind.G7, [2, 3])))


def test_connectivity_of_empty_graph_is_an_error():
    with pytest.raises(GraphError):
        is_connected(build_graph([]))


def test_distance_examples():
    assert distance(P3, "a", "c") == 2
    assert distance(K3, "a", "a") == 0
    g7 = gen_gadget(GadgetInstance(Kind.G7, [2, 3]))
    assert distance(g7, "A0_0", "t") == 2
    assert distance(build_graph("ab"), "a", "b") is None


def test_distance_unknown_vertex():
    with pytest.raises(GraphError):
        distance(K3, "a", "q")


def test_distance_layers_of_spine():
    g = gen_gadget(GadgetInstance(Kind.H1, [1, 1]))
    assert distance_layers(g, "t0") == [["t0"], ["A0_0", "t1"], ["A1_0"]]


def test_independent_set_examples():
    assert not is_independent_set(K3, {"a", "b"})
    assert is_independent_set(P3, {"a", "c"})
    assert is_independent_set(K3, set())
    with pytest.raises(GraphError):
        is_independent_set(K3, {"z"})


def test_line_graph_examples():
    assert len(line_graph(P3).vertices) == 2 and len(line_graph(P3).edges) == 1
    lk3 = line_graph(K3)
    assert len(lk3.vertices) == 3 and len(lk3.edges) == 3
    assert line_graph(build_graph("a")).vertices == ()


@given(graphs())
def test_handshake(g):
    assert sum(degree(g, v) for v in g.vertices) == 2 * len(g.edges)


@given(graphs())
def test_distance_is_a_metric_on_components(g):
    vs = g.vertices
    for u in vs:
        for v in vs:
            d = distance(g, u, v)
            assert d == distance(g, v, u)
            if d is not None:
                assert (d == 0) == (u == v)
            for w in vs:
                a, b = distance(g, u, w), distance(g, w, v)
                if a is not None and b is not None:
                    assert d is not None and d <= a + b


@given(graphs(max_vertices=6))
def test_independent_xor_dependent(g):
    from itertools import combinations

    for r in range(len(g.vertices) + 1):
        for s in combinations(g.vertices, r):
            dependent = any(g.has_edge(u, v) for u, v in combinations(s, 2))
            assert is_independent_set(g, s) != dependent


@given(graphs())
def test_line_graph_degrees(g):
    lg = line_graph(g)
    assert len(lg.vertices) == len(g.edges)
    for u, v in g.edges:
        assert degree(lg, edge_label((u, v))) == degree(g, u) + degree(g, v) - 2


@given(graphs())
def test_json_round_trip(g):
    assert loads(dumps(g)) == g
    doc = json.loads(dumps(g))
    assert doc["vertices"] == list(g.vertices)
    assert all(len(e) == 2 for e in doc["edges"])


def test_file_round_trip(tmp_path):
    p = tmp_path / "k3.json"
    save(K3, p)
    assert load(p) == K3


def test_loads_rejects_malformed_document():
    with pytest.raises(GraphError):
        loads('{"edges": []}')


def test_dot_is_stable_and_clustered():
    dot = to_dot(P3, {"left": ["a"]}, name="P3")
    assert dot == to_dot(P3, {"left": ["a"]}, name="P3")
    lines = dot.splitlines()
    assert lines[0] == 'graph "P3" {'
    assert "  subgraph cluster_0 {" in lines
    assert lines.index('  "b";') < lines.index('  "c";')
    assert '  "a" -- "b";' in lines


def test_min_degree_of_complete_graph():
    assert min_degree(complete_graph(4)) == 3
