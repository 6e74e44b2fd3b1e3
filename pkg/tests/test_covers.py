import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from choicegraph.corpus import all_graphs, standard_corpus
from choicegraph.covers import (
    WitnessError,
    WitnessKind,
    WitnessSet,
    check,
    enumerate_maximal_independent_sets,
    enumerate_maximal_matchings,
    enumerate_minimal_dominating_sets,
    enumerate_minimal_edge_covers,
    enumerate_minimal_vertex_covers,
    maximal_matching,
    minimal_dominating_set,
    minimal_edge_cover,
    minimal_vertex_cover,
    star_structure_check,
)
from choicegraph.gadgets import GadgetInstance, Kind, gen_gadget
from choicegraph.graph import build_graph, cycle_graph, path_graph
from oracles import (
    brute_maximal_independent_sets,
    brute_maximal_matchings,
    brute_minimal_dominating_sets,
    brute_minimal_edge_covers,
    brute_minimal_vertex_covers,
)
from strategies import graphs, without_isolated

K1 = build_graph("a")
K2 = build_graph("ab", ["ab"])
K3 = build_graph("abc", ["ab", "bc", "ca"])
P3 = path_graph("abc")
C4 = cycle_graph("abcd")
DOM, VC, MATCH, EC = WitnessKind.DOMINATING_SET, WitnessKind.VERTEX_COVER, WitnessKind.MATCHING, WitnessKind.EDGE_COVER


def members(w):
    return set(w.members)


def test_check_examples():
    assert check(P3, WitnessSet(DOM, {"b"}), True)
    assert not check(P3, WitnessSet(DOM, {"a", "b", "c"}), True)
    assert check(P3, WitnessSet(DOM, {"a", "b", "c"}), False)
    assert check(K3, WitnessSet(MATCH, [("a", "b")]), True)


def test_check_kinds():
    assert check(P3, WitnessSet(WitnessKind.INDEPENDENT_SET, {"a", "c"}), True)
    assert not check(P3, WitnessSet(WitnessKind.INDEPENDENT_SET, {"a"}), True)
    assert not check(P3, WitnessSet(MATCH, [("a", "b"), ("b", "c")]))
    assert not check(P3, WitnessSet(EC, [("a", "b")]))
    assert not check(P3, WitnessSet(VC, {"a"}))


def test_malformed_witness():
    with pytest.raises(WitnessError):
        check(P3, WitnessSet(DOM, {"z"}))
    with pytest.raises(WitnessError):
        check(P3, WitnessSet(MATCH, [("a", "c")]))
    with pytest.raises(ValueError):
        WitnessSet("clique", [])


def test_vertex_cover_examples():
    assert members(minimal_vertex_cover(P3)) == {"b"}
    assert members(minimal_vertex_cover(K3)) == {"b", "c"}
    assert members(minimal_vertex_cover(build_graph("ab"))) == set()


def test_dominating_examples():
    assert members(minimal_dominating_set(P3)) == {"a", "c"}
    assert members(minimal_dominating_set(K3)) == {"a"}
    assert members(minimal_dominating_set(K1)) == {"a"}


def test_matching_examples():
    assert members(maximal_matching(P3)) == {("a", "b")}
    assert members(maximal_matching(K3)) == {("a", "b")}
    assert members(maximal_matching(build_graph("ab"))) == set()


def test_edge_cover_examples():
    assert members(minimal_edge_cover(P3)) == {("a", "b"), ("b", "c")}
    assert len(minimal_edge_cover(K3).members) == 2
    assert members(minimal_edge_cover(K2)) == {("a", "b")}
    with pytest.raises(WitnessError):
        minimal_edge_cover(build_graph("abc", ["ab"]))


def test_star_structure_examples():
    assert star_structure_check(P3, minimal_edge_cover(P3))
    assert not star_structure_check(C4, WitnessSet(EC, C4.edges))
    assert star_structure_check(K2, WitnessSet(EC, [("a", "b")]))
    with pytest.raises(WitnessError):
        star_structure_check(P3, WitnessSet(EC, [("a", "b")]))


def test_constructors_on_corpus():
    for g in standard_corpus():
        for w in (minimal_vertex_cover(g), minimal_dominating_set(g), maximal_matching(g)):
            assert check(g, w, True)
        if without_isolated(g):
            ec = minimal_edge_cover(g)
            assert check(g, ec, True) and star_structure_check(g, ec)


@given(graphs())
def test_constructors_on_random_graphs(g):
    assert check(g, minimal_vertex_cover(g), True)
    assert check(g, minimal_dominating_set(g), True)
    assert check(g, maximal_matching(g), True)
    if without_isolated(g):
        assert check(g, minimal_edge_cover(g), True)


def _as_sets(it):
    return {frozenset(w.members) for w in it}


@given(graphs(max_vertices=7))
def test_enumerators_match_subset_search(g):
    assert _as_sets(enumerate_minimal_dominating_sets(g)) == brute_minimal_dominating_sets(g)
    assert _as_sets(enumerate_maximal_independent_sets(g)) == brute_maximal_independent_sets(g)
    assert _as_sets(enumerate_minimal_vertex_covers(g)) == brute_minimal_vertex_covers(g)


@given(graphs(max_vertices=7, max_edges=11))
def test_edge_enumerators_match_subset_search(g):
    assert _as_sets(enumerate_maximal_matchings(g)) == brute_maximal_matchings(g)
    assert _as_sets(enumerate_minimal_edge_covers(g)) == brute_minimal_edge_covers(g)


@settings(max_examples=40)
@given(graphs(max_vertices=7, max_edges=10), st.data())
def test_forced_edge_covers_are_a_filter(g, data):
    assume(g.edges)
    chosen = data.draw(st.lists(st.sampled_from(g.edges), unique=True, max_size=3))
    forced = {e: data.draw(st.booleans()) for e in chosen}
    want = {c for c in brute_minimal_edge_covers(g) if all((e in c) == v for e, v in forced.items())}
    assert _as_sets(enumerate_minimal_edge_covers(g, forced)) == want


def test_forced_edges_must_exist():
    with pytest.raises(WitnessError):
        list(enumerate_minimal_edge_covers(P3, {("a", "c"): True}))


def test_every_small_minimal_edge_cover_is_a_star_forest():
    for g in all_graphs(5):
        for c in enumerate_minimal_edge_covers(g):
            assert star_structure_check(g, c)


@given(graphs(max_vertices=7))
def test_complement_duality(g):
    mis = _as_sets(enumerate_maximal_independent_sets(g))
    mvc = _as_sets(enumerate_minimal_vertex_covers(g))
    full = frozenset(g.vertices)
    assert {full - s for s in mis} == mvc


@pytest.mark.parametrize("sizes", [[2, 2, 2], [3, 1, 2], [1, 1, 1, 1], [3, 3, 3], [2, 3]])
def test_g2_1_minimal_dominating_sets(sizes):
    spec = GadgetInstance(Kind.G2_1, sizes)
    g = gen_gadget(spec)
    fam = spec.family()
    blocks = list(spec.blocks)
    for d in enumerate_minimal_dominating_sets(g):
        for n in blocks:
            assert len(d.members & set(fam[n])) <= 1
        for n in blocks[1:-1]:
            near = set(fam[n - 1]) | set(fam[n]) | set(fam[n + 1])
            assert d.members & near
