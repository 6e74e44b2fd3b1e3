from itertools import product

import pytest
from hypothesis import assume, given, settings

from choicegraph.automorphisms import automorphisms, preserves
from choicegraph.colorings import (
    Coloring,
    ColoringError,
    UndefinedInvariantError,
    chromatic_index,
    chromatic_number,
    distinguishing_index,
    distinguishing_number,
    greedy_coloring,
    irreducible_coloring,
    is_distinguishing,
    is_irreducible,
    is_proper,
)
from choicegraph.gadgets import GadgetInstance, Kind, gen_gadget
from choicegraph.graph import GraphError, build_graph, complete_graph, max_degree, path_graph
from oracles import (
    brute_chromatic_index,
    brute_chromatic_number,
    brute_distinguishing_index,
    brute_distinguishing_number,
)
from strategies import graphs

K1 = build_graph("a")
K2 = build_graph("ab", ["ab"])
K3 = build_graph("abc", ["ab", "bc", "ca"])
P3 = path_graph("abc")
TWO = build_graph("ab")


def test_is_proper_examples():
    assert is_proper(K3, Coloring("vertex", {"a": 0, "b": 1, "c": 2}))
    assert not is_proper(K3, Coloring("vertex", {"a": 0, "b": 1, "c": 0}))
    assert not is_proper(P3, Coloring("edge", {("a", "b"): 0, ("b", "c"): 0}))


def test_partial_coloring_rejected():
    with pytest.raises(ColoringError):
        is_proper(K3, Coloring("vertex", {"a": 0}))


def test_coloring_validation():
    with pytest.raises(ColoringError):
        Coloring("face", {})
    with pytest.raises(ColoringError):
        Coloring("vertex", {"a": 3}, palette_size=2)
    assert Coloring("edge", {("b", "a"): 0}).mapping == {("a", "b"): 0}


def test_chromatic_examples():
    assert chromatic_number(K3)[0] == 3
    assert chromatic_number(gen_gadget(GadgetInstance(Kind.G1, [3, 2])))[0] == 4
    assert chromatic_number(K1)[0] == 1
    assert chromatic_number(TWO)[0] == 1


def test_chromatic_index_examples():
    assert chromatic_index(P3)[0] == 2
    assert chromatic_index(K3)[0] == 3
    with pytest.raises(GraphError):
        chromatic_index(TWO)


def test_h1_chromatic_index_is_max_degree():
    h1 = gen_gadget(GadgetInstance(Kind.H1, [3, 2]))
    k, witness = chromatic_index(h1)
    assert k == max_degree(h1) == 4 == brute_chromatic_index(h1)
    assert is_proper(h1, witness)


@given(graphs(max_vertices=6))
def test_chromatic_number_matches_oracle(g):
    k, witness = chromatic_number(g)
    assert k == brute_chromatic_number(g)
    assert is_proper(g, witness) and witness.palette_size == k


@given(graphs(max_vertices=6))
def test_chromatic_index_matches_oracle(g):
    assume(g.edges)
    k, witness = chromatic_index(g)
    assert k == brute_chromatic_index(g)
    assert is_proper(g, witness)


def test_irreducible_examples():
    assert is_irreducible(P3, Coloring("vertex", {"a": 0, "c": 0, "b": 1}))
    assert is_irreducible(K3, Coloring("vertex", {"a": 0, "b": 1, "c": 2}))
    assert not is_irreducible(TWO, Coloring("vertex", {"a": 0, "b": 1}))
    with pytest.raises(ColoringError):
        is_irreducible(K3, Coloring("vertex", {"a": 0, "b": 0, "c": 1}))


def test_irreducible_coloring_examples():
    assert irreducible_coloring(TWO).palette_size == 1
    assert irreducible_coloring(K3).palette_size == 3
    assert irreducible_coloring(P3).classes() == {0: ["a", "c"], 1: ["b"]}


@given(graphs())
def test_irreducible_coloring_properties(g):
    f = irreducible_coloring(g)
    assert is_proper(g, f) and is_irreducible(g, f)
    assert f.palette_size >= chromatic_number(g)[0]


def test_greedy_uses_label_order():
    assert greedy_coloring(P3).mapping == {"a": 0, "b": 1, "c": 0}


def test_distinguishing_number_examples():
    assert distinguishing_number(K1)[0] == 1
    assert distinguishing_number(P3)[0] == 2
    assert distinguishing_number(gen_gadget(GadgetInstance(Kind.H1_1, [2, 3])))[0] == 3


def test_distinguishing_index_examples():
    assert distinguishing_index(P3)[0] == 2
    assert distinguishing_index(gen_gadget(GadgetInstance(Kind.H1_1, [2, 3])))[0] == 3


def test_k2_distinguishing_index_is_undefined():
    # the swap fixes the only edge, so it preserves every edge coloring
    assert brute_distinguishing_index(K2) is None
    with pytest.raises(UndefinedInvariantError):
        distinguishing_index(K2)
    swap = {"a": "b", "b": "a"}
    assert preserves(K2, swap, {("a", "b"): 0}, mode="edge")


def test_distinguishing_index_edgeless():
    with pytest.raises(GraphError):
        distinguishing_index(TWO)


@given(graphs(max_vertices=6))
def test_distinguishing_number_matches_oracle(g):
    k, witness = distinguishing_number(g)
    assert k == brute_distinguishing_number(g)
    assert is_distinguishing(g, witness)
    assert not any(preserves(g, phi, witness) for phi in automorphisms(g)[1:])


@given(graphs(max_vertices=6))
def test_distinguishing_index_matches_oracle(g):
    assume(g.edges)
    want = brute_distinguishing_index(g)
    if want is None:
        with pytest.raises(UndefinedInvariantError):
            distinguishing_index(g)
        return
    k, witness = distinguishing_index(g)
    assert k == want
    assert is_distinguishing(g, witness)


def _unpruned_distinguishing(g, k) -> bool:
    auts = automorphisms(g)[1:]
    for cs in product(range(k), repeat=len(g.vertices)):
        c = dict(zip(g.vertices, cs))
        if not any(preserves(g, phi, c) for phi in auts):
            return True
    return False


@settings(max_examples=25)
@given(graphs(min_vertices=7, max_vertices=8))
def test_pruned_search_agrees_with_unpruned_search(g):
    k, _ = distinguishing_number(g)
    assume(k <= 4)
    assert _unpruned_distinguishing(g, k)
    assert k == 1 or not _unpruned_distinguishing(g, k - 1)


def test_complete_graph_distinguishing_number():
    assert distinguishing_number(complete_graph(5))[0] == 5


def test_proper_colorings_meet_g1_blocks_once():
    for sizes in ([3, 2], [2, 2, 2], [1, 3, 2]):
        spec = GadgetInstance(Kind.G1, sizes)
        g = gen_gadget(spec)
        for f in (chromatic_number(g)[1], greedy_coloring(g), irreducible_coloring(g)):
            for c, members in f.classes().items():
                for block in spec.family().values():
                    assert len(set(members) & set(block)) <= 1
