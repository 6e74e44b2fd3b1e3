from math import factorial, prod

import pytest
from hypothesis import given

from choicegraph.automorphisms import (
    AutomorphismLimitError,
    Permutation,
    PermutationError,
    automorphism_count,
    automorphisms,
    edge_permutation,
    fixed_vertices,
    is_automorphism,
    orbit,
    orbits,
    preserves,
)
from choicegraph.claims import h1_1_instances
from choicegraph.colorings import Coloring
from choicegraph.gadgets import GadgetInstance, Kind, gen_gadget
from choicegraph.graph import GraphError, build_graph, complete_graph, path_graph
from oracles import brute_automorphisms
from strategies import graphs

K3 = build_graph("abc", ["ab", "bc", "ca"])
P3 = path_graph("abc")
SWAP = {"a": "c", "b": "b", "c": "a"}


def test_k3_has_six():
    auts = automorphisms(K3)
    assert len(auts) == 6 and auts[0].is_identity()


def test_p3_has_two():
    assert [p.images for p in automorphisms(P3)] == [("a", "b", "c"), ("c", "b", "a")]


def test_h1_1_small_group_order():
    assert automorphism_count(gen_gadget(GadgetInstance(Kind.H1_1, [2, 3]))) == 12


@given(graphs(max_vertices=6))
def test_matches_brute_force(g):
    ours = {p.images for p in automorphisms(g)}
    theirs = {tuple(m[v] for v in g.vertices) for m in brute_automorphisms(g)}
    assert ours == theirs


@given(graphs(max_vertices=7))
def test_output_order_is_lexicographic_identity_first(g):
    auts = automorphisms(g)
    assert auts[0].is_identity()
    assert [p.images for p in auts] == sorted(p.images for p in auts)


@given(graphs(max_vertices=6))
def test_group_closure(g):
    auts = automorphisms(g)
    images = {p.images for p in auts}
    for p in auts:
        assert p.inverse().images in images
        for q in auts:
            assert p.compose(q).images in images


def test_size_guard():
    with pytest.raises(AutomorphismLimitError):
        automorphisms(complete_graph(5), max_vertices=4)
    assert automorphism_count(complete_graph(5), max_vertices=5) == 120


def test_orbit_examples():
    assert orbit(K3, "a") == {"a", "b", "c"}
    h = gen_gadget(GadgetInstance(Kind.H1_1, [2, 3]))
    assert orbit(h, "A1_0") == {"A1_0", "A1_1", "A1_2"}
    assert orbit(P3, "b") == {"b"}
    with pytest.raises(GraphError):
        orbit(P3, "z")


@given(graphs(max_vertices=7))
def test_orbits_partition(g):
    orbs = orbits(g)
    flat = [v for o in orbs for v in o]
    assert sorted(flat) == list(g.vertices)
    for o in orbs:
        for v in o:
            assert orbit(g, v) == set(o)


def test_fixed_examples():
    h = gen_gadget(GadgetInstance(Kind.H1_1, [2, 2]))
    assert {"t''", "t'", "t0", "t1"} <= fixed_vertices(h)
    assert fixed_vertices(K3) == set()
    assert fixed_vertices(build_graph("a")) == {"a"}


def test_h1_1_sweep_structure():
    for spec in h1_1_instances(10):
        g = gen_gadget(spec)
        assert {"t'", "t''"} | {f"t{n}" for n in spec.blocks} <= fixed_vertices(g)
        for block in spec.family().values():
            assert orbit(g, block[0]) == set(block)
        assert automorphism_count(g) == prod(factorial(s) for s in spec.sizes)


def test_preserves_examples():
    ident = Permutation.identity(K3)
    assert preserves(K3, ident, Coloring("vertex", {"a": 0, "b": 1, "c": 0}))
    assert not preserves(P3, SWAP, Coloring("vertex", {"a": 1, "c": 2, "b": 1}))
    assert preserves(P3, SWAP, Coloring("edge", {("a", "b"): 0, ("b", "c"): 0}))
    assert preserves(P3, SWAP, {("b", "a"): 0, ("c", "b"): 0}, mode="edge")


def test_preserves_errors():
    with pytest.raises(ValueError):
        preserves(P3, SWAP, {"a": 0, "b": 1})
    with pytest.raises(PermutationError):
        preserves(P3, {"a": "b", "b": "a", "c": "c"}, {"a": 0, "b": 1, "c": 2})


def test_permutation_validation():
    with pytest.raises(PermutationError):
        Permutation(("a", "b"), ("a", "a"))
    with pytest.raises(PermutationError):
        Permutation.from_mapping(P3, {"a": "a"})
    assert not is_automorphism(P3, {"a": "b", "b": "a", "c": "c"})
    assert is_automorphism(P3, SWAP)


def test_edge_permutation_on_p3():
    phi = Permutation.from_mapping(P3, SWAP)
    assert edge_permutation(P3, phi) == (1, 0)
