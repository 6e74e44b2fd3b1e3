from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from choicegraph.gadgets import GadgetError, GadgetInstance, Kind, Role, block_clusters, gen_gadget, label_of
from choicegraph.graph import degree, induced_subgraph, is_bipartite, is_connected, min_degree, remove_edges
from oracles import gadget_counts

sizes_st = st.lists(st.integers(1, 4), min_size=1, max_size=4)


def test_g2_figure_instance():
    g = gen_gadget(GadgetInstance(Kind.G2, [3, 2, 3, 3]))
    assert (len(g.vertices), len(g.edges)) == (12, 34)
    assert gadget_counts("G2", [3, 2, 3, 3]) == (12, 34)


def test_g1_small():
    g = gen_gadget(GadgetInstance(Kind.G1, [3, 2]))
    assert (len(g.vertices), len(g.edges)) == (7, 10)


def test_g7_small():
    g = gen_gadget(GadgetInstance(Kind.G7, [2, 3]))
    assert (len(g.vertices), len(g.edges)) == (8, 7)
    assert sum(1 for e in g.edges if "t" in e) == 2


@pytest.mark.parametrize("kind", list(Kind))
def test_counts_match_family_formulas(kind):
    for sizes in product([1, 2, 3], repeat=3):
        if kind is Kind.H1_1 and sizes[-1] < 2:
            continue
        for k in (1, 2):
            g = gen_gadget(GadgetInstance(kind, sizes, k))
            assert (len(g.vertices), len(g.edges)) == gadget_counts(kind.value, sizes, k)


@pytest.mark.parametrize("kind", list(Kind))
@given(sizes=sizes_st)
def test_connected(kind, sizes):
    if kind is Kind.H1_1 and sizes[-1] < 2:
        sizes = sizes + [2]
    assert is_connected(gen_gadget(GadgetInstance(kind, sizes)))


@given(sizes=sizes_st, k=st.integers(1, 3))
def test_g6_g7_bipartite(sizes, k):
    assert is_bipartite(gen_gadget(GadgetInstance(Kind.G6, sizes, k)))
    assert is_bipartite(gen_gadget(GadgetInstance(Kind.G7, sizes)))


@given(sizes=sizes_st)
def test_g1_blocks_are_cliques_with_their_spine_vertex(sizes):
    spec = GadgetInstance(Kind.G1, sizes)
    g = gen_gadget(spec)
    for n, block in spec.family().items():
        members = block + [f"t{n}"]
        sub = induced_subgraph(g, members)
        assert len(sub.edges) == len(members) * (len(members) - 1) // 2
    assert min_degree(g) >= min(sizes)


@given(sizes=sizes_st)
def test_h1_is_g1_without_block_edges_and_a_tree(sizes):
    g1 = gen_gadget(GadgetInstance(Kind.G1, sizes))
    h1 = gen_gadget(GadgetInstance(Kind.H1, sizes))
    inner = [e for e in g1.edges if e[0].startswith("A") and e[1].startswith("A")]
    assert remove_edges(g1, inner) == h1
    assert len(h1.edges) == len(h1.vertices) - 1 and is_connected(h1)


@given(sizes=sizes_st)
def test_g2_1_is_g2_without_hub(sizes):
    g2 = gen_gadget(GadgetInstance(Kind.G2, sizes))
    g21 = gen_gadget(GadgetInstance(Kind.G2_1, sizes))
    assert induced_subgraph(g2, [v for v in g2.vertices if v != "t"]) == g21


@given(sizes=sizes_st)
def test_g5_structure(sizes):
    spec = GadgetInstance(Kind.G5, sizes)
    g = gen_gadget(spec)
    for i in spec.blocks:
        b0 = [v for v in spec.b_block(i) if v.endswith("^0")]
        b1 = [v for v in spec.b_block(i) if v.endswith("^1")]
        for side in (b0, b1):
            assert all(g.has_edge(u, v) for u in side for v in side if u != v)
        assert all(g.has_edge(u, v) for u in b0 for v in b1)
        assert all(g.has_edge("t", u) for u in b0)
        assert not any(g.has_edge("t", v) for v in b1)


def test_truncated_spine_end_has_lower_degree():
    g = gen_gadget(GadgetInstance(Kind.G1, [2, 2, 2]))
    assert degree(g, "t1") == 4 and degree(g, "t2") == 3


def test_g3_b_blocks_are_larger_by_k():
    spec = GadgetInstance(Kind.G3, [2, 1], k_offset=2)
    assert spec.b_block(0) == ["B0_0", "B0_1", "B0_2", "B0_3"]
    assert len(spec.b_block(1)) == 3


@pytest.mark.parametrize(
    "kind,sizes,k",
    [(Kind.G1, [], 1), (Kind.H1_1, [2, 1], 1), (Kind.G3, [2], 0), (Kind.G6, [1], 0), (Kind.G4, [0, 2], 1)],
)
def test_invalid_specs(kind, sizes, k):
    with pytest.raises(GadgetError):
        GadgetInstance(kind, sizes, k)


def test_h1_1_last_block_two_is_fine():
    gen_gadget(GadgetInstance(Kind.H1_1, [1, 2]))


def test_label_examples():
    assert label_of(GadgetInstance(Kind.G4, [2, 2]), Role.R, 1, 0) == "r1"
    assert label_of(GadgetInstance(Kind.H1_1, [2]), Role.TDOUBLEPRIME) == "t''"
    assert label_of(GadgetInstance(Kind.G3, [1, 1], 2), Role.B, 0, 2) == "B0_2"
    assert label_of(GadgetInstance(Kind.G2, [1, 1]), Role.A, 2, 0) == "A2_0"


def test_label_errors():
    with pytest.raises(GadgetError):
        label_of(GadgetInstance(Kind.G1, [2]), Role.R, 0, 0)
    with pytest.raises(GadgetError):
        label_of(GadgetInstance(Kind.G3, [1], 1), Role.B, 0, 2)
    with pytest.raises(GadgetError):
        label_of(GadgetInstance(Kind.G2, [1]), Role.A, 0, 0)


@pytest.mark.parametrize("kind", list(Kind))
def test_labels_name_real_vertices(kind):
    spec = GadgetInstance(kind, [2, 2], 1)
    g = gen_gadget(spec)
    for role in Role:
        try:
            label = label_of(spec, role, spec.blocks[-1], 0)
        except GadgetError:
            continue
        if not (kind is Kind.G5 and role is Role.A):
            assert label in g


def test_clusters_cover_blocks():
    spec = GadgetInstance(Kind.G3, [1, 2], 1)
    clusters = block_clusters(spec)
    assert clusters["block 0"] == ["A0_0", "B0_0", "B0_1"]


def test_generator_is_deterministic():
    spec = GadgetInstance(Kind.G5, [2, 3])
    assert gen_gadget(spec) == gen_gadget(GadgetInstance("G5", (2, 3)))
