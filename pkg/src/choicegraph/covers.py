"""Covers, dominating sets and matchings: checkers, greedy constructors, enumerators.

Constructors are the finite, successor-stage-only versions of the
well-ordering procedures: every choice is "the least element in label order",
so outputs are deterministic. Edge order is lexicographic on sorted endpoint
pairs, which is exactly ``Graph.edges``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from enum import Enum

from .graph import Graph, build_graph, components, edge_key


class WitnessKind(str, Enum):
    VERTEX_COVER = "vertex_cover"
    DOMINATING_SET = "dominating_set"
    INDEPENDENT_SET = "independent_set"
    MATCHING = "matching"
    EDGE_COVER = "edge_cover"


EDGE_KINDS = {WitnessKind.MATCHING, WitnessKind.EDGE_COVER}


class WitnessError(ValueError):
    pass


@dataclass(frozen=True)
class WitnessSet:
    kind: WitnessKind
    members: frozenset

    def __init__(self, kind, members: Iterable):
        kind = WitnessKind(kind)
        object.__setattr__(self, "kind", kind)
        if kind in EDGE_KINDS:
            object.__setattr__(self, "members", frozenset(edge_key(*e) for e in members))
        else:
            object.__setattr__(self, "members", frozenset(str(v) for v in members))

    def sorted(self) -> list:
        return sorted(self.members)

    def to_json_dict(self) -> dict:
        return {"kind": self.kind.value, "members": [list(m) if isinstance(m, tuple) else m for m in self.sorted()]}


# -- predicates ----------------------------------------------------------------


def _is_vertex_cover(g: Graph, s: frozenset) -> bool:
    return all(u in s or v in s for u, v in g.edges)


def _is_dominating(g: Graph, s: frozenset) -> bool:
    return all(v in s or not g.adjacency[v].isdisjoint(s) for v in g.vertices)


def _is_independent(g: Graph, s: frozenset) -> bool:
    return not any(u in s and v in s for u, v in g.edges)


def _is_matching(g: Graph, s: frozenset) -> bool:
    seen: set[str] = set()
    for u, v in s:
        if u in seen or v in seen:
            return False
        seen.update((u, v))
    return True


def _is_edge_cover(g: Graph, s: frozenset) -> bool:
    covered = {x for e in s for x in e}
    return covered.issuperset(g.vertices)


_PREDICATES = {
    WitnessKind.VERTEX_COVER: _is_vertex_cover,
    WitnessKind.DOMINATING_SET: _is_dominating,
    WitnessKind.INDEPENDENT_SET: _is_independent,
    WitnessKind.MATCHING: _is_matching,
    WitnessKind.EDGE_COVER: _is_edge_cover,
}

# upward-closed kinds are checked for minimality, downward-closed ones for maximality
_UPWARD = {WitnessKind.VERTEX_COVER, WitnessKind.DOMINATING_SET, WitnessKind.EDGE_COVER}


def _validate(g: Graph, w: WitnessSet) -> None:
    if w.kind in EDGE_KINDS:
        edges = set(g.edges)
        bad = [e for e in w.members if e not in edges]
    else:
        bad = [v for v in w.members if v not in g]
    if bad:
        raise WitnessError(f"{w.kind.value} witness has members outside the graph: {sorted(bad)[:3]}")


def check(g: Graph, w: WitnessSet, minimal_or_maximal: bool = False) -> bool:
    """Validity of ``w`` for its kind, optionally with inclusion-minimality/maximality.

    All five predicates are monotone, so single-element removals (for covers and
    dominating sets) or additions (for independent sets and matchings) decide
    minimality/maximality.
    """
    _validate(g, w)
    ok = _PREDICATES[w.kind]
    s = w.members
    if not ok(g, s):
        return False
    if not minimal_or_maximal:
        return True
    if w.kind is WitnessKind.EDGE_COVER:
        # an edge is redundant iff both endpoints are covered twice
        count: dict[str, int] = {}
        for u, v in s:
            count[u] = count.get(u, 0) + 1
            count[v] = count.get(v, 0) + 1
        return not any(count[u] > 1 and count[v] > 1 for u, v in s)
    if w.kind in _UPWARD:
        return not any(ok(g, s - {x}) for x in s)
    universe = g.edges if w.kind in EDGE_KINDS else g.vertices
    return not any(ok(g, s | {x}) for x in universe if x not in s)


# -- constructors ----------------------------------------------------------------


def minimal_vertex_cover(g: Graph) -> WitnessSet:
    """Start from all vertices; drop the least removable vertex until none is."""
    cover = set(g.vertices)
    while True:
        for v in sorted(cover):
            if all(w in cover for w in g.adjacency[v]):
                cover.discard(v)
                break
        else:
            return WitnessSet(WitnessKind.VERTEX_COVER, cover)


def minimal_dominating_set(g: Graph) -> WitnessSet:
    """Complement of :func:`minimal_vertex_cover` (a maximal independent set).

    Isolated vertices are placed in the set up front; a minimal vertex cover
    never contains them, so the complement keeps them either way.
    """
    isolated = {v for v in g.vertices if not g.adjacency[v]}
    cover = minimal_vertex_cover(g).members
    return WitnessSet(WitnessKind.DOMINATING_SET, isolated | (set(g.vertices) - cover))


def maximal_matching(g: Graph) -> WitnessSet:
    matched: set[str] = set()
    chosen = []
    for u, v in g.edges:
        if u not in matched and v not in matched:
            chosen.append((u, v))
            matched.update((u, v))
    return WitnessSet(WitnessKind.MATCHING, chosen)


def minimal_edge_cover(g: Graph) -> WitnessSet:
    """Greedy maximal matching ``M``, least edge at each exposed vertex, then the needed part of ``M``."""
    isolated = [v for v in g.vertices if not g.adjacency[v]]
    if isolated:
        raise WitnessError(f"graph has isolated vertices {isolated[:3]}; no edge cover exists")
    matching = maximal_matching(g).members
    covered = {x for e in matching for x in e}
    exposed = [v for v in g.vertices if v not in covered]
    least = {w: min(edge_key(w, x) for x in g.adjacency[w]) for w in exposed}
    f = set(least.values())
    f_covered = {x for e in f for x in e}
    m1 = {e for e in matching if e[0] not in f_covered or e[1] not in f_covered}
    return WitnessSet(WitnessKind.EDGE_COVER, f | m1)


def star_structure_check(g: Graph, cover: WitnessSet) -> bool:
    """Each component of the cover's edge subgraph has at most one vertex of degree > 1."""
    if cover.kind is not WitnessKind.EDGE_COVER or not check(g, cover):
        raise WitnessError("star_structure_check needs a valid edge cover")
    sub = build_graph(g.vertices, cover.members)
    for comp in components(sub):
        if sum(1 for v in comp if len(sub.adjacency[v]) > 1) > 1:
            return False
    return True


# -- exhaustive enumeration ------------------------------------------------------
#
# Backtracking over vertices (edges) in ambient order with include/exclude
# branches. Each pruning rule only discards branches that cannot contain a
# witness, so the output is exactly the set of all inclusion-minimal (maximal)
# witnesses; tests confirm this against plain subset enumeration.


def _bit_index(items):
    return {x: i for i, x in enumerate(items)}


def _distances_from_set(g: Graph, sources: set) -> dict:
    dist = {v: 0 for v in sources}
    frontier = sorted(sources)
    while frontier:
        nxt = []
        for v in frontier:
            for w in g.adjacency[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def enumerate_minimal_dominating_sets(g: Graph) -> Iterator[WitnessSet]:
    n = len(g.vertices)
    idx = _bit_index(g.vertices)
    closed = [(1 << i) | sum(1 << idx[w] for w in g.adjacency[v]) for i, v in enumerate(g.vertices)]
    full = (1 << n) - 1

    def private_ok(chosen: int) -> bool:
        # every chosen vertex must still dominate some vertex no other chosen vertex does
        c = chosen
        while c:
            low = c & -c
            v = low.bit_length() - 1
            others = chosen ^ low
            nb = closed[v]
            has_private = False
            m = nb
            while m:
                lb = m & -m
                u = lb.bit_length() - 1
                if not closed[u] & others:
                    has_private = True
                    break
                m ^= lb
            if not has_private:
                return False
            c ^= low
        return True

    def rec(i: int, chosen: int, dominated: int) -> Iterator[int]:
        # vertex j < i not yet dominated needs a future dominator in closed[j] >= i
        future = full & ~((1 << i) - 1)
        for j in range(i):
            if not dominated >> j & 1 and not closed[j] & future:
                return
        if i == n:
            if dominated == full:
                yield chosen
            return
        with_i = chosen | 1 << i
        if private_ok(with_i):
            yield from rec(i + 1, with_i, dominated | closed[i])
        yield from rec(i + 1, chosen, dominated)

    for mask in rec(0, 0, 0):
        yield WitnessSet(WitnessKind.DOMINATING_SET, (g.vertices[i] for i in range(n) if mask >> i & 1))


def enumerate_maximal_matchings(g: Graph) -> Iterator[WitnessSet]:
    edges = g.edges
    m = len(edges)
    idx = _bit_index(g.vertices)
    ends = [(1 << idx[u]) | (1 << idx[v]) for u, v in edges]

    def rec(i: int, chosen: list[int], matched: int) -> Iterator[list[int]]:
        if i == m:
            # maximal: every edge touches a matched vertex
            if all(e & matched for e in ends):
                yield chosen
            return
        if not ends[i] & matched:
            chosen.append(i)
            yield from rec(i + 1, chosen, matched | ends[i])
            chosen.pop()
        yield from rec(i + 1, chosen, matched)

    for sel in rec(0, [], 0):
        yield WitnessSet(WitnessKind.MATCHING, (edges[i] for i in sel))


def enumerate_minimal_edge_covers(g: Graph, forced: Mapping | None = None) -> Iterator[WitnessSet]:
    """All inclusion-minimal edge covers, i.e. spanning forests of stars.

    ``forced`` maps edges to ``True`` (must be in the cover) or ``False``
    (must be absent); forced edges are decided first so a restricted search
    fails fast when the forced part cannot be completed.
    """
    forced = {edge_key(*e): bool(v) for e, v in (forced or {}).items()}
    unknown = set(forced) - set(g.edges)
    if unknown:
        raise WitnessError(f"forced edges not in graph: {sorted(unknown)[:3]}")
    # forced edges first, then the rest by distance from them, so that an
    # impossible restriction is refuted near where it is imposed
    near = _distances_from_set(g, {v for e in forced for v in e})
    far = len(g.vertices)
    order = sorted(g.edges, key=lambda e: (e not in forced, min(near.get(e[0], far), near.get(e[1], far))))
    m = len(order)
    n = len(g.vertices)
    idx = _bit_index(g.vertices)
    pairs = [(idx[u], idx[v]) for u, v in order]
    rule = [forced.get(e) for e in order]
    last_edge = [-1] * n
    for k, (a, b) in enumerate(pairs):
        last_edge[a] = k
        last_edge[b] = k
    if any(x < 0 for x in last_edge):
        return
    deg = [0] * n
    partner = [-1] * n  # other endpoint of the first cover edge at a vertex
    chosen: list[int] = []

    def rec(i: int) -> Iterator[list[int]]:
        if i == m:
            yield chosen
            return
        a, b = pairs[i]
        # every cover edge needs an endpoint of cover-degree 1 and degrees only
        # grow: reject a new edge joining two covered vertices, or one that
        # lifts a degree-1 vertex whose existing partner is already a hub
        if rule[i] is not False and not (deg[a] and deg[b]):
            if not (deg[a] == 1 and deg[partner[a]] > 1 or deg[b] == 1 and deg[partner[b]] > 1):
                for x, y in ((a, b), (b, a)):
                    deg[x] += 1
                    if deg[x] == 1:
                        partner[x] = y
                chosen.append(i)
                yield from rec(i + 1)
                chosen.pop()
                for x in (a, b):
                    if deg[x] == 1:
                        partner[x] = -1
                    deg[x] -= 1
        # leaving edge i out keeps both endpoints coverable
        if rule[i] is not True and (deg[a] or last_edge[a] > i) and (deg[b] or last_edge[b] > i):
            yield from rec(i + 1)

    for sel in rec(0):
        yield WitnessSet(WitnessKind.EDGE_COVER, (order[i] for i in sel))


def enumerate_minimal_vertex_covers(g: Graph) -> Iterator[WitnessSet]:
    """Complements of the maximal independent sets (= minimal dominating sets that are independent)."""
    for d in enumerate_maximal_independent_sets(g):
        yield WitnessSet(WitnessKind.VERTEX_COVER, set(g.vertices) - d.members)


def enumerate_maximal_independent_sets(g: Graph) -> Iterator[WitnessSet]:
    n = len(g.vertices)
    idx = _bit_index(g.vertices)
    adj = [sum(1 << idx[w] for w in g.adjacency[v]) for v in g.vertices]

    def rec(i: int, chosen: int, blocked: int) -> Iterator[int]:
        if i == n:
            # maximal: every vertex is chosen or has a chosen neighbor
            if all(chosen >> j & 1 or adj[j] & chosen for j in range(n)):
                yield chosen
            return
        if not blocked >> i & 1:
            yield from rec(i + 1, chosen | 1 << i, blocked | adj[i])
        yield from rec(i + 1, chosen, blocked)

    for mask in rec(0, 0, 0):
        yield WitnessSet(WitnessKind.INDEPENDENT_SET, (g.vertices[i] for i in range(n) if mask >> i & 1))


ENUMERATORS = {
    "minimal-dominating-sets": enumerate_minimal_dominating_sets,
    "maximal-matchings": enumerate_maximal_matchings,
    "minimal-edge-covers": enumerate_minimal_edge_covers,
    "minimal-vertex-covers": enumerate_minimal_vertex_covers,
    "maximal-independent-sets": enumerate_maximal_independent_sets,
}
