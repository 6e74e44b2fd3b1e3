"""Reference corpora of small graphs for exhaustive checks."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations, permutations

from .graph import Graph, build_graph

LABELS = "abcdefghij"
RANDOM_ORDER = 6
RANDOM_COUNT = 200


def _canonical(n: int, edges: frozenset) -> tuple:
    best = None
    for p in permutations(range(n)):
        key = tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges))
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def _nonisomorphic(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    pairs = list(combinations(range(n), 2))
    seen = {}
    for mask in range(1 << len(pairs)):
        edges = frozenset(pairs[i] for i in range(len(pairs)) if mask >> i & 1)
        seen.setdefault(_canonical(n, edges), None)
    return tuple(sorted(seen, key=lambda e: (len(e), e)))


def all_graphs(max_order: int = 5) -> list[Graph]:
    """One graph per isomorphism class on 1..max_order vertices (52 graphs for max_order=5)."""
    out = []
    for n in range(1, max_order + 1):
        names = LABELS[:n]
        for edges in _nonisomorphic(n):
            out.append(build_graph(names, [(names[u], names[v]) for u, v in edges]))
    return out


def random_graphs(count: int = RANDOM_COUNT, order: int = RANDOM_ORDER, seed: int = 0, p: float = 0.5) -> list[Graph]:
    rng = random.Random(seed)
    names = LABELS[:order]
    pairs = list(combinations(names, 2))
    return [build_graph(names, [e for e in pairs if rng.random() < p]) for _ in range(count)]


def standard_corpus(seed: int = 0) -> list[Graph]:
    """All graphs up to isomorphism on at most 5 vertices, then 200 seeded random 6-vertex graphs."""
    return all_graphs(5) + random_graphs(seed=seed)
