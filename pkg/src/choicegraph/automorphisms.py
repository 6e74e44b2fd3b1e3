"""Automorphism groups of small graphs by exhaustive backtracking.

The search assigns vertices one at a time, only trying images in the same
refined invariant class (degree, BFS layer profile, then color refinement)
and rejecting a candidate as soon as adjacency to an already-mapped vertex
disagrees. Every automorphism is produced, so group-level questions (orbits,
fixed points, order) are answered from the search itself rather than from a
generating set.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property

from .graph import Edge, Graph, GraphError, edge_key

DEFAULT_MAX_VERTICES = 24


class AutomorphismLimitError(RuntimeError):
    pass


class PermutationError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    """A bijection on a graph's vertex set, stored as the image tuple in ambient order."""

    domain: tuple[str, ...]
    images: tuple[str, ...]

    def __post_init__(self):
        if len(self.domain) != len(self.images) or set(self.domain) != set(self.images):
            raise PermutationError("not a bijection on the given domain")

    @classmethod
    def from_mapping(cls, g: Graph, mapping: Mapping[str, str]) -> "Permutation":
        missing = [v for v in g.vertices if v not in mapping]
        if missing:
            raise PermutationError(f"mapping is not total, missing {missing[:3]}")
        return cls(g.vertices, tuple(mapping[v] for v in g.vertices))

    @classmethod
    def identity(cls, g: Graph) -> "Permutation":
        return cls(g.vertices, g.vertices)

    @cached_property
    def mapping(self) -> dict[str, str]:
        return dict(zip(self.domain, self.images))

    def __call__(self, v: str) -> str:
        return self.mapping[v]

    def is_identity(self) -> bool:
        return self.domain == self.images

    def compose(self, other: "Permutation") -> "Permutation":
        """``self`` after ``other``."""
        m, o = self.mapping, other.mapping
        return Permutation(self.domain, tuple(m[o[v]] for v in self.domain))

    def inverse(self) -> "Permutation":
        inv = {w: v for v, w in zip(self.domain, self.images)}
        return Permutation(self.domain, tuple(inv[v] for v in self.domain))

    def map_edge(self, e) -> Edge:
        m = self.mapping
        return edge_key(m[e[0]], m[e[1]])

    def is_automorphism(self, g: Graph) -> bool:
        if self.domain != g.vertices:
            return False
        m = self.mapping
        return all(g.has_edge(m[u], m[v]) for u, v in g.edges)


def is_automorphism(g: Graph, phi: Permutation | Mapping[str, str]) -> bool:
    if not isinstance(phi, Permutation):
        try:
            phi = Permutation.from_mapping(g, phi)
        except PermutationError:
            return False
    return phi.is_automorphism(g)


# -- search engine -----------------------------------------------------------


def _popcount(x: int) -> int:
    return bin(x).count("1")


class _Search:
    def __init__(self, g: Graph, max_vertices: int):
        n = len(g.vertices)
        if n > max_vertices:
            raise AutomorphismLimitError(
                f"{n} vertices exceeds the automorphism guard of {max_vertices}; pass a larger max_vertices"
            )
        self.g = g
        self.n = n
        index = {v: i for i, v in enumerate(g.vertices)}
        self.index = index
        self.nbrs = [sorted(index[w] for w in g.adjacency[v]) for v in g.vertices]
        self.adj = [sum(1 << j for j in nb) for nb in self.nbrs]
        self.cls = self._refined_classes()
        members: dict[int, list[int]] = {}
        for i, c in enumerate(self.cls):
            members.setdefault(c, []).append(i)
        self.members = members

    def _layer_profile(self, s: int) -> tuple[int, ...]:
        seen = 1 << s
        frontier = 1 << s
        profile = []
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= self.adj[low.bit_length() - 1]
                f ^= low
            nxt &= ~seen
            seen |= nxt
            profile.append(_popcount(nxt))
            frontier = nxt
        return tuple(profile)

    def _refined_classes(self) -> list[int]:
        keys = [(len(self.nbrs[i]), self._layer_profile(i)) for i in range(self.n)]
        cls = _relabel(keys)
        while True:
            keys = [(cls[i], tuple(sorted(cls[j] for j in self.nbrs[i]))) for i in range(self.n)]
            new = _relabel(keys)
            if len(set(new)) == len(set(cls)):
                return new
            cls = new

    def _order(self, first: list[int]) -> list[int]:
        order = list(first)
        placed = set(order)
        size = {c: len(m) for c, m in self.members.items()}
        while len(order) < self.n:
            best = max(
                (i for i in range(self.n) if i not in placed),
                key=lambda i: (sum(1 for j in self.nbrs[i] if j in placed), -size[self.cls[i]], -i),
            )
            order.append(best)
            placed.add(best)
        return order

    def extensions(self, pinned: Mapping[int, int] | None = None) -> Iterator[tuple[int, ...]]:
        """Yield every automorphism (as an image tuple) extending ``pinned``."""
        pinned = dict(pinned or {})
        for v, w in pinned.items():
            if self.cls[v] != self.cls[w]:
                return
        order = self._order(list(pinned))
        n = self.n
        image = [-1] * n
        adj, nbrs, cls, members = self.adj, self.nbrs, self.cls, self.members
        earlier = []
        pos = {v: k for k, v in enumerate(order)}
        for v in order:
            earlier.append([u for u in nbrs[v] if pos[u] < pos[v]])

        def rec(k: int, src: int, img: int, used: int):
            if k == n:
                yield tuple(image)
                return
            v = order[k]
            cands = [pinned[v]] if v in pinned else members[cls[v]]
            need = _popcount(adj[v] & src)
            for w in cands:
                if used >> w & 1:
                    continue
                aw = adj[w]
                if _popcount(aw & img) != need:
                    continue
                if any(not (aw >> image[u] & 1) for u in earlier[k]):
                    continue
                image[v] = w
                yield from rec(k + 1, src | 1 << v, img | 1 << w, used | 1 << w)
                image[v] = -1

        yield from rec(0, 0, 0, 0)


def _relabel(keys: list) -> list[int]:
    table = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [table[k] for k in keys]


def automorphisms(g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> list[Permutation]:
    """All automorphisms, identity first, ordered lexicographically by image tuple."""
    s = _Search(g, max_vertices)
    found = sorted(s.extensions())
    return [Permutation(g.vertices, tuple(g.vertices[i] for i in imgs)) for imgs in found]


def automorphism_count(g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> int:
    s = _Search(g, max_vertices)
    return sum(1 for _ in s.extensions())


def orbit(g: Graph, v: str, max_vertices: int = DEFAULT_MAX_VERTICES) -> set[str]:
    if v not in g:
        raise GraphError(f"unknown vertex {v!r}")
    s = _Search(g, max_vertices)
    i = s.index[v]
    return {
        g.vertices[w]
        for w in s.members[s.cls[i]]
        if next(s.extensions({i: w}), None) is not None
    }


def orbits(g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> list[list[str]]:
    """Orbit partition of the vertex set, each orbit sorted, orbits in order of least member."""
    s = _Search(g, max_vertices)
    out: list[list[str]] = []
    seen: set[int] = set()
    for i in range(s.n):
        if i in seen:
            continue
        orb = [w for w in s.members[s.cls[i]] if w == i or next(s.extensions({i: w}), None) is not None]
        seen.update(orb)
        out.append(sorted(g.vertices[w] for w in orb))
    return out


def fixed_vertices(g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> set[str]:
    return {o[0] for o in orbits(g, max_vertices) if len(o) == 1}


def edge_permutation(g: Graph, phi: Permutation) -> tuple[int, ...]:
    """Action of ``phi`` on edge indices of ``g.edges``."""
    where = {e: i for i, e in enumerate(g.edges)}
    return tuple(where[phi.map_edge(e)] for e in g.edges)


def preserves(g: Graph, phi: Permutation | Mapping[str, str], f, mode: str | None = None) -> bool:
    """Whether automorphism ``phi`` maps every vertex (edge) to one of the same color.

    ``f`` is a :class:`~choicegraph.colorings.Coloring` or a plain mapping; in
    the latter case ``mode`` defaults to ``"vertex"``. Edge keys may be given in
    either orientation.
    """
    if not isinstance(phi, Permutation):
        phi = Permutation.from_mapping(g, phi)
    if not phi.is_automorphism(g):
        raise PermutationError("preserves() needs an automorphism")
    mode = mode or getattr(f, "mode", "vertex")
    colors = getattr(f, "mapping", f)
    if mode == "vertex":
        missing = [v for v in g.vertices if v not in colors]
        if missing:
            raise ValueError(f"coloring is partial, missing {missing[:3]}")
        return all(colors[phi(v)] == colors[v] for v in g.vertices)
    if mode == "edge":
        colors = {edge_key(*e): c for e, c in colors.items()}
        missing = [e for e in g.edges if e not in colors]
        if missing:
            raise ValueError(f"edge coloring is partial, missing {missing[:3]}")
        return all(colors[phi.map_edge(e)] == colors[e] for e in g.edges)
    raise ValueError(f"mode must be 'vertex' or 'edge', not {mode!r}")
