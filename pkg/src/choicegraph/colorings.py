"""Proper, irreducible and distinguishing colorings with exact solvers."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

from .automorphisms import DEFAULT_MAX_VERTICES, automorphisms, edge_permutation, preserves
from .graph import Graph, GraphError, edge_key, edge_label, is_independent_set, line_graph


class ColoringError(ValueError):
    pass


class UndefinedInvariantError(ValueError):
    """Raised when no coloring of the requested kind exists with any palette."""


@dataclass(frozen=True)
class Coloring:
    """Total map from vertices (``mode="vertex"``) or edges to colors ``0..k-1``."""

    mode: str
    mapping: Mapping = field(hash=False)
    palette_size: int = -1

    def __post_init__(self):
        if self.mode not in ("vertex", "edge"):
            raise ColoringError(f"mode must be 'vertex' or 'edge', not {self.mode!r}")
        if self.mode == "edge":
            object.__setattr__(self, "mapping", {edge_key(*e): c for e, c in self.mapping.items()})
        else:
            object.__setattr__(self, "mapping", dict(self.mapping))
        top = max(self.mapping.values(), default=-1) + 1
        if self.palette_size < 0:
            object.__setattr__(self, "palette_size", top)
        if any(not isinstance(c, int) or c < 0 or c >= self.palette_size for c in self.mapping.values()):
            raise ColoringError(f"colors must be integers in 0..{self.palette_size - 1}")

    def classes(self) -> dict[int, list]:
        out: dict[int, list] = {}
        for x, c in sorted(self.mapping.items()):
            out.setdefault(c, []).append(x)
        return out

    def used_colors(self) -> set[int]:
        return set(self.mapping.values())

    def to_json_dict(self) -> dict:
        if self.mode == "vertex":
            m = dict(sorted(self.mapping.items()))
        else:
            m = {edge_label(e): c for e, c in sorted(self.mapping.items())}
        return {"mode": self.mode, "palette_size": self.palette_size, "coloring": m}


def _require_total(g: Graph, f: Coloring) -> None:
    domain = g.vertices if f.mode == "vertex" else g.edges
    missing = [x for x in domain if x not in f.mapping]
    if missing:
        raise ColoringError(f"coloring is partial, missing {missing[:3]}")
    extra = set(f.mapping) - set(domain)
    if extra:
        raise ColoringError(f"coloring mentions non-members {sorted(extra)[:3]}")


def is_proper(g: Graph, f: Coloring) -> bool:
    _require_total(g, f)
    c = f.mapping
    if f.mode == "vertex":
        return all(c[u] != c[v] for u, v in g.edges)
    for v in g.vertices:
        seen = set()
        for w in g.adjacency[v]:
            col = c[edge_key(v, w)]
            if col in seen:
                return False
            seen.add(col)
    return True


# -- chromatic number / index ------------------------------------------------


def _search_order(nbrs: list[set[int]]) -> list[int]:
    n = len(nbrs)
    if not n:
        return []
    order = [max(range(n), key=lambda i: (len(nbrs[i]), -i))]
    placed = set(order)
    while len(order) < n:
        v = max(
            (i for i in range(n) if i not in placed),
            key=lambda i: (len(nbrs[i] & placed), len(nbrs[i]), -i),
        )
        order.append(v)
        placed.add(v)
    return order


def _greedy_clique(nbrs: list[set[int]], order: list[int]) -> int:
    best = 0
    for start in order:
        clique = [start]
        for v in order:
            if v != start and all(v in nbrs[u] for u in clique):
                clique.append(v)
        best = max(best, len(clique))
    return best


def _k_coloring(nbrs: list[set[int]], order: list[int], k: int) -> list[int] | None:
    n = len(nbrs)
    colors = [-1] * n

    def rec(pos: int, used: int) -> bool:
        if pos == n:
            return True
        v = order[pos]
        forbidden = {colors[u] for u in nbrs[v]}
        for c in range(min(k, used + 1)):
            if c not in forbidden:
                colors[v] = c
                if rec(pos + 1, max(used, c + 1)):
                    return True
        colors[v] = -1
        return False

    return colors if rec(0, 0) else None


def chromatic_number(g: Graph) -> tuple[int, Coloring]:
    """Least palette admitting a proper vertex coloring, with a witness.

    Iterative deepening on ``k`` from a greedy clique bound; each ``k`` is
    decided by backtracking with new colors introduced in order.
    """
    if not g.vertices:
        raise GraphError("chromatic number of the empty graph is undefined")
    index = {v: i for i, v in enumerate(g.vertices)}
    nbrs = [{index[w] for w in g.adjacency[v]} for v in g.vertices]
    order = _search_order(nbrs)
    k = max(1, _greedy_clique(nbrs, order))
    while True:
        colors = _k_coloring(nbrs, order, k)
        if colors is not None:
            return k, Coloring("vertex", dict(zip(g.vertices, colors)), k)
        k += 1


def chromatic_index(g: Graph) -> tuple[int, Coloring]:
    if not g.edges:
        raise GraphError("chromatic index of an edgeless graph is undefined")
    k, witness = chromatic_number(line_graph(g))
    back = {edge_label(e): e for e in g.edges}
    return k, Coloring("edge", {back[x]: c for x, c in witness.mapping.items()}, k)


# -- irreducible colorings ----------------------------------------------------


def is_irreducible(g: Graph, f: Coloring) -> bool:
    """Every two distinct used color classes span at least one edge."""
    if f.mode != "vertex":
        raise ColoringError("irreducibility is defined for vertex colorings")
    if not is_proper(g, f):
        raise ColoringError("irreducibility is only defined for proper colorings")
    classes = list(f.classes().values())
    for i, a in enumerate(classes):
        for b in classes[i + 1:]:
            if is_independent_set(g, a + b):
                return False
    return True


def greedy_coloring(g: Graph) -> Coloring:
    """First-fit in label order."""
    colors: dict[str, int] = {}
    for v in g.vertices:
        taken = {colors[w] for w in g.adjacency[v] if w in colors}
        colors[v] = next(c for c in range(len(g.vertices) + 1) if c not in taken)
    return Coloring("vertex", colors)


def irreducible_coloring(g: Graph) -> Coloring:
    """Greedy coloring, then merge the least mergeable pair of classes until none is left."""
    if not g.vertices:
        raise GraphError("empty graph")
    classes = [set(c) for _, c in sorted(greedy_coloring(g).classes().items())]
    merged = True
    while merged:
        merged = False
        for i in range(len(classes)):
            for j in range(i + 1, len(classes)):
                if is_independent_set(g, classes[i] | classes[j]):
                    classes[i] |= classes.pop(j)
                    merged = True
                    break
            if merged:
                break
    return Coloring("vertex", {v: c for c, cls in enumerate(classes) for v in cls}, len(classes))


# -- distinguishing colorings ---------------------------------------------------


def _distinguishing_labels(m: int, perms: list[tuple[int, ...]], k: int) -> list[int] | None:
    """A labelling of ``0..m-1`` with ``k`` colors broken by every permutation in ``perms``.

    Items are colored in index order; each permutation is checked once the
    last item it moves has a color, and the branch dies if it survived.
    Colors enter in order (first use of color ``c`` after color ``c-1``),
    which is harmless because renaming colors keeps a labelling distinguishing.
    """
    due: list[list[tuple[list[int], tuple[int, ...]]]] = [[] for _ in range(m)]
    for p in perms:
        moved = [i for i in range(m) if p[i] != i]
        due[max(moved)].append((moved, p))
    labels = [-1] * m

    def broken(entry) -> bool:
        moved, p = entry
        return any(labels[p[i]] != labels[i] for i in moved)

    def rec(j: int, used: int) -> bool:
        if j == m:
            return True
        for c in range(min(k, used + 1)):
            labels[j] = c
            if all(broken(e) for e in due[j]) and rec(j + 1, max(used, c + 1)):
                return True
        labels[j] = -1
        return False

    return labels if rec(0, 0) else None


def _least_distinguishing(m: int, perms: list[tuple[int, ...]]) -> tuple[int, list[int]]:
    for k in range(1, m + 1):
        labels = _distinguishing_labels(m, perms, k)
        if labels is not None:
            return k, labels
    raise AssertionError("all-distinct labelling always distinguishes")


def distinguishing_number(g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> tuple[int, Coloring]:
    if not g.vertices:
        raise GraphError("empty graph")
    index = {v: i for i, v in enumerate(g.vertices)}
    perms = [tuple(index[w] for w in phi.images) for phi in automorphisms(g, max_vertices)[1:]]
    k, labels = _least_distinguishing(len(g.vertices), perms)
    return k, Coloring("vertex", dict(zip(g.vertices, labels)), k)


def distinguishing_index(g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> tuple[int, Coloring]:
    """Least palette for an edge coloring preserved only by the identity.

    Raises :class:`UndefinedInvariantError` when a non-identity automorphism
    fixes every edge (a K2 component, or two isolated vertices): such an
    automorphism preserves every edge coloring.
    """
    if not g.edges:
        raise GraphError("distinguishing index of an edgeless graph is undefined")
    identity = tuple(range(len(g.edges)))
    perms = []
    for phi in automorphisms(g, max_vertices)[1:]:
        p = edge_permutation(g, phi)
        if p == identity:
            raise UndefinedInvariantError(
                "a non-identity automorphism fixes every edge, so no edge coloring is distinguishing"
            )
        perms.append(p)
    k, labels = _least_distinguishing(len(g.edges), sorted(set(perms)))
    return k, Coloring("edge", dict(zip(g.edges, labels)), k)


def is_distinguishing(g: Graph, f: Coloring, max_vertices: int = DEFAULT_MAX_VERTICES) -> bool:
    _require_total(g, f)
    return not any(preserves(g, phi, f) for phi in automorphisms(g, max_vertices)[1:])

