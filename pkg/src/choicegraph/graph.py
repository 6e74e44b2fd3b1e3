"""Finite simple graphs.

Vertices are strings. Their lexicographic order is the ambient well-ordering
that every greedy procedure in the package consumes, so a graph always stores
its vertices sorted and its edges as sorted ``(u, v)`` pairs with ``u < v``.
"""

from __future__ import annotations

import json
from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from pathlib import Path

Edge = tuple[str, str]


class GraphError(ValueError):
    pass


def edge_key(u, v) -> Edge:
    """Normalize an unordered pair to the stored ``(min, max)`` form."""
    u, v = str(u), str(v)
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    adjacency: Mapping[str, frozenset[str]] = field(repr=False, compare=False)

    def __contains__(self, v) -> bool:
        return v in self.adjacency

    def __len__(self) -> int:
        return len(self.vertices)

    def neighbors(self, v: str) -> frozenset[str]:
        _require_vertex(self, v)
        return self.adjacency[v]

    def has_edge(self, u: str, v: str) -> bool:
        return v in self.adjacency.get(u, ())

    def __repr__(self) -> str:
        return f"Graph(|V|={len(self.vertices)}, |E|={len(self.edges)})"


def build_graph(vertices: Iterable, edges: Iterable = ()) -> Graph:
    """Validate and freeze a graph.

    Labels are coerced to ``str``. Duplicate vertices and duplicate edges
    (in either orientation) collapse. Loops and edges with an endpoint outside
    ``vertices`` raise :class:`GraphError`.
    """
    vs = sorted({str(v) for v in vertices})
    present = set(vs)
    es = set()
    for e in edges:
        try:
            u, v = e
        except (TypeError, ValueError):
            raise GraphError(f"edge {e!r} is not a pair") from None
        u, v = str(u), str(v)
        if u == v:
            raise GraphError(f"loop at {u!r}")
        for w in (u, v):
            if w not in present:
                raise GraphError(f"edge endpoint {w!r} is not a vertex")
        es.add(edge_key(u, v))
    adj: dict[str, set[str]] = {v: set() for v in vs}
    for u, v in es:
        adj[u].add(v)
        adj[v].add(u)
    return Graph(
        vertices=tuple(vs),
        edges=tuple(sorted(es)),
        adjacency={v: frozenset(n) for v, n in adj.items()},
    )


def _require_vertex(g: Graph, v) -> None:
    if v not in g.adjacency:
        raise GraphError(f"unknown vertex {v!r}")


def degree(g: Graph, v: str) -> int:
    _require_vertex(g, v)
    return len(g.adjacency[v])


def min_degree(g: Graph) -> int:
    if not g.vertices:
        raise GraphError("empty graph has no minimum degree")
    return min(len(n) for n in g.adjacency.values())


def max_degree(g: Graph) -> int:
    return max((len(n) for n in g.adjacency.values()), default=0)


def distances_from(g: Graph, source: str) -> dict[str, int]:
    """BFS distances from ``source`` to every reachable vertex."""
    _require_vertex(g, source)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def distance(g: Graph, u: str, v: str) -> int | None:
    """Shortest-path edge count, or ``None`` when ``v`` is unreachable."""
    _require_vertex(g, v)
    return distances_from(g, u).get(v)


def distance_layers(g: Graph, root: str) -> list[list[str]]:
    """Spheres around ``root``: entry ``n`` lists vertices at distance ``n``."""
    layers: list[list[str]] = []
    for v, d in sorted(distances_from(g, root).items(), key=lambda kv: (kv[1], kv[0])):
        if d == len(layers):
            layers.append([])
        layers[d].append(v)
    return layers


def is_connected(g: Graph) -> bool:
    if not g.vertices:
        raise GraphError("connectivity of the empty graph is undefined")
    return len(distances_from(g, g.vertices[0])) == len(g.vertices)


def components(g: Graph) -> list[list[str]]:
    seen: set[str] = set()
    out = []
    for v in g.vertices:
        if v not in seen:
            comp = sorted(distances_from(g, v))
            seen.update(comp)
            out.append(comp)
    return out


def is_independent_set(g: Graph, s: Iterable[str]) -> bool:
    members = set(s)
    for v in members:
        _require_vertex(g, v)
    return not any(u in members and v in members for u, v in g.edges)


def is_bipartite(g: Graph) -> bool:
    side: dict[str, int] = {}
    for start in g.vertices:
        if start in side:
            continue
        side[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w not in side:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    return False
    return True


def induced_subgraph(g: Graph, keep: Iterable[str]) -> Graph:
    ks = set(keep)
    for v in ks:
        _require_vertex(g, v)
    return build_graph(ks, [e for e in g.edges if e[0] in ks and e[1] in ks])


def remove_edges(g: Graph, drop: Iterable) -> Graph:
    gone = {edge_key(*e) for e in drop}
    return build_graph(g.vertices, [e for e in g.edges if e not in gone])


def edge_label(e: Edge) -> str:
    return f"{e[0]}~{e[1]}"


def line_graph(g: Graph) -> Graph:
    """Vertices are ``edge_label(e)`` for each edge; adjacency is sharing an endpoint."""
    labels = {e: edge_label(e) for e in g.edges}
    pairs = []
    for v in g.vertices:
        incident = [e for e in g.edges if v in e]
        for i, e in enumerate(incident):
            for f in incident[i + 1:]:
                pairs.append((labels[e], labels[f]))
    return build_graph(labels.values(), pairs)


def complete_graph(n: int, prefix: str = "v") -> Graph:
    vs = [f"{prefix}{i}" for i in range(n)]
    return build_graph(vs, [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]])


def path_graph(labels: Iterable[str]) -> Graph:
    vs = list(labels)
    return build_graph(vs, list(zip(vs, vs[1:])))


def cycle_graph(labels: Iterable[str]) -> Graph:
    vs = list(labels)
    return build_graph(vs, list(zip(vs, vs[1:] + vs[:1])))


# -- serialization ---------------------------------------------------------


def to_json_dict(g: Graph) -> dict:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]}


def from_json_dict(data: Mapping) -> Graph:
    try:
        return build_graph(data["vertices"], data.get("edges", []))
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph document: {exc}") from None


def dumps(g: Graph) -> str:
    return json.dumps(to_json_dict(g))


def loads(text: str) -> Graph:
    return from_json_dict(json.loads(text))


def load(path: str | Path) -> Graph:
    return loads(Path(path).read_text(encoding="utf-8"))


def save(g: Graph, path: str | Path) -> None:
    Path(path).write_text(dumps(g) + "\n", encoding="utf-8")


def _dot_id(v: str) -> str:
    return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Graph, clusters: Mapping[str, Iterable[str]] | None = None, name: str = "G") -> str:
    """Graphviz source with vertices in ambient order.

    ``clusters`` maps a cluster title to its member vertices; each becomes a
    ``subgraph cluster_<i>`` block in insertion order.
    """
    lines = [f"graph {_dot_id(name)} {{"]
    clustered: set[str] = set()
    for i, (title, members) in enumerate((clusters or {}).items()):
        ms = sorted(set(members))
        clustered.update(ms)
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f"    label={_dot_id(title)};")
        lines.extend(f"    {_dot_id(v)};" for v in ms)
        lines.append("  }")
    lines.extend(f"  {_dot_id(v)};" for v in g.vertices if v not in clustered)
    lines.extend(f"  {_dot_id(u)} -- {_dot_id(v)};" for u, v in g.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"
