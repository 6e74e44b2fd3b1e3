"""Finite-scale checks of the structural facts the gadgets rely on.

Each ``check_*`` function sweeps a family of instances and returns a
:class:`CheckResult`; :func:`run_all` is what ``choicegraph verify-claims``
prints. Failures carry the first counterexample in ``detail``.
"""

from __future__ import annotations

import time
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field
from itertools import combinations, product
from math import factorial, prod

from .automorphisms import automorphism_count, fixed_vertices, orbits
from .covers import (
    WitnessKind,
    WitnessSet,
    check,
    enumerate_maximal_matchings,
    enumerate_minimal_dominating_sets,
    enumerate_minimal_edge_covers,
    maximal_matching,
    minimal_dominating_set,
    minimal_edge_cover,
    minimal_vertex_cover,
    star_structure_check,
)
from .extract import EXTRACTORS, ExtractionError, block_view, extract, is_sound
from .fologic import deg_formula, pendant_formula, satisfiers
from .gadgets import USES_K, GadgetInstance, Kind, gen_gadget
from .graph import Graph, edge_key, is_bipartite, is_connected
from .shelah_soifer import QSqrt2, adjacent, parity_color, sample_component, verify_parity_coloring


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    seconds: float = 0.0
    detail: str = ""
    stats: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "seconds": round(self.seconds, 3),
            "detail": self.detail,
            "stats": self.stats,
        }


def _timed(name: str, body: Callable[[], tuple[int, str, dict]]) -> CheckResult:
    start = time.perf_counter()
    cases, failure, stats = body()
    return CheckResult(name, not failure, cases, time.perf_counter() - start, failure, stats)


# -- instance sweeps -------------------------------------------------------------------


def size_vectors(max_size: int, max_len: int | None = None) -> Iterator[tuple[int, ...]]:
    """All vectors in ``{1..max_size}^L`` for ``1 <= L <= max_len`` (default ``max_size``)."""
    for length in range(1, (max_len or max_size) + 1):
        yield from product(range(1, max_size + 1), repeat=length)


def h1_1_instances(max_vertices: int = 12) -> list[GadgetInstance]:
    """Every valid H1_1 instance with at most ``max_vertices`` vertices (``sum + len + 2``)."""
    out = []

    def rec(prefix: list[int], budget: int):
        # budget: vertices left for further blocks; a block of size s costs s + 1
        if prefix and prefix[-1] >= 2:
            out.append(GadgetInstance(Kind.H1_1, prefix))
        for s in range(1, budget):
            rec(prefix + [s], budget - s - 1)

    rec([], max_vertices - 2)
    return sorted(out, key=lambda s: (len(s.sizes), s.sizes))


# -- gadgets -----------------------------------------------------------------------------


def check_gadget_shapes(max_size: int = 3) -> CheckResult:
    """Connectivity of every kind; G6/G7 bipartite; H1 a tree; the G2 figure instance has 12 vertices and 34 edges."""

    def body():
        fig = gen_gadget(GadgetInstance(Kind.G2, [3, 2, 3, 3]))
        if (len(fig.vertices), len(fig.edges)) != (12, 34):
            return 1, f"G2 [3,2,3,3] has {len(fig.vertices)} vertices, {len(fig.edges)} edges", {}
        cases = 1
        for kind in Kind:
            for sizes in size_vectors(max_size):
                if kind is Kind.H1_1 and sizes[-1] < 2:
                    continue
                g = gen_gadget(GadgetInstance(kind, sizes))
                cases += 1
                if not is_connected(g):
                    return cases, f"{kind.value}{list(sizes)} is disconnected", {}
                if kind in (Kind.G6, Kind.G7) and not is_bipartite(g):
                    return cases, f"{kind.value}{list(sizes)} has an odd cycle", {}
                if kind is Kind.H1 and len(g.edges) != len(g.vertices) - 1:
                    return cases, f"H1{list(sizes)} is not a tree", {}
        return cases, "", {}

    return _timed("gadget-shapes", body)


# -- H1_1: spine fixed, leaves move inside their block ---------------------------------------


def check_fixed_spine(max_vertices: int = 12) -> CheckResult:
    """t'', t' and every t_n are fixed; t'' is the only pendant-formula vertex and t' the only Deg_2 vertex."""

    def body():
        phi, deg2 = pendant_formula(), deg_formula(2)
        instances = h1_1_instances(max_vertices)
        for spec in instances:
            g = gen_gadget(spec)
            need = {"t'", "t''"} | {f"t{n}" for n in spec.blocks}
            missing = need - fixed_vertices(g)
            if missing:
                return len(instances), f"{list(spec.sizes)}: {sorted(missing)} not fixed", {}
            if satisfiers(g, phi) != ["t''"]:
                return len(instances), f"{list(spec.sizes)}: pendant formula holds at {satisfiers(g, phi)}", {}
            if satisfiers(g, deg2) != ["t'"]:
                return len(instances), f"{list(spec.sizes)}: Deg_2 holds at {satisfiers(g, deg2)}", {}
        return len(instances), "", {}

    return _timed("fixed-spine", body)


def check_leaf_orbits(max_vertices: int = 12) -> CheckResult:
    """The orbit of each leaf is its block, and the group order is the product of block factorials."""

    def body():
        instances = h1_1_instances(max_vertices)
        total = 0
        for spec in instances:
            g = gen_gadget(spec)
            orbit_of = {v: tuple(o) for o in orbits(g) for v in o}
            for n, block in spec.family().items():
                for x in block:
                    if set(orbit_of[x]) != set(block):
                        return len(instances), f"{list(spec.sizes)}: orbit of {x} is {list(orbit_of[x])}", {}
            count = automorphism_count(g)
            total += count
            want = prod(factorial(s) for s in spec.sizes)
            if count != want:
                return len(instances), f"{list(spec.sizes)}: |Aut| = {count}, expected {want}", {}
        return len(instances), "", {"automorphisms": total}

    return _timed("leaf-orbits", body)


# -- greedy constructors and star forests ----------------------------------------------------------


def check_constructors(graphs: Iterable[Graph]) -> CheckResult:
    """The four greedy constructors return minimal/maximal witnesses; the edge cover is a star forest."""

    def body():
        cases = 0
        for g in graphs:
            cases += 1
            outs = [minimal_vertex_cover(g), minimal_dominating_set(g), maximal_matching(g)]
            if all(g.adjacency[v] for v in g.vertices):
                outs.append(minimal_edge_cover(g))
            for w in outs:
                if not check(g, w, True):
                    return cases, f"{w.kind.value} {w.sorted()} fails on {list(g.edges)}", {}
            if len(outs) == 4 and not star_structure_check(g, outs[3]):
                return cases, f"edge cover {outs[3].sorted()} is not a star forest on {list(g.edges)}", {}
        return cases, "", {}

    return _timed("greedy-constructors", body)


def check_star_forests(graphs: Iterable[Graph], max_edges: int = 8) -> CheckResult:
    """Every minimal edge cover of every graph with at most ``max_edges`` edges is a star forest."""

    def body():
        cases = covers = 0
        for g in graphs:
            if len(g.edges) > max_edges:
                continue
            cases += 1
            for c in enumerate_minimal_edge_covers(g):
                covers += 1
                if not star_structure_check(g, c):
                    return cases, f"{c.sorted()} on {list(g.edges)}", {}
        return cases, "", {"covers": covers}

    return _timed("star-forest-covers", body)


# -- Shelah-Soifer slice --------------------------------------------------------------------------


def check_parity_coloring(count: int = 1000, seed: int = 0) -> CheckResult:
    def body():
        base = QSqrt2(0, 0)
        sample = sample_component(count, seed, base)
        report = verify_parity_coloring(sample, base)
        if not report.passed:
            return report.size, f"report {report.to_json_dict()}", {}
        # symmetry/irreflexivity and properness on every sampled pair sharing a sqrt2 coefficient bucket
        by_b: dict = {}
        for p in sample:
            by_b.setdefault(p.b, []).append(p)
        for p in sample:
            if adjacent(p, p):
                return report.size, f"{p} adjacent to itself", {}
            for q in by_b.get(p.b + 1, ()):
                if not adjacent(q, p) or parity_color(p, base) == parity_color(q, base):
                    return report.size, f"{p} ~ {q} breaks symmetry or properness", {}
        return report.size, "", {"edges": report.edges}

    return _timed("parity-coloring", body)


# -- choice extraction ------------------------------------------------------------------------------


_ENUMERATORS = {
    WitnessKind.DOMINATING_SET: enumerate_minimal_dominating_sets,
    WitnessKind.MATCHING: enumerate_maximal_matchings,
    WitnessKind.EDGE_COVER: enumerate_minimal_edge_covers,
}


def extraction_instances(kind: Kind, max_size: int = 3, ks: Iterable[int] = (1, 2)) -> list[GadgetInstance]:
    out = []
    for sizes in size_vectors(max_size):
        for k in ks if kind in USES_K else (1,):
            out.append(GadgetInstance(kind, sizes, k))
    return out


def _check_witness(spec: GadgetInstance, w: WitnessSet) -> str:
    """Empty string when extraction from ``w`` is sound, else a description."""
    try:
        cf = extract(spec, w)
    except ExtractionError as exc:
        return f"{spec.kind.value}{list(spec.sizes)} k={spec.k_offset}: {exc} on {w.sorted()}"
    if not is_sound(spec, cf):
        return f"{spec.kind.value}{list(spec.sizes)}: unsound picks {cf.picks}"
    if spec.kind is Kind.G2_1:
        fam = spec.family()
        over = [n for n, block in fam.items() if len(w.members.intersection(block)) > 1]
        if over:
            return f"G2_1{list(spec.sizes)}: D meets A_{over[0]} more than once"
        if len(fam) >= 2 and not cf.picks:
            return f"G2_1{list(spec.sizes)}: no block picked from {w.sorted()}"
    return ""


def local_restrictions(spec: GadgetInstance, i: int) -> Iterator[frozenset]:
    """Candidate ``C ∩ (A_i x B_i)`` for a minimal edge cover ``C`` of a G3/G6 instance.

    Each ``b`` in ``B_i`` has all its neighbors in ``A_i``, so it needs at
    least one edge; and a subgraph of a star forest is a star forest, so a
    ``b`` with two or more edges has only leaves as partners. Anything else
    cannot occur, which is all this filter drops.
    """
    A, B = spec.block(i), spec.b_block(i)
    subsets = [c for r in range(1, len(A) + 1) for c in combinations(A, r)]
    for choice in product(subsets, repeat=len(B)):
        adeg = {a: 0 for a in A}
        for s in choice:
            for a in s:
                adeg[a] += 1
        if all(len(s) == 1 or all(adeg[a] == 1 for a in s) for s in choice):
            yield frozenset(edge_key(a, b) for b, s in zip(B, choice) for a in s)


def _edge_cover_by_blocks(spec: GadgetInstance) -> tuple[int, str]:
    """Check extraction over all minimal edge covers of a G3/G6 instance, one block restriction at a time.

    Block ``i``'s pick reads only ``C ∩ (A_i x B_i)``. For every restriction
    ``L`` that some minimal cover realizes, one such cover is found by
    enumerating with the block's edges forced to ``L``, and the extractor is
    run on it. Every cover agrees on block ``i`` with the representative of its
    own restriction, so this covers all minimal edge covers.
    """
    g = gen_gadget(spec)
    realized = 0
    for i in spec.blocks:
        view = block_view(spec, i)
        for local in local_restrictions(spec, i):
            rep = next(enumerate_minimal_edge_covers(g, {e: e in local for e in view}), None)
            if rep is None:
                continue
            realized += 1
            failure = _check_witness(spec, rep)
            if failure:
                return realized, failure
    return realized, ""


def check_extraction(kind: Kind, max_size: int = 3, ks: Iterable[int] = (1, 2), full_limit: int = 20000) -> CheckResult:
    """Every enumerated witness of the kind's extractor yields a sound choice, on all instances of the sweep.

    G3/G6 instances with more than ``full_limit`` covers are checked block by
    block (see :func:`_edge_cover_by_blocks`); smaller ones are enumerated in full.
    """
    wkind, _ = EXTRACTORS[kind]
    enum = _ENUMERATORS[wkind]

    def body():
        instances = extraction_instances(kind, max_size, ks)
        witnesses = factored = restrictions = 0
        for spec in instances:
            g = gen_gadget(spec)
            if kind in USES_K:
                it = enum(g)
                head = [w for _, w in zip(range(full_limit + 1), it)]
                if len(head) > full_limit:
                    factored += 1
                    n, failure = _edge_cover_by_blocks(spec)
                    restrictions += n
                    if failure:
                        return len(instances), failure, {}
                    continue
                todo: Iterable[WitnessSet] = head
            else:
                todo = enum(g)
            for w in todo:
                witnesses += 1
                failure = _check_witness(spec, w)
                if failure:
                    return len(instances), failure, {}
        stats = {"witnesses": witnesses}
        if kind in USES_K:
            stats.update(block_factored_instances=factored, block_restrictions=restrictions)
        return len(instances), "", stats

    return _timed(f"extraction-{kind.value}", body)


# -- everything ------------------------------------------------------------------------------------------


def run_all(max_size: int = 3, seed: int = 0, samples: int = 1000) -> list[CheckResult]:
    from .corpus import standard_corpus

    graphs = standard_corpus(seed)
    results = [
        check_gadget_shapes(max_size),
        check_fixed_spine(),
        check_leaf_orbits(),
        check_constructors(graphs),
        check_star_forests(graphs),
        check_parity_coloring(samples, seed),
    ]
    results += [check_extraction(kind, max_size) for kind in EXTRACTORS]
    return results
