"""Reading choice functions off combinatorial witnesses on gadget graphs.

Each extractor takes the gadget instance and a witness on ``gen_gadget(instance)``,
re-checks the witness (minimality or maximality included), and returns the
picks it determines. Picks are labels of the abstract family members
``A{n}_{j}``; for G5 these are projections of the ``B{i}_{j}^{m}`` vertices.

For the edge-cover gadgets block ``i``'s pick depends only on the cover's
``A_i``-``B_i`` edges (:func:`block_view`); :mod:`choicegraph.claims` uses
that to verify every cover of a large instance one block restriction at a time.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import product

from .covers import WitnessKind, WitnessSet, check
from .gadgets import GadgetInstance, Kind, gen_gadget
from .graph import edge_key


class ExtractionError(ValueError):
    pass


@dataclass(frozen=True)
class ChoiceFunction:
    picks: dict[int, str]
    partial: bool
    fallbacks: tuple[int, ...] = field(default=())

    def to_json_dict(self) -> dict:
        return {
            "picks": {str(i): v for i, v in sorted(self.picks.items())},
            "partial": self.partial,
            "fallbacks": list(self.fallbacks),
        }


def is_sound(instance: GadgetInstance, cf: ChoiceFunction) -> bool:
    """Every pick lies in its block; a total function assigns every block."""
    fam = instance.family()
    if any(i not in fam or v not in fam[i] for i, v in cf.picks.items()):
        return False
    return cf.partial or set(cf.picks) == set(fam)


def _expect(instance: GadgetInstance, kind: Kind) -> None:
    if instance.kind is not kind:
        raise ExtractionError(f"expected a {kind.value} instance, got {instance.kind.value}")


def _require(instance: GadgetInstance, w: WitnessSet, kind: WitnessKind, what: str):
    if w.kind is not kind:
        raise ExtractionError(f"expected a {kind.value} witness, got {w.kind.value}")
    g = gen_gadget(instance)
    if not check(g, w, True):
        raise ExtractionError(f"witness is not a {what} of {instance.kind.value}{list(instance.sizes)}")
    return g


def from_dominating_G2_1(instance: GadgetInstance, d: WitnessSet) -> ChoiceFunction:
    _expect(instance, Kind.G2_1)
    _require(instance, d, WitnessKind.DOMINATING_SET, "minimal dominating set")
    picks = {}
    for n, block in instance.family().items():
        hit = [x for x in block if x in d.members]
        if len(hit) > 1:
            raise ExtractionError(f"block {n} meets D in {len(hit)} vertices")
        if hit:
            picks[n] = hit[0]
    return ChoiceFunction(picks, partial=True)


def _from_edge_cover(instance: GadgetInstance, cover: WitnessSet) -> ChoiceFunction:
    _require(instance, cover, WitnessKind.EDGE_COVER, "minimal edge cover")
    picks = {}
    for i, block in instance.family().items():
        nbhd = {b: {a for a in block if edge_key(a, b) in cover.members} for b in sorted(instance.b_block(i))}
        first = next(
            ((b1, b2) for b1, b2 in product(nbhd, repeat=2) if b1 != b2 and nbhd[b1] & nbhd[b2]),
            None,
        )
        if first is None:
            raise ExtractionError(f"block {i}: B-neighborhoods are pairwise disjoint")
        common = nbhd[first[0]] & nbhd[first[1]]
        if len(common) != 1:
            raise ExtractionError(f"block {i}: {first} share {len(common)} neighbors, expected exactly one")
        picks[i] = common.pop()
    return ChoiceFunction(picks, partial=False)


def from_edge_cover_G3(instance: GadgetInstance, cover: WitnessSet) -> ChoiceFunction:
    """First lexicographic pair of ``B_i`` vertices with overlapping cover-neighborhoods picks ``A_i``."""
    _expect(instance, Kind.G3)
    return _from_edge_cover(instance, cover)


def from_edge_cover_G6(instance: GadgetInstance, cover: WitnessSet) -> ChoiceFunction:
    _expect(instance, Kind.G6)
    return _from_edge_cover(instance, cover)


def from_matching_G4(instance: GadgetInstance, m: WitnessSet) -> ChoiceFunction:
    """``r_i``'s partner; a singleton ``A_i`` whose ``r_i`` is exposed is picked directly and flagged."""
    _expect(instance, Kind.G4)
    _require(instance, m, WitnessKind.MATCHING, "maximal matching")
    picks, fallbacks = {}, []
    for i, block in instance.family().items():
        hit = [x for x in block if edge_key(f"r{i}", x) in m.members]
        if len(hit) == 1:
            picks[i] = hit[0]
        elif not hit and len(block) == 1:
            picks[i] = block[0]
            fallbacks.append(i)
        else:
            raise ExtractionError(f"block {i}: r{i} is matched into A_{i} {len(hit)} times")
    return ChoiceFunction(picks, partial=False, fallbacks=tuple(fallbacks))


_G5_LABEL = re.compile(r"^B(\d+)_(\d+)\^([01])$")


def from_dominating_G5(instance: GadgetInstance, d: WitnessSet) -> ChoiceFunction:
    _expect(instance, Kind.G5)
    _require(instance, d, WitnessKind.DOMINATING_SET, "minimal dominating set")
    picks = {}
    for i in instance.blocks:
        hit = [v for v in instance.b_block(i) if v in d.members]
        if len(hit) != 1:
            raise ExtractionError(f"block {i}: D meets B_{i}^0 u B_{i}^1 in {len(hit)} vertices, expected 1")
        block, j, _ = _G5_LABEL.match(hit[0]).groups()
        picks[i] = f"A{block}_{j}"
    return ChoiceFunction(picks, partial=False)


def from_matching_G7(instance: GadgetInstance, m: WitnessSet) -> ChoiceFunction:
    """Partner of ``t_j`` in ``A_j``; the (at most one) block whose ``t_i`` is matched to the hub takes its least member."""
    _expect(instance, Kind.G7)
    _require(instance, m, WitnessKind.MATCHING, "maximal matching")
    hub_blocks = [i for i in instance.blocks if edge_key("t", f"t{i}") in m.members]
    if len(hub_blocks) > 1:
        raise ExtractionError(f"hub matched to {len(hub_blocks)} spokes")
    picks, fallbacks = {}, []
    for i, block in instance.family().items():
        if i in hub_blocks:
            picks[i] = min(block)
            fallbacks.append(i)
            continue
        hit = [x for x in block if edge_key(f"t{i}", x) in m.members]
        if len(hit) != 1:
            raise ExtractionError(f"block {i}: t{i} is matched into A_{i} {len(hit)} times")
        picks[i] = hit[0]
    return ChoiceFunction(picks, partial=False, fallbacks=tuple(fallbacks))


EXTRACTORS = {
    Kind.G2_1: (WitnessKind.DOMINATING_SET, from_dominating_G2_1),
    Kind.G3: (WitnessKind.EDGE_COVER, from_edge_cover_G3),
    Kind.G4: (WitnessKind.MATCHING, from_matching_G4),
    Kind.G5: (WitnessKind.DOMINATING_SET, from_dominating_G5),
    Kind.G6: (WitnessKind.EDGE_COVER, from_edge_cover_G6),
    Kind.G7: (WitnessKind.MATCHING, from_matching_G7),
}


def extract(instance: GadgetInstance, witness: WitnessSet) -> ChoiceFunction:
    try:
        _, fn = EXTRACTORS[instance.kind]
    except KeyError:
        raise ExtractionError(f"no extractor for {instance.kind.value}") from None
    return fn(instance, witness)


def block_view(instance: GadgetInstance, i: int) -> set:
    """The ``A_i``-``B_i`` edges: all an edge-cover extraction reads for block ``i``."""
    if instance.kind not in (Kind.G3, Kind.G6):
        raise ExtractionError("block_view is only used for the edge-cover gadgets")
    return {edge_key(a, b) for a in instance.block(i) for b in instance.b_block(i)}


# -- product and multiple families -------------------------------------------------


@dataclass(frozen=True)
class ProductReduction:
    products: list[set[tuple]]
    multiplied: list[set[tuple]]
    k: int


def product_reduction(families: Sequence[Iterable], k: int) -> ProductReduction:
    """Prefix products ``B_i = A_0 x ... x A_i`` and ``D_i = A_i x {0..k-1}``.

    Prefix products turn any choice made on some ``B_i`` into a choice for
    every ``A_j`` with ``j <= i``; every ``|D_i|`` is a multiple of ``k``.
    """
    fams = [sorted(set(f)) for f in families]
    if not fams or any(not f for f in fams):
        raise ValueError("families must be non-empty sets")
    if k < 1:
        raise ValueError("k must be >= 1")
    products = [set(product(*fams[: i + 1])) for i in range(len(fams))]
    multiplied = [{(x, j) for x in f for j in range(k)} for f in fams]
    return ProductReduction(products, multiplied, k)


def choice_from_products(picks: dict[int, tuple]) -> list:
    """Choice for ``A_0..A_m`` (``m`` = largest picked index) from a partial choice on the prefix products."""
    if not picks:
        raise ValueError("empty partial choice")
    out = []
    for n in range(max(picks) + 1):
        i = min(j for j in picks if j >= n)
        out.append(picks[i][n])
    return out


def choice_from_multiplied(picks: Sequence[tuple]) -> list:
    return [x for x, _ in picks]
