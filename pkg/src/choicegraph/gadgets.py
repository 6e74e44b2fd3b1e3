"""Finite truncations of the gadget graph families.

Every family is indexed by a vector of block sizes ``|A_n|``. The infinite
index set is cut to ``N = len(sizes)`` blocks and every edge family is
intersected with the surviving vertices. In particular the last spine vertex
``t_{N-1}`` of G1/H1/H1_1/G3/G4 simply has no successor, so its degree is one
less than an interior spine vertex with the same block size.

Label scheme (all kinds):

    A_n member j          A{n}_{j}
    B_i member j          B{i}_{j}        (G3, G6)
    G5 pair (A_i[j], m)   B{i}_{j}^{m}    m in {0, 1}
    spine/hub t_n         t{n}
    G4 private r_n        r{n}
    global hub            t               (G2, G5, G6, G7)
    H1_1 extras           t', t''

G2 and G2_1 number their blocks from 1 (``A_0 = {t}`` in G2).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations

from .graph import Graph, build_graph


class Kind(str, Enum):
    G1 = "G1"
    H1 = "H1"
    H1_1 = "H1_1"
    G2 = "G2"
    G2_1 = "G2_1"
    G3 = "G3"
    G4 = "G4"
    G5 = "G5"
    G6 = "G6"
    G7 = "G7"


class Role(str, Enum):
    A = "A"
    B = "B"
    T = "T"
    R = "R"
    HUB = "hub"
    TPRIME = "tprime"
    TDOUBLEPRIME = "tdoubleprime"


ROLES = {
    Kind.G1: {Role.A, Role.T},
    Kind.H1: {Role.A, Role.T},
    Kind.H1_1: {Role.A, Role.T, Role.TPRIME, Role.TDOUBLEPRIME},
    Kind.G2: {Role.A, Role.HUB},
    Kind.G2_1: {Role.A},
    Kind.G3: {Role.A, Role.B, Role.T},
    Kind.G4: {Role.A, Role.T, Role.R},
    Kind.G5: {Role.B, Role.HUB},
    Kind.G6: {Role.A, Role.B, Role.HUB},
    Kind.G7: {Role.A, Role.T, Role.HUB},
}

USES_K = {Kind.G3, Kind.G6}


class GadgetError(ValueError):
    pass


@dataclass(frozen=True)
class GadgetInstance:
    kind: Kind
    sizes: tuple[int, ...]
    k_offset: int = 1

    def __init__(self, kind, sizes, k_offset: int = 1):
        object.__setattr__(self, "kind", Kind(kind))
        object.__setattr__(self, "sizes", tuple(int(s) for s in sizes))
        object.__setattr__(self, "k_offset", int(k_offset))
        self.validate()

    def validate(self) -> None:
        if not self.sizes:
            raise GadgetError("sizes must be non-empty")
        if any(s < 1 for s in self.sizes):
            raise GadgetError(f"block sizes must be >= 1, got {list(self.sizes)}")
        if self.kind is Kind.H1_1 and self.sizes[-1] < 2:
            raise GadgetError("H1_1 needs a last block of size >= 2 so t' and t'' stay unique")
        if self.kind in USES_K and self.k_offset < 1:
            raise GadgetError(f"{self.kind.value} needs k_offset >= 1")

    @property
    def blocks(self) -> range:
        """Block indices; G2/G2_1 start at 1."""
        first = 1 if self.kind in (Kind.G2, Kind.G2_1) else 0
        return range(first, first + len(self.sizes))

    def size(self, block: int) -> int:
        return self.sizes[block - self.blocks.start]

    def block(self, n: int) -> list[str]:
        """Labels of the abstract family member A_n (also for G5, where they are not vertices)."""
        return [f"A{n}_{j}" for j in range(self.size(n))]

    def family(self) -> dict[int, list[str]]:
        return {n: self.block(n) for n in self.blocks}

    def b_block(self, i: int) -> list[str]:
        if self.kind in USES_K:
            return [f"B{i}_{j}" for j in range(self.size(i) + self.k_offset)]
        if self.kind is Kind.G5:
            return [f"B{i}_{j}^{m}" for m in (0, 1) for j in range(self.size(i))]
        raise GadgetError(f"{self.kind.value} has no B blocks")


def label_of(spec: GadgetInstance, role, block: int | None = None, index: int | None = None, side: int = 0) -> str:
    role = Role(role)
    if role not in ROLES[spec.kind]:
        raise GadgetError(f"role {role.value} is not present in {spec.kind.value}")
    if role is Role.HUB:
        return "t"
    if role is Role.TPRIME:
        return "t'"
    if role is Role.TDOUBLEPRIME:
        return "t''"
    if block is None or block not in spec.blocks:
        raise GadgetError(f"block {block!r} out of range {spec.blocks}")
    if role is Role.T:
        return f"t{block}"
    if role is Role.R:
        return f"r{block}"
    if index is None or index < 0:
        raise GadgetError(f"index required for role {role.value}")
    if role is Role.A:
        limit = spec.size(block)
    elif spec.kind is Kind.G5:
        limit = spec.size(block)
        if side not in (0, 1):
            raise GadgetError("G5 side must be 0 or 1")
    else:
        limit = spec.size(block) + spec.k_offset
    if index >= limit:
        raise GadgetError(f"index {index} out of range for block {block} (size {limit})")
    if role is Role.A:
        return f"A{block}_{index}"
    if spec.kind is Kind.G5:
        return f"B{block}_{index}^{side}"
    return f"B{block}_{index}"


def _clique(vs):
    return list(combinations(vs, 2))


def _join(xs, ys):
    return [(x, y) for x in xs for y in ys]


@lru_cache(maxsize=512)
def gen_gadget(spec: GadgetInstance) -> Graph:
    spec.validate()
    kind = spec.kind
    blocks = list(spec.blocks)
    A = spec.family()
    T = {n: f"t{n}" for n in blocks}
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []

    if kind in (Kind.G1, Kind.H1, Kind.H1_1, Kind.G3, Kind.G4):
        vertices += T.values()
        edges += [(T[n], T[n + 1]) for n in blocks[:-1]]
        for n in blocks:
            vertices += A[n]
            edges += _join([T[n]], A[n])
        if kind is Kind.G1:
            for n in blocks:
                edges += _clique(A[n])
        elif kind is Kind.H1_1:
            vertices += ["t'", "t''"]
            edges += [("t''", "t'"), ("t'", T[blocks[0]])]
        elif kind is Kind.G3:
            for n in blocks:
                B = spec.b_block(n)
                vertices += B
                edges += _join(A[n], B)
        elif kind is Kind.G4:
            for n in blocks:
                vertices.append(f"r{n}")
                edges += _join([f"r{n}"], A[n])

    elif kind in (Kind.G2, Kind.G2_1):
        for n in blocks:
            vertices += A[n]
            edges += _clique(A[n])
        for n in blocks[:-1]:
            edges += _join(A[n], A[n + 1])
        if kind is Kind.G2:
            vertices.append("t")
            edges += _join(["t"], A[blocks[0]])

    elif kind is Kind.G5:
        vertices.append("t")
        for i in blocks:
            b0 = [f"B{i}_{j}^0" for j in range(spec.size(i))]
            b1 = [f"B{i}_{j}^1" for j in range(spec.size(i))]
            vertices += b0 + b1
            edges += _join(["t"], b0) + _join(b0, b1) + _clique(b0) + _clique(b1)

    elif kind is Kind.G6:
        vertices.append("t")
        for i in blocks:
            B = spec.b_block(i)
            vertices += A[i] + B
            edges += _join(A[i], ["t"]) + _join(A[i], B)

    elif kind is Kind.G7:
        vertices.append("t")
        for i in blocks:
            vertices += A[i] + [T[i]]
            edges += _join([T[i]], A[i]) + [("t", T[i])]

    return build_graph(vertices, edges)


def block_clusters(spec: GadgetInstance) -> dict[str, list[str]]:
    """Cluster layout for DOT figures: one cluster per block."""
    out = {}
    for n in spec.blocks:
        members = list(spec.block(n)) if spec.kind is not Kind.G5 else []
        if spec.kind in USES_K or spec.kind is Kind.G5:
            members += spec.b_block(n)
        out[f"block {n}"] = members
    return out

