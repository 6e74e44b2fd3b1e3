"""The Shelah-Soifer graph restricted to Q(sqrt 2), with exact arithmetic.

Two reals are adjacent when their difference is ``q + sqrt2`` or ``q - sqrt2``
for a rational ``q``. Inside ``Q(sqrt2)`` that only looks at the sqrt2
coefficient of ``x - y``: adjacent iff it is exactly +1 or -1, same component
iff it is an integer, and the parity of that integer is a proper 2-coloring of
the component.
"""

from __future__ import annotations

import random
import re
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction


class ComponentError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class QSqrt2:
    """Exact ``a + b*sqrt(2)`` with rational ``a`` and ``b``."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __add__(self, other):
        other = _coerce(other)
        return QSqrt2(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return QSqrt2(self.a * other.a + 2 * self.b * other.b, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * 2 ** 0.5

    def __str__(self) -> str:
        return f"{_frac(self.a)} + {_frac(self.b)} sqrt2"

    @classmethod
    def parse(cls, text: str) -> "QSqrt2":
        """Inverse of ``str``: ``"a_num/a_den + b_num/b_den sqrt2"`` (denominators optional)."""
        m = _POINT.match(text)
        if not m:
            raise ValueError(f"cannot parse {text!r} as a + b sqrt2")
        return cls(Fraction(m.group(1)), Fraction(m.group(2)))


SQRT2 = QSqrt2(0, 1)
_POINT = re.compile(r"^\s*(-?\d+(?:/\d+)?)\s*\+\s*(-?\d+(?:/\d+)?)\s*sqrt2\s*$")


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _coerce(x) -> QSqrt2:
    if isinstance(x, QSqrt2):
        return x
    if isinstance(x, (int, Fraction)):
        return QSqrt2(x, 0)
    return NotImplemented


def adjacent(x: QSqrt2, y: QSqrt2) -> bool:
    d = x.b - y.b
    return d == 1 or d == -1


def same_component(x: QSqrt2, y: QSqrt2) -> bool:
    return (x.b - y.b).denominator == 1


def parity_color(x: QSqrt2, base: QSqrt2) -> int:
    """Parity of ``z`` in ``x - base = q + z*sqrt2``: one of the component's two proper 2-colorings."""
    z = x.b - base.b
    if z.denominator != 1:
        raise ComponentError(f"{x} and {base} lie in different components")
    return z.numerator % 2


@dataclass(frozen=True)
class SampleReport:
    size: int
    classes_independent: bool
    opposite_neighbor: bool
    no_odd_cycle: bool
    edges: int
    missing_neighbor: tuple[QSqrt2, ...] = ()

    @property
    def passed(self) -> bool:
        return self.classes_independent and self.opposite_neighbor and self.no_odd_cycle

    def to_json_dict(self) -> dict:
        return {
            "size": self.size,
            "edges": self.edges,
            "classes_independent": self.classes_independent,
            "opposite_neighbor": self.opposite_neighbor,
            "no_odd_cycle": self.no_odd_cycle,
            "missing_neighbor": [str(p) for p in self.missing_neighbor[:10]],
            "passed": self.passed,
        }


def sample_edges(points: list[QSqrt2]) -> list[tuple[int, int]]:
    """Adjacent index pairs ``i < j``, found by bucketing on the sqrt2 coefficient."""
    by_b: dict[Fraction, list[int]] = {}
    for i, p in enumerate(points):
        by_b.setdefault(p.b, []).append(i)
    out = []
    for i, p in enumerate(points):
        for j in by_b.get(p.b + 1, ()):
            out.append((min(i, j), max(i, j)))
    return sorted(out)


def verify_parity_coloring(sample: Iterable[QSqrt2], base: QSqrt2) -> SampleReport:
    """Check the parity coloring on a finite sample of one component.

    (a) each parity class is independent, (b) every point has a sampled
    neighbor of the other class, (c) the sampled subgraph has no odd cycle
    (checked by BFS 2-coloring, independently of the parity coloring).
    """
    points = sorted(set(sample))
    for p in points:
        if not same_component(p, base):
            raise ComponentError(f"{p} is not in the component of {base}")
    colors = [parity_color(p, base) for p in points]
    edges = sample_edges(points)
    independent = all(colors[i] != colors[j] for i, j in edges)
    has_other = [False] * len(points)
    for i, j in edges:
        if colors[i] != colors[j]:
            has_other[i] = has_other[j] = True
    nbrs: list[list[int]] = [[] for _ in points]
    for i, j in edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    side: dict[int, int] = {}
    bipartite = True
    for s in range(len(points)):
        if s in side:
            continue
        side[s] = 0
        queue = deque([s])
        while queue and bipartite:
            u = queue.popleft()
            for w in nbrs[u]:
                if w not in side:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    bipartite = False
                    break
    return SampleReport(
        size=len(points),
        classes_independent=independent,
        opposite_neighbor=all(has_other),
        no_odd_cycle=bipartite,
        edges=len(edges),
        missing_neighbor=tuple(p for p, ok in zip(points, has_other) if not ok),
    )


def sample_component(count: int, seed: int, base: QSqrt2 = QSqrt2(0, 0), spread: int = 20) -> list[QSqrt2]:
    """``count`` points of ``base``'s component, closed under the designated neighbor ``x + sqrt2``.

    Points come in pairs ``x, x + sqrt2`` with ``x = base + q + z*sqrt2`` for a
    random rational ``q`` and integer ``z``; an odd ``count`` drops the last
    partner.
    """
    rng = random.Random(seed)
    out: set[QSqrt2] = set()
    while len(out) < count:
        q = Fraction(rng.randint(-10 * spread, 10 * spread), rng.randint(1, spread))
        z = rng.randint(-spread, spread)
        x = base + QSqrt2(q, z)
        out.add(x)
        if len(out) < count:
            out.add(x + SQRT2)
    return sorted(out)
