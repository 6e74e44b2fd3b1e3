"""First-order formulas over the language of graphs: one binary relation ``E``.

The concrete syntax is documented in ``docs/formula-grammar.md``. ``deg<n>(v)``
is a macro that expands, at parse time, to :func:`deg_formula`; the pretty
printer always emits the expanded form, so ``parse(pretty(f)) == f``.
"""

from __future__ import annotations

import re
import warnings
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .graph import Graph


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, text: str):
        super().__init__(f"{message} at position {pos}: {text[:pos]}<<here>>{text[pos:]}")
        self.pos = pos


class EvaluationError(ValueError):
    pass


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return pretty(self)

    def __and__(self, other: "Formula") -> "Formula":
        return And((self, other))

    def __or__(self, other: "Formula") -> "Formula":
        return Or((self, other))

    def __invert__(self) -> "Formula":
        return Not(self)


@dataclass(frozen=True, repr=False)
class Eq(Formula):
    left: str
    right: str


@dataclass(frozen=True, repr=False)
class Edge(Formula):
    left: str
    right: str


@dataclass(frozen=True, repr=False)
class Not(Formula):
    body: Formula


@dataclass(frozen=True, repr=False)
class And(Formula):
    """Conjunction; ``And(())`` is ``true``."""

    parts: tuple[Formula, ...]


@dataclass(frozen=True, repr=False)
class Or(Formula):
    """Disjunction; ``Or(())`` is ``false``."""

    parts: tuple[Formula, ...]


@dataclass(frozen=True, repr=False)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True, repr=False)
class Forall(Formula):
    var: str
    body: Formula


TRUE = And(())
FALSE = Or(())

for _cls in (Eq, Edge, Not, And, Or, Implies, Exists, Forall):
    _cls.__repr__ = lambda self: f"Formula({pretty(self)!r})"


def conj(parts: Iterable[Formula]) -> Formula:
    """``And`` that collapses a single conjunct, so the result round-trips."""
    parts = tuple(parts)
    return parts[0] if len(parts) == 1 else And(parts)


def disj(parts: Iterable[Formula]) -> Formula:
    parts = tuple(parts)
    return parts[0] if len(parts) == 1 else Or(parts)


def free_variables(f: Formula) -> frozenset[str]:
    if isinstance(f, (Eq, Edge)):
        return frozenset((f.left, f.right))
    if isinstance(f, Not):
        return free_variables(f.body)
    if isinstance(f, (And, Or)):
        return frozenset().union(*(free_variables(p) for p in f.parts))
    if isinstance(f, Implies):
        return free_variables(f.left) | free_variables(f.right)
    if isinstance(f, (Exists, Forall)):
        return free_variables(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def quantifier_depth(f: Formula) -> int:
    if isinstance(f, (Eq, Edge)):
        return 0
    if isinstance(f, Not):
        return quantifier_depth(f.body)
    if isinstance(f, (And, Or)):
        return max((quantifier_depth(p) for p in f.parts), default=0)
    if isinstance(f, Implies):
        return max(quantifier_depth(f.left), quantifier_depth(f.right))
    return 1 + quantifier_depth(f.body)


# -- the degree formulas -----------------------------------------------------------


def deg_formula(n: int, var: str = "x") -> Formula:
    """``Deg_n(var)``: ``var`` has exactly ``n`` neighbors.

    ``exists x0 .. exists x{n-1} (x_i != x_j for i < j, var != x_i, E(var, x_i),
    forall y (E(var, y) -> y = x0 | .. | y = x{n-1}))``. Bound names skip
    ``var`` so the macro can be applied to any variable.
    """
    if n < 0:
        raise ValueError("degree must be >= 0")
    names = _fresh_names(n + 1, avoid={var})
    xs, y = names[:n], names[n]
    parts: list[Formula] = [Not(Eq(xs[i], xs[j])) for i in range(n) for j in range(i + 1, n)]
    parts += [Not(Eq(var, xi)) for xi in xs]
    parts += [Edge(var, xi) for xi in xs]
    parts.append(Forall(y, Implies(Edge(var, y), disj(Eq(y, xi) for xi in xs))))
    body = conj(parts)
    for xi in reversed(xs):
        body = Exists(xi, body)
    return body


def _fresh_names(count: int, avoid: set[str]) -> list[str]:
    out = []
    i = 0
    while len(out) < count - 1:
        name = f"x{i}"
        if name not in avoid:
            out.append(name)
        i += 1
    out.append(next(c for c in ("y", "y0", "y1", "z") if c not in avoid))
    return out


def pendant_formula(var: str = "x") -> Formula:
    """``Deg_1(var) & exists y (E(var, y) & Deg_2(y))``: a leaf hanging off a degree-2 vertex."""
    y = "y" if var != "y" else "z"
    return And((deg_formula(1, var), Exists(y, And((Edge(var, y), deg_formula(2, y))))))


# -- pretty printing -----------------------------------------------------------------

_PREC = {Implies: 1, Or: 2, And: 3}


def _prec(f: Formula) -> int:
    if isinstance(f, (And, Or)) and not f.parts:
        return 5
    return _PREC.get(type(f), 4)


def pretty(f: Formula) -> str:
    if isinstance(f, Eq):
        return f"{f.left} = {f.right}"
    if isinstance(f, Edge):
        return f"E({f.left},{f.right})"
    if isinstance(f, Not):
        if isinstance(f.body, Eq):
            return f"{f.body.left} != {f.body.right}"
        return "~" + _wrap(f.body, 4)
    if isinstance(f, And):
        if not f.parts:
            return "true"
        return " & ".join(_wrap(p, 4) for p in f.parts)
    if isinstance(f, Or):
        if not f.parts:
            return "false"
        return " | ".join(_wrap(p, 3) for p in f.parts)
    if isinstance(f, Implies):
        return f"{_wrap(f.left, 2)} -> {_wrap(f.right, 1)}"
    if isinstance(f, (Exists, Forall)):
        word = "exists" if isinstance(f, Exists) else "forall"
        return f"{word} {f.var} {_wrap(f.body, 4)}"
    raise TypeError(f"not a formula: {f!r}")


def _wrap(f: Formula, need: int) -> str:
    s = pretty(f)
    return s if _prec(f) >= need else f"({s})"


# -- parsing ----------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<op>->|→|!=|≠|[()=,~&|¬∧∨∃∀])|(?P<deg>deg(?P<n>\d+))(?![\w'])|(?P<name>[A-Za-z_][\w']*))"
)
_ALIASES = {"¬": "~", "∧": "&", "∨": "|", "→": "->", "≠": "!=", "not": "~", "∃": "exists", "∀": "forall"}
_KEYWORDS = {"exists", "forall", "not", "true", "false", "E"}


@dataclass
class _Tok:
    kind: str
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[start]!r}", start, text)
        start = m.start(m.lastgroup) if m.lastgroup != "n" else m.start("deg")
        if m.group("op"):
            out.append(_Tok("op", _ALIASES.get(m.group("op"), m.group("op")), start))
        elif m.group("deg"):
            out.append(_Tok("deg", m.group("n"), m.start("deg")))
        else:
            word = _ALIASES.get(m.group("name"), m.group("name"))
            out.append(_Tok("op" if word in ("~", "exists", "forall") else "name", word, start))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, message: str):
        raise FormulaSyntaxError(message, self.tok.pos, self.text)

    def take(self, kind: str, value: str | None = None) -> _Tok:
        t = self.tok
        if t.kind != kind or (value is not None and t.value != value):
            want = value or kind
            self.fail(f"expected {want!r}, found {t.value or 'end of input'!r}")
        self.i += 1
        return t

    def at(self, value: str) -> bool:
        return self.tok.kind == "op" and self.tok.value == value

    def parse(self) -> Formula:
        f = self.implication()
        if self.tok.kind != "end":
            self.fail(f"unexpected {self.tok.value!r}")
        return f

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.at("->"):
            self.i += 1
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        parts = [self.conjunction()]
        while self.at("|"):
            self.i += 1
            parts.append(self.conjunction())
        return disj(parts)

    def conjunction(self) -> Formula:
        parts = [self.unary()]
        while self.at("&"):
            self.i += 1
            parts.append(self.unary())
        return conj(parts)

    def variable(self) -> str:
        t = self.tok
        if t.kind != "name" or t.value in _KEYWORDS:
            self.fail(f"expected a variable, found {t.value or 'end of input'!r}")
        self.i += 1
        return t.value

    def unary(self) -> Formula:
        t = self.tok
        if self.at("~"):
            self.i += 1
            return Not(self.unary())
        if self.at("exists") or self.at("forall"):
            self.i += 1
            var = self.variable()
            body = self.unary()
            return Exists(var, body) if t.value == "exists" else Forall(var, body)
        if self.at("("):
            self.i += 1
            f = self.implication()
            self.take("op", ")")
            return f
        if t.kind == "deg":
            self.i += 1
            self.take("op", "(")
            v = self.variable()
            self.take("op", ")")
            return deg_formula(int(t.value), v)
        if t.kind == "name" and t.value == "E":
            self.i += 1
            self.take("op", "(")
            a = self.variable()
            self.take("op", ",")
            b = self.variable()
            self.take("op", ")")
            return Edge(a, b)
        if t.kind == "name" and t.value in ("true", "false"):
            self.i += 1
            return TRUE if t.value == "true" else FALSE
        a = self.variable()
        if self.at("="):
            self.i += 1
            return Eq(a, self.variable())
        if self.at("!="):
            self.i += 1
            return Not(Eq(a, self.variable()))
        self.fail("expected '=' or '!=' after a variable")


def parse_formula(text: str, expect_free: Iterable[str] | None = None) -> Formula:
    """Parse ``text``; with ``expect_free`` given, warn about any other free variable."""
    f = _Parser(text).parse()
    if expect_free is not None:
        extra = free_variables(f) - set(expect_free)
        if extra:
            warnings.warn(f"unbound variables {sorted(extra)}", stacklevel=2)
    return f


# -- evaluation ------------------------------------------------------------------------------


def evaluate(g: Graph, f: Formula, assignment: Mapping[str, str] | None = None) -> bool:
    """Tarskian truth of ``f`` in ``g``; quantifiers range over ``g.vertices``."""
    env = dict(assignment or {})
    missing = free_variables(f) - set(env)
    if missing:
        raise EvaluationError(f"assignment does not cover free variables {sorted(missing)}")
    bad = [v for v in env.values() if v not in g]
    if bad:
        raise EvaluationError(f"assignment uses non-vertices {bad[:3]}")
    return _eval(g, f, env)


def _eval(g: Graph, f: Formula, env: dict) -> bool:
    if isinstance(f, Edge):
        return env[f.right] in g.adjacency[env[f.left]]
    if isinstance(f, Eq):
        return env[f.left] == env[f.right]
    if isinstance(f, Not):
        return not _eval(g, f.body, env)
    if isinstance(f, And):
        return all(_eval(g, p, env) for p in f.parts)
    if isinstance(f, Or):
        return any(_eval(g, p, env) for p in f.parts)
    if isinstance(f, Implies):
        return not _eval(g, f.left, env) or _eval(g, f.right, env)
    if isinstance(f, (Exists, Forall)):
        want = isinstance(f, Exists)
        saved = env.get(f.var)
        hit = not want
        for v in g.vertices:
            env[f.var] = v
            if _eval(g, f.body, env) == want:
                hit = want
                break
        if saved is None:
            env.pop(f.var, None)
        else:
            env[f.var] = saved
        return hit
    raise TypeError(f"not a formula: {f!r}")


def satisfiers(g: Graph, f: Formula, var: str = "x") -> list[str]:
    """Vertices ``v`` with ``g |= f[var := v]``; ``f`` may have no other free variable."""
    return [v for v in g.vertices if evaluate(g, f, {var: v})]
