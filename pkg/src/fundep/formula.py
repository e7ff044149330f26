"""Dependence formulas: ``false``, atoms ``A |> B`` and right-associative ``->``.

Concrete syntax::

    formula   := implicand ("->" formula)?
    implicand := "false" | atom | "(" formula ")"
    atom      := vlist "|>" vlist
    vlist     := "." | name ("," name)*

``.`` is the empty vertex list.  Whitespace is insignificant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from fundep.errors import IncompleteAssignmentError, InvalidVertexError, ParseError
from fundep.graph import Graph


@dataclass(frozen=True, order=True)
class Atom:
    """``lhs |> rhs``: equilibria agreeing on ``lhs`` agree on ``rhs``."""

    lhs: tuple[str, ...]
    rhs: tuple[str, ...]

    def __init__(self, lhs: Iterable[str], rhs: Iterable[str]):
        object.__setattr__(self, "lhs", tuple(sorted(set(lhs))))
        object.__setattr__(self, "rhs", tuple(sorted(set(rhs))))

    def __str__(self):
        return f"{_vlist(self.lhs)} |> {_vlist(self.rhs)}"

    def __repr__(self):
        return f"Atom({self})"

    @property
    def trivial(self) -> bool:
        return set(self.rhs) <= set(self.lhs)


def _vlist(names) -> str:
    return ",".join(names) if names else "."


class Formula:
    """Base of the three formula node types."""

    __slots__ = ()

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Falsum(Formula):
    def __repr__(self):
        return "Falsum()"


@dataclass(frozen=True)
class Dep(Formula):
    atom: Atom

    def __repr__(self):
        return f"Dep({self.atom})"


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Implies({self.left!r}, {self.right!r})"


FALSE = Falsum()


def dep(lhs: Iterable[str], rhs: Iterable[str]) -> Dep:
    return Dep(Atom(lhs, rhs))


def implies(*parts: Formula) -> Formula:
    """``implies(p, q, r)`` is ``p -> (q -> r)``."""
    out = parts[-1]
    for part in reversed(parts[:-1]):
        out = Implies(part, out)
    return out


def negate(f: Formula) -> Formula:
    return Implies(f, FALSE)


_TOKEN_RE = re.compile(r"\s*(?:(->)|(\|>)|([(),.])|([a-z0-9_]+)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        arrow, dep_op, punct, name, junk = m.groups()
        start = m.start(m.lastindex)
        if junk is not None:
            raise ParseError(f"unexpected character {junk!r}", start)
        if name is not None:
            kind = "false" if name == "false" else "name"
            tokens.append((kind, name, start))
        else:
            tok = arrow or dep_op or punct
            tokens.append((tok, tok, start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, graph: Optional[Graph]):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.graph = graph

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind: str):
        tok = self.tokens[self.pos]
        if tok[0] != kind:
            want = "end of input" if kind == "eof" else repr(kind)
            got = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {want}, found {got}", tok[2])
        self.pos += 1
        return tok

    def formula(self) -> Formula:
        left = self.implicand()
        if self.peek()[0] == "->":
            self.pos += 1
            return Implies(left, self.formula())
        return left

    def implicand(self) -> Formula:
        kind, _, where = self.peek()
        if kind == "false":
            self.pos += 1
            return FALSE
        if kind == "(":
            self.pos += 1
            inner = self.formula()
            self.take(")")
            return inner
        if kind in ("name", "."):
            lhs = self.vlist()
            self.take("|>")
            rhs = self.vlist()
            return Dep(Atom(lhs, rhs))
        got = "end of input" if kind == "eof" else repr(self.peek()[1])
        raise ParseError(f"expected formula, found {got}", where)

    def vlist(self) -> list[str]:
        if self.peek()[0] == ".":
            self.pos += 1
            return []
        names = [self.name()]
        while self.peek()[0] == ",":
            self.pos += 1
            names.append(self.name())
        return names

    def name(self) -> str:
        _, name, where = self.take("name")
        if self.graph is not None and name not in self.graph.index:
            raise InvalidVertexError(name, f"position {where}")
        return name


def parse(text: str, graph: Optional[Graph] = None) -> Formula:
    """Parse ``text``; with ``graph`` given, every vertex name must belong to it."""
    if not text or not text.strip():
        raise ParseError("empty formula", 0)
    p = _Parser(text, graph)
    f = p.formula()
    p.take("eof")
    return f


def parse_atom(text: str, graph: Optional[Graph] = None) -> Atom:
    f = parse(text, graph)
    if not isinstance(f, Dep):
        raise ParseError("expected a single dependence atom", 0)
    return f.atom


def render(f: Formula) -> str:
    if isinstance(f, Falsum):
        return "false"
    if isinstance(f, Dep):
        return str(f.atom)
    if isinstance(f, Implies):
        left = render(f.left)
        if isinstance(f.left, Implies):
            left = f"({left})"
        return f"{left} -> {render(f.right)}"
    raise TypeError(f"not a formula: {f!r}")


def atoms_of(f: Formula) -> frozenset[Atom]:
    out = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Dep):
            out.add(node.atom)
        elif isinstance(node, Implies):
            stack.append(node.left)
            stack.append(node.right)
    return frozenset(out)


def eval_prop(f: Formula, truth: Mapping[Atom, bool]) -> bool:
    """Classical truth value of ``f`` with atoms read from ``truth``."""
    if isinstance(f, Falsum):
        return False
    if isinstance(f, Dep):
        try:
            return bool(truth[f.atom])
        except KeyError:
            raise IncompleteAssignmentError(f"no truth value for atom {f.atom}") from None
    if isinstance(f, Implies):
        return (not eval_prop(f.left, truth)) or eval_prop(f.right, truth)
    raise TypeError(f"not a formula: {f!r}")


def check_formula(f: Formula, graph: Graph) -> None:
    """Raise InvalidVertexError if ``f`` mentions a vertex outside ``graph``."""
    for atom in atoms_of(f):
        for name in atom.lhs + atom.rhs:
            graph.check_vertex(name)


AtomLike = Union[Atom, str]


def as_atom(a: AtomLike, graph: Optional[Graph] = None) -> Atom:
    if isinstance(a, Atom):
        if graph is not None:
            check_formula(Dep(a), graph)
        return a
    return parse_atom(a, graph)
