"""Build named digraphs from a small expression language.

Grammar (whitespace ignored, case-insensitive):

    expr  := term ('+' term)*
    term  := [COUNT '*'] atom
    atom  := NAME | 'inflate' '(' expr ';' SIZE (',' SIZE)* ')'

Names: alphaN (acyclic tournament with involution on 2N vertices), zeta4,
c3 (reflexive oriented triangle), kN (complete reflexive), one (= k1),
chainN, vee, wedge, diamond, nposet.  Inflation sizes are listed per vertex
of the inner expression.
"""

from __future__ import annotations

import re

from .digraph import Digraph, complete_reflexive, disjoint_union, inflate, make_digraph, oriented_cycle
from .errors import InputError
from .involution import make_alpha, make_zeta4

_TOKEN = re.compile(r"\s*([A-Za-z][A-Za-z0-9]*|\d+|[*+();,])")


def chain_poset(n: int) -> Digraph:
    """The n-element chain, transitively closed and reflexive."""
    if n < 1:
        raise InputError("chains need at least one element")
    return make_digraph(n, [(i, j) for i in range(n) for j in range(i, n)])


def vee_poset() -> Digraph:
    """One bottom below two incomparable tops."""
    return make_digraph(3, [(v, v) for v in range(3)] + [(0, 1), (0, 2)])


def wedge_poset() -> Digraph:
    """Two incomparable bottoms below one top."""
    return make_digraph(3, [(v, v) for v in range(3)] + [(0, 2), (1, 2)])


def diamond_poset() -> Digraph:
    """Bottom, two incomparable middles, top; the four-element lattice."""
    return make_digraph(
        4, [(v, v) for v in range(4)] + [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]
    )


def n_poset() -> Digraph:
    """The four-element N shape; the smallest non-homogeneous poset."""
    return make_digraph(4, [(v, v) for v in range(4)] + [(0, 2), (1, 2), (1, 3)])


def _atom(name: str) -> Digraph:
    if name == "zeta4":
        return make_zeta4()
    if name == "c3":
        return oriented_cycle(3, reflexive=True)
    if name == "one":
        return complete_reflexive(1)
    if name == "vee":
        return vee_poset()
    if name == "wedge":
        return wedge_poset()
    if name == "diamond":
        return diamond_poset()
    if name == "nposet":
        return n_poset()
    m = re.fullmatch(r"alpha(\d+)", name)
    if m:
        return make_alpha(int(m.group(1)))
    m = re.fullmatch(r"k(\d+)", name)
    if m:
        return complete_reflexive(int(m.group(1)))
    m = re.fullmatch(r"chain(\d+)", name)
    if m:
        return chain_poset(int(m.group(1)))
    raise InputError(f"unknown generator name {name!r}")


class _Parser:
    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                if text[pos:].strip():
                    raise InputError(f"bad generator spec near {text[pos:pos + 10]!r}")
                break
            self.tokens.append(m.group(1).lower())
            pos = m.end()
        self.at = 0

    def peek(self) -> str | None:
        return self.tokens[self.at] if self.at < len(self.tokens) else None

    def take(self) -> str:
        if self.at >= len(self.tokens):
            raise InputError("generator spec ended unexpectedly")
        tok = self.tokens[self.at]
        self.at += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.take()
        if got != tok:
            raise InputError(f"expected {tok!r} in generator spec, got {got!r}")

    def expr(self) -> Digraph:
        parts = [self.term()]
        while self.peek() == "+":
            self.take()
            parts.append(self.term())
        return disjoint_union(parts)

    def term(self) -> Digraph:
        tok = self.take()
        if tok.isdigit():
            count = int(tok)
            self.expect("*")
            atom = self.atom_or_inflate()
            return disjoint_union([atom] * count)
        self.at -= 1
        return self.atom_or_inflate()

    def atom_or_inflate(self) -> Digraph:
        tok = self.take()
        if tok == "inflate":
            self.expect("(")
            inner = self.expr()
            self.expect(";")
            sizes = [int(self.take_number())]
            while self.peek() == ",":
                self.take()
                sizes.append(int(self.take_number()))
            self.expect(")")
            inflated, _ = inflate(inner, sizes)
            return inflated
        if tok == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if tok.isalpha() and (nxt := self.peek()) is not None and nxt.isdigit():
            # allow a separated parameter, e.g. "alpha 3" for "alpha3"
            try:
                return _atom(tok)
            except InputError:
                return _atom(tok + self.take())
        return _atom(tok)

    def take_number(self) -> str:
        tok = self.take()
        if not tok.isdigit():
            raise InputError(f"expected a number in generator spec, got {tok!r}")
        return tok


def from_spec(text: str) -> Digraph:
    """Parse a generator expression into a digraph."""
    parser = _Parser(text)
    if parser.peek() is None:
        raise InputError("empty generator spec")
    result = parser.expr()
    if parser.peek() is not None:
        raise InputError(f"trailing tokens in generator spec: {parser.tokens[parser.at:]}")
    return result
