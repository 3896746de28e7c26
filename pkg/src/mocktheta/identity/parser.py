"""Recursive-descent parser for the q-series expression language.

    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := "-" factor | atom ("^" sint)?
    atom   := rational | "z3" | "q" ("^" sint)? | call | "(" expr ")"
    mono   := (unit "*")? "q" ("^" sint)? | unit
    unit   := "-"? ("1" | "z3" | "z3^2")

Rationals are greedy: ``x/2/3`` reads as ``x/(2/3)``.  Inside monomial slots
``-q`` is accepted for ``-1*q`` and ``unit*1`` for ``unit``.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from ..appell import AppellSpec, LerchSpec
from ..cyclotomic import ZETA3, CycNum, Unit
from ..errors import ParseError
from ..mock import MockName
from ..qseries import Monomial
from ..theta import ThetaSpec
from .expr import (
    Add, AppellAtom, Const, Div, Expr, IntPow, LerchAtom, MockAtom, Mul, NamedJ,
    Neg, PochAtom, QPow, Sub, ThetaAtom,
)

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S)")
_MOCK_NAMES = {m.value for m in MockName}
_J_KINDS = {"J": "J", "Jb": "Jbar", "Jp": "Jeta"}
_UNIT_START = {"-", "1", "z3"}


class Token(NamedTuple):
    kind: str  # "num", "name", "op", "end"
    text: str
    offset: int


def tokenize(text: str) -> list[Token]:
    """Split into tokens carrying their byte offset into the UTF-8 input."""
    out = []
    boff = lambda i: len(text[:i].encode())
    for m in _TOKEN.finditer(text):
        num, name, op = m.groups()
        if num:
            out.append(Token("num", num, boff(m.start())))
        elif name:
            out.append(Token("name", name, boff(m.start())))
        elif op in "+-*/^(),;":
            out.append(Token("op", op, boff(m.start())))
        else:
            raise ParseError(f"unexpected character {op!r}", boff(m.start()), {"expression"})
    out.append(Token("end", "", len(text.encode())))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    # -- token helpers -------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text: str, k: int = 0) -> bool:
        t = self.peek(k)
        return t.kind != "end" and t.text == text

    def fail(self, expected, what: str | None = None):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        msg = what or f"expected {' or '.join(sorted(expected))}, found {found}"
        raise ParseError(msg, t.offset, expected)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail({text})
        t = self.tok
        self.i += 1
        return t

    def number(self) -> int:
        if self.tok.kind != "num":
            self.fail({"integer"})
        t = self.tok
        self.i += 1
        return int(t.text)

    def sint(self) -> int:
        if self.at("-"):
            self.i += 1
            return -self.number()
        return self.number()

    # -- grammar ------------------------------------------------------------

    def expr(self) -> Expr:
        e = self.term()
        while self.at("+") or self.at("-"):
            op = self.tok.text
            self.i += 1
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.at("*") or self.at("/"):
            op = self.tok.text
            self.i += 1
            rhs = self.factor()
            e = Mul(e, rhs) if op == "*" else Div(e, rhs)
        return e

    def factor(self) -> Expr:
        if self.at("-"):
            self.i += 1
            return Neg(self.factor())
        a = self.atom()
        if self.at("^"):
            self.i += 1
            a = IntPow(a, self.sint())
        return a

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            return Const(self.rational())
        if self.at("("):
            self.i += 1
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "name":
            name = t.text
            if name == "z3":
                self.i += 1
                return Const(ZETA3)
            if name == "q":
                self.i += 1
                if self.at("^"):
                    self.i += 1
                    return QPow(self.sint())
                return QPow(1)
            if self.at("(", 1):
                if name == "j":
                    return self.jcall()
                if name in _J_KINDS:
                    return self.namedj()
                if name == "m":
                    return self.mcall()
                if name == "lerch":
                    return self.lcall()
                if name == "poch":
                    return self.pcall()
                if name in _MOCK_NAMES:
                    return self.mockcall()
            self.fail(_ATOM_START, f"unknown name {name!r}")
        self.fail(_ATOM_START)

    def rational(self) -> CycNum:
        num = self.number()
        if self.at("/") and self.peek(1).kind == "num":
            self.i += 1
            den = self.number()
            if den == 0:
                raise ParseError("zero denominator in rational literal", self.peek(-1).offset, {"positive integer"})
            return CycNum(num) / den
        return CycNum(num)

    def unit(self) -> Unit:
        k = 0
        if self.at("-"):
            self.i += 1
            k = 3
        if self.at("1"):
            self.i += 1
            return Unit(k)
        if self.at("z3"):
            self.i += 1
            e = 1
            if self.at("^"):
                self.i += 1
                e = self.sint()
            return Unit(k + 2 * e)
        self.fail({"1", "z3"})

    def mono(self) -> Monomial:
        if self.at("q"):
            return self._qpart(Unit(0))
        if self.at("-") and self.at("q", 1):
            self.i += 1
            return self._qpart(Unit(3))
        if not any(self.at(s) for s in _UNIT_START):
            self.fail({"q", "1", "z3", "-"})
        u = self.unit()
        if self.at("*"):
            self.i += 1
            if self.at("1"):
                self.i += 1
                return Monomial(u, 0)
            if not self.at("q"):
                self.fail({"q"})
            return self._qpart(u)
        return Monomial(u, 0)

    def _qpart(self, u: Unit) -> Monomial:
        self.expect("q")
        e = 1
        if self.at("^"):
            self.i += 1
            e = self.sint()
        return Monomial(u, e)

    def _build(self, offset: int, factory, *args):
        try:
            return factory(*args)
        except ValueError as exc:
            raise ParseError(str(exc), offset, set()) from None

    def jcall(self) -> Expr:
        off = self.tok.offset
        self.i += 1
        self.expect("(")
        z = self.mono()
        self.expect(";")
        b = self.mono()
        self.expect(")")
        return ThetaAtom(self._build(off, ThetaSpec, z, b))

    def namedj(self) -> Expr:
        off, label = self.tok.offset, self.tok.text
        kind = _J_KINDS[label]
        self.i += 1
        self.expect("(")
        a = self.sint()
        b = None
        if kind == "Jeta":
            if a < 1:
                raise ParseError("Jp(a) needs a >= 1", off, set())
        else:
            self.expect(",")
            b = self.sint()
            if b < 1:
                raise ParseError(f"{label}(a,b) needs b >= 1", off, set())
        self.expect(")")
        return NamedJ(kind, a, b)

    def mcall(self) -> Expr:
        off = self.tok.offset
        self.i += 1
        self.expect("(")
        x = self.mono()
        self.expect(",")
        z = self.mono()
        self.expect(";")
        b = self.mono()
        self.expect(")")
        return AppellAtom(self._build(off, AppellSpec, x, z, b))

    def lcall(self) -> Expr:
        off = self.tok.offset
        self.i += 1
        self.expect("(")
        u = self.unit()
        self.expect(";")
        a2 = self.sint()
        self.expect(",")
        a1 = self.sint()
        self.expect(",")
        a0 = self.sint()
        self.expect(";")
        w = self.unit()
        self.expect(";")
        c = self.sint()
        self.expect(",")
        d = self.sint()
        self.expect(")")
        return LerchAtom(self._build(off, LerchSpec, u, a2, a1, a0, w, c, d))

    def mockcall(self) -> Expr:
        off = self.tok.offset
        name = MockName(self.tok.text)
        self.i += 1
        self.expect("(")
        arg = self.mono()
        self.expect(")")
        if arg.exp < 1:
            raise ParseError(f"{name} needs an argument u*q^k with k >= 1", off, set())
        return MockAtom(name, arg)

    def pcall(self) -> Expr:
        self.i += 1
        self.expect("(")
        x = self.mono()
        self.expect(";")
        b = self.mono()
        self.expect(";")
        if self.at("inf"):
            self.i += 1
            n = None
        else:
            off = self.tok.offset
            n = self.sint()
            if n < 0:
                raise ParseError("finite Pochhammer length must be nonnegative", off, {"nonnegative integer", "inf"})
        self.expect(")")
        return PochAtom(x, b, n)


_ATOM_START = frozenset(
    {"number", "z3", "q", "(", "j", "J", "Jb", "Jp", "m", "lerch", "poch"} | _MOCK_NAMES
)


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression tree; raises :class:`ParseError`."""
    p = _Parser(text)
    e = p.expr()
    if p.tok.kind != "end":
        p.fail({"+", "-", "*", "/", "end of input"})
    return e


def parse_mono(text: str) -> Monomial:
    p = _Parser(text)
    m = p.mono()
    if p.tok.kind != "end":
        p.fail({"end of input"})
    return m
