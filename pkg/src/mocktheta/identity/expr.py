"""Expression trees for q-series identities, and their canonical text form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from ..appell import AppellSpec, LerchSpec
from ..cyclotomic import CycNum
from ..mock import MockName
from ..qseries import Monomial
from ..theta import ThetaSpec, named_spec


class Expr:
    """Base class; concrete nodes are frozen dataclasses (structural equality)."""

    __slots__ = ()

    def __add__(self, other: Expr) -> Expr:
        return Add(self, other)

    def __sub__(self, other: Expr) -> Expr:
        return Sub(self, other)

    def __mul__(self, other: Expr) -> Expr:
        return Mul(self, other)

    def __truediv__(self, other: Expr) -> Expr:
        return Div(self, other)

    def __neg__(self) -> Expr:
        return Neg(self)

    def __pow__(self, k: int) -> Expr:
        return IntPow(self, k)

    def children(self) -> tuple:
        return ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Const(Expr):
    value: CycNum


@dataclass(frozen=True)
class QPow(Expr):
    exp: int


@dataclass(frozen=True)
class ThetaAtom(Expr):
    spec: ThetaSpec


@dataclass(frozen=True)
class NamedJ(Expr):
    """kind is ``J``, ``Jbar`` or ``Jeta``; ``b`` is None for ``Jeta``."""

    kind: str
    a: int
    b: Optional[int] = None

    @property
    def spec(self) -> ThetaSpec:
        return named_spec(self.kind, self.a, self.b)


@dataclass(frozen=True)
class AppellAtom(Expr):
    spec: AppellSpec


@dataclass(frozen=True)
class LerchAtom(Expr):
    spec: LerchSpec


@dataclass(frozen=True)
class MockAtom(Expr):
    name: MockName
    arg: Monomial


@dataclass(frozen=True)
class PochAtom(Expr):
    """(x; base)_n with ``n = None`` for the infinite product."""

    x: Monomial
    base: Monomial
    n: Optional[int] = None


@dataclass(frozen=True)
class Neg(Expr):
    a: Expr

    def children(self) -> tuple:
        return (self.a,)


@dataclass(frozen=True)
class Add(Expr):
    a: Expr
    b: Expr

    def children(self) -> tuple:
        return (self.a, self.b)


@dataclass(frozen=True)
class Sub(Expr):
    a: Expr
    b: Expr

    def children(self) -> tuple:
        return (self.a, self.b)


@dataclass(frozen=True)
class Mul(Expr):
    a: Expr
    b: Expr

    def children(self) -> tuple:
        return (self.a, self.b)


@dataclass(frozen=True)
class Div(Expr):
    a: Expr
    b: Expr

    def children(self) -> tuple:
        return (self.a, self.b)


@dataclass(frozen=True)
class IntPow(Expr):
    a: Expr
    k: int

    def children(self) -> tuple:
        return (self.a,)


LEAVES = (Const, QPow, ThetaAtom, NamedJ, AppellAtom, LerchAtom, MockAtom, PochAtom)
Node = Union[Const, QPow, ThetaAtom, NamedJ, AppellAtom, LerchAtom, MockAtom, PochAtom,
             Neg, Add, Sub, Mul, Div, IntPow]


def is_leaf(e: Expr) -> bool:
    return isinstance(e, LEAVES)


# -- printing ---------------------------------------------------------------

_SUM, _TERM, _FACTOR, _POWER, _ATOM = 1, 2, 3, 4, 5
_J_NAMES = {"J": "J", "Jbar": "Jb", "Jeta": "Jp"}


def _const_text(c: CycNum) -> tuple[str, int]:
    if c == CycNum(0, 1):
        return "z3", _ATOM
    if c.is_rational():
        r = c.a
        if r < 0:
            return f"-{-r}", _FACTOR
        return str(r), _ATOM if r.denominator == 1 else _TERM
    return f"({c.a} + {c.b}*z3)", _ATOM


def _text(e: Expr) -> tuple[str, int]:
    if isinstance(e, Const):
        return _const_text(e.value)
    if isinstance(e, QPow):
        return ("q", _ATOM) if e.exp == 1 else (f"q^{e.exp}", _POWER)
    if isinstance(e, ThetaAtom):
        return str(e.spec), _ATOM
    if isinstance(e, NamedJ):
        name = _J_NAMES[e.kind]
        args = f"{e.a}" if e.b is None else f"{e.a},{e.b}"
        return f"{name}({args})", _ATOM
    if isinstance(e, (AppellAtom, LerchAtom)):
        return str(e.spec), _ATOM
    if isinstance(e, MockAtom):
        return f"{e.name}({e.arg})", _ATOM
    if isinstance(e, PochAtom):
        n = "inf" if e.n is None else str(e.n)
        return f"poch({e.x};{e.base};{n})", _ATOM
    if isinstance(e, Neg):
        return "-" + _wrap(e.a, _FACTOR), _FACTOR
    if isinstance(e, (Add, Sub)):
        op = " + " if isinstance(e, Add) else " - "
        return _wrap(e.a, _SUM) + op + _wrap(e.b, _TERM), _SUM
    if isinstance(e, (Mul, Div)):
        op = "*" if isinstance(e, Mul) else "/"
        right = _wrap(e.b, _FACTOR)
        if isinstance(e, Div) and isinstance(e.b, Const) and not right.startswith("("):
            # a bare rational here would merge with a preceding "/digits"
            right = f"({right})"
        if right.startswith("-"):
            right = f"({right})"
        return _wrap(e.a, _TERM) + op + right, _TERM
    if isinstance(e, IntPow):
        base = _wrap(e.a, _ATOM)
        if isinstance(e.a, QPow) and not base.startswith("("):
            base = f"({base})"  # "q^k" alone would read back as a single QPow
        return f"{base}^{e.k}", _POWER
    raise TypeError(f"not an expression node: {e!r}")


def _wrap(e: Expr, need: int) -> str:
    s, prec = _text(e)
    return s if prec >= need else f"({s})"


def to_text(e: Expr) -> str:
    """Canonical text; ``parse(to_text(e))`` rebuilds a structurally equal tree."""
    return _text(e)[0]
