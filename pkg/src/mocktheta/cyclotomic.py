"""Exact arithmetic in Q(z3), z3 = exp(2*pi*i/3), and its sixth roots of unity.

Elements are ``a + b*z3`` with rational ``a`` and ``b``.  Products are reduced
with ``z3**2 = -1 - z3``.  Rational parts are kept as ``int`` whenever they are
integral, which keeps the inner loops of series multiplication on the fast
integer path; anything non-integral is a reduced :class:`fractions.Fraction`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

from .errors import DivisionByZero

Rational = Union[int, Fraction]


def as_rational(x) -> Rational:
    """Normalize ``x`` to ``int`` when integral, else a reduced Fraction."""
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, (_RationalABC, str)):
        return as_rational(Fraction(x))
    if isinstance(x, bool):
        return int(x)
    raise TypeError(f"not a rational: {x!r}")


def _norm(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


class CycNum:
    """An element ``a + b*z3`` of Q(z3); immutable."""

    __slots__ = ("_a", "_b")

    def __init__(self, a=0, b=0):
        self._a = as_rational(a)
        self._b = as_rational(b)

    @classmethod
    def _raw(cls, a, b) -> CycNum:
        # trusted constructor: a, b already int or reduced Fraction
        obj = object.__new__(cls)
        obj._a = _norm(a)
        obj._b = _norm(b)
        return obj

    @property
    def a(self) -> Fraction:
        return Fraction(self._a)

    @property
    def b(self) -> Fraction:
        return Fraction(self._b)

    @property
    def parts(self) -> tuple:
        return self._a, self._b

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def is_rational(self) -> bool:
        return self._b == 0

    def is_integer(self) -> bool:
        return self._b == 0 and type(self._a) is int

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- field operations -------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, CycNum):
            return other
        if isinstance(other, Unit):
            return other.to_cyc()
        if isinstance(other, (int, Fraction)):
            return CycNum(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNum._raw(self._a + o._a, self._b + o._b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNum._raw(self._a - o._a, self._b - o._b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> CycNum:
        return CycNum._raw(-self._a, -self._b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self._a, self._b, o._a, o._b
        bd = b * d
        return CycNum._raw(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def inverse(self) -> CycNum:
        return cyc_inv(self)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * cyc_inv(o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * cyc_inv(self)

    def __pow__(self, e: int) -> CycNum:
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else cyc_inv(self)
        result = ONE
        e = abs(e)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def norm(self) -> Rational:
        """Field norm a^2 - a*b + b^2 (always a nonnegative rational)."""
        a, b = self._a, self._b
        return _norm(a * a - a * b + b * b)

    def conjugate(self) -> CycNum:
        """Galois conjugate z3 -> z3**2."""
        # a + b*z3^2 = a + b*(-1 - z3)
        return CycNum._raw(self._a - self._b, -self._b)

    def mul_unit(self, k: int) -> CycNum:
        """Multiply by the sixth root of unity exp(k*pi*i/3)."""
        a, b = self._a, self._b
        k %= 6
        if k == 0:
            return self
        if k == 3:
            return CycNum._raw(-a, -b)
        if k == 2:  # * z3
            return CycNum._raw(-b, a - b)
        if k == 4:  # * z3^2
            return CycNum._raw(b - a, -a)
        if k == 1:  # * (1 + z3)
            return CycNum._raw(a - b, a)
        return CycNum._raw(b, b - a)  # k == 5: * (-z3)

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b))

    def __repr__(self) -> str:
        return f"CycNum({str(self._a)!r}, {str(self._b)!r})"

    def __str__(self) -> str:
        if self._b == 0:
            return str(self._a)
        return f"{self._a} + {self._b}*z3"

    @classmethod
    def parse(cls, text: str) -> CycNum:
        """Inverse of ``str``: accepts exactly ``"p/q"`` or ``"p/q + r/s*z3"``."""
        m = _CYC_RE.fullmatch(text)
        if m is None:
            raise ValueError(f"malformed CycNum text: {text!r}")
        a = Fraction(m.group(1))
        b = Fraction(m.group(2)) if m.group(2) is not None else Fraction(0)
        if m.group(2) is not None and b == 0:
            raise ValueError(f"non-canonical CycNum text: {text!r}")
        return cls(a, b)


_RAT = r"-?\d+(?:/\d+)?"
_CYC_RE = re.compile(rf"({_RAT})(?: \+ ({_RAT})\*z3)?")

ZERO = CycNum(0)
ONE = CycNum(1)
ZETA3 = CycNum(0, 1)
ZETA3_SQ = CycNum(-1, -1)
I_SQRT3 = CycNum(1, 2)  # z3 - z3^2 = 1 + 2*z3 = i*sqrt(3)


def cyc_arith(x: CycNum, y: CycNum, op: str) -> CycNum:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


def cyc_inv(x: CycNum) -> CycNum:
    """Inverse via the norm: 1/(a + b z3) = (a - b - b z3) / (a^2 - ab + b^2)."""
    nrm = x.norm()
    if nrm == 0:
        raise DivisionByZero("inverse of zero in Q(z3)")
    a, b = x._a, x._b
    if nrm == 1:
        return CycNum._raw(a - b, -b)
    return CycNum._raw(Fraction(a - b) / nrm, Fraction(-b) / nrm)


# embedding table: index k -> (a, b) with exp(k*pi*i/3) = a + b*z3
_UNIT_PARTS = ((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1))
_UNIT_NAMES = ("1", "-z3^2", "z3", "-1", "z3^2", "-z3")


class Unit:
    """A sixth root of unity exp(k*pi*i/3) = (-z3**2)**k, k in 0..5."""

    __slots__ = ("_k",)

    def __init__(self, k: int = 0):
        self._k = k % 6

    @property
    def k(self) -> int:
        return self._k

    def __mul__(self, other):
        if isinstance(other, Unit):
            return Unit(self._k + other._k)
        if isinstance(other, CycNum):
            return other.mul_unit(self._k)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, CycNum):
            return other.mul_unit(self._k)
        return NotImplemented

    def inverse(self) -> Unit:
        return Unit(-self._k)

    def __truediv__(self, other: Unit) -> Unit:
        return Unit(self._k - other._k)

    def __pow__(self, e: int) -> Unit:
        return unit_pow(self, e)

    def __neg__(self) -> Unit:
        return Unit(self._k + 3)

    def to_cyc(self) -> CycNum:
        return CycNum._raw(*_UNIT_PARTS[self._k])

    def is_one(self) -> bool:
        return self._k == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Unit):
            return self._k == other._k
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Unit", self._k))

    def __repr__(self) -> str:
        return f"Unit({self._k})"

    def __str__(self) -> str:
        return _UNIT_NAMES[self._k]

    @classmethod
    def from_name(cls, name: str) -> Unit:
        return cls(_UNIT_NAMES.index(name))


def unit_pow(u: Unit, e: int) -> Unit:
    return Unit(u.k * e)


UNIT_ONE = Unit(0)
UNIT_NEG = Unit(3)
UNIT_Z3 = Unit(2)
UNIT_Z3_SQ = Unit(4)
