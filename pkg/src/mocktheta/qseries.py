"""Truncated sparse Laurent series in q over Q(z3).

A :class:`QSeries` stores its nonzero coefficients keyed by exponent together
with a validity order ``N``: every coefficient with exponent ``<= N`` is exact,
nothing is known above ``N``.  Each operation states how ``N`` propagates;
these formulas are what keep Laurent shifts and substitutions honest.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .cyclotomic import ONE, ZERO, CycNum, Unit, UNIT_ONE, _norm
from .errors import InsufficientOrder, ZeroSeries

INF = math.inf


@dataclass(frozen=True)
class Monomial:
    """``unit * q**exp``."""

    unit: Unit = UNIT_ONE
    exp: int = 0

    def __mul__(self, other: Monomial) -> Monomial:
        if isinstance(other, Monomial):
            return Monomial(self.unit * other.unit, self.exp + other.exp)
        return NotImplemented

    def __truediv__(self, other: Monomial) -> Monomial:
        return Monomial(self.unit / other.unit, self.exp - other.exp)

    def __pow__(self, e: int) -> Monomial:
        return Monomial(self.unit ** e, self.exp * e)

    def __neg__(self) -> Monomial:
        return Monomial(-self.unit, self.exp)

    def inverse(self) -> Monomial:
        return Monomial(self.unit.inverse(), -self.exp)

    def to_series(self, order: int) -> QSeries:
        return QSeries({self.exp: self.unit.to_cyc()}, order)

    def __str__(self) -> str:
        u = str(self.unit)
        if self.exp == 0:
            return u
        qpart = "q" if self.exp == 1 else f"q^{self.exp}"
        return qpart if self.unit.is_one() else f"{u}*{qpart}"


def mono(exp: int = 0, k: int = 0) -> Monomial:
    """Shorthand: ``mono(e, k)`` is exp(k*pi*i/3) * q**e."""
    return Monomial(Unit(k), exp)


@dataclass(frozen=True)
class Mismatch:
    exponent: int
    lhs: CycNum
    rhs: CycNum


class QSeries:
    """Immutable truncated Laurent series: nonzero terms up to ``order``."""

    __slots__ = ("_terms", "_order", "_exps")

    def __init__(self, terms: Mapping[int, object] | None = None, order: int = 0):
        clean = {}
        if terms:
            for e, c in terms.items():
                if e > order:
                    continue
                c = c if isinstance(c, CycNum) else CycNum(c)
                if not c.is_zero():
                    clean[e] = c
        self._set(clean, order)

    def _set(self, terms: dict, order: int):
        self._terms = terms
        self._order = order
        self._exps = None

    @classmethod
    def _from_clean(cls, terms: dict, order: int) -> QSeries:
        obj = object.__new__(cls)
        obj._set(terms, order)
        return obj

    @classmethod
    def zero(cls, order: int) -> QSeries:
        return cls._from_clean({}, order)

    @classmethod
    def one(cls, order: int) -> QSeries:
        return cls.constant(ONE, order)

    @classmethod
    def constant(cls, c, order: int) -> QSeries:
        return cls({0: c}, order)

    @classmethod
    def from_parts(cls, parts: Mapping[int, tuple], order: int) -> QSeries:
        """Build from ``{exp: (a, b)}`` raw rational pairs, dropping zeros."""
        terms = {}
        for e, (a, b) in parts.items():
            if e <= order and (a or b):
                terms[e] = CycNum._raw(a, b)
        return cls._from_clean(terms, order)

    # -- accessors --------------------------------------------------------

    @property
    def order(self) -> int:
        return self._order

    @property
    def valuation(self):
        """Lowest exponent with a nonzero coefficient; ``math.inf`` if none."""
        if not self._terms:
            return INF
        return self.exponents[0]

    @property
    def effective_valuation(self):
        """Valuation, or ``order + 1`` for a series that is zero to its order."""
        return self.exponents[0] if self._terms else self._order + 1

    @property
    def exponents(self) -> list:
        if self._exps is None:
            self._exps = sorted(self._terms)
        return self._exps

    def terms(self) -> list:
        """``(exp, coeff)`` pairs in ascending exponent order."""
        t = self._terms
        return [(e, t[e]) for e in self.exponents]

    def coeff(self, e: int) -> CycNum:
        if e > self._order:
            raise InsufficientOrder(f"coefficient of q^{e} requested, series exact only to q^{self._order}")
        return self._terms.get(e, ZERO)

    __getitem__ = coeff

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self._terms.values())

    def __len__(self) -> int:
        return len(self._terms)

    def truncate(self, order: int) -> QSeries:
        if order > self._order:
            raise InsufficientOrder(f"cannot extend series exact to q^{self._order} up to q^{order}")
        if order == self._order:
            return self
        t = self._terms
        return QSeries._from_clean({e: t[e] for e in self.exponents if e <= order}, order)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _lift(other, self._order)
        return ps_add(self, other) if other is not None else NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift(other, self._order)
        return ps_add(self, -other) if other is not None else NotImplemented

    def __rsub__(self, other):
        other = _lift(other, self._order)
        return ps_add(other, -self) if other is not None else NotImplemented

    def __neg__(self) -> QSeries:
        return QSeries._from_clean({e: -c for e, c in self._terms.items()}, self._order)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return ps_mul(self, other)
        if isinstance(other, Monomial):
            return self.mul_monomial(other)
        c = _as_cyc(other)
        return self.scale(c) if c is not None else NotImplemented

    __rmul__ = __mul__

    def __pow__(self, e: int) -> QSeries:
        return ps_pow(self, e)

    def scale(self, c: CycNum) -> QSeries:
        """Multiply by a constant; order unchanged."""
        if c.is_zero():
            return QSeries.zero(self._order)
        if c == ONE:
            return self
        return QSeries._from_clean({e: v * c for e, v in self._terms.items()}, self._order)

    def mul_monomial(self, m: Monomial) -> QSeries:
        """Multiply by ``u*q^s``: exponents and order shift by ``s``."""
        k, s = m.unit.k, m.exp
        return QSeries._from_clean({e + s: v.mul_unit(k) for e, v in self._terms.items()}, self._order + s)

    def shift(self, s: int) -> QSeries:
        return self.mul_monomial(Monomial(UNIT_ONE, s))

    # -- comparison / printing -------------------------------------------

    def same_as(self, other: QSeries) -> bool:
        """Structural identity: same order and same coefficients."""
        return self._order == other._order and self._terms == other._terms

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.same_as(other)

    __hash__ = None

    def __repr__(self) -> str:
        return f"QSeries({self})"

    def __str__(self) -> str:
        parts = [f"({c})*q^{e}" for e, c in self.terms()]
        if not parts:
            parts = ["0"]
        return " + ".join(parts) + f" + O(q^{self._order + 1})"

    def to_json(self) -> dict:
        return {
            "order": self._order,
            "terms": [[e, str(c)] for e, c in self.terms()],
        }


def _as_cyc(x):
    if isinstance(x, CycNum):
        return x
    if isinstance(x, Unit):
        return x.to_cyc()
    if isinstance(x, (int, Fraction)):
        return CycNum(x)
    return None


def _lift(x, order):
    if isinstance(x, QSeries):
        return x
    c = _as_cyc(x)
    return None if c is None else QSeries.constant(c, order)


def series(terms: Mapping[int, object] | Iterable, order: int) -> QSeries:
    """Build a series from ``{exp: coeff}`` or a dense coefficient list from q^0."""
    if not isinstance(terms, Mapping):
        terms = dict(enumerate(terms))
    return QSeries(terms, order)


# -- core operations ------------------------------------------------------

def ps_add(a: QSeries, b: QSeries) -> QSeries:
    """Coefficientwise sum; order = min of the operands' orders."""
    order = min(a.order, b.order)
    out = {}
    for src in (a._terms, b._terms):
        for e, c in src.items():
            if e > order:
                continue
            prev = out.get(e)
            out[e] = c if prev is None else prev + c
    return QSeries._from_clean({e: c for e, c in out.items() if not c.is_zero()}, order)


def ps_sum(items: Iterable[QSeries]) -> QSeries:
    items = list(items)
    if not items:
        raise ValueError("empty sum has no order")
    order = min(s.order for s in items)
    acc_a: dict = {}
    acc_b: dict = {}
    for s in items:
        for e, c in s._terms.items():
            if e <= order:
                acc_a[e] = acc_a.get(e, 0) + c._a
                acc_b[e] = acc_b.get(e, 0) + c._b
    return QSeries.from_parts({e: (acc_a[e], acc_b[e]) for e in acc_a}, order)


def product_order(a: QSeries, b: QSeries) -> int:
    """Largest exponent at which ``a*b`` is provably exact."""
    return min(a.order + b.effective_valuation, b.order + a.effective_valuation)


def ps_mul(a: QSeries, b: QSeries, order: int | None = None) -> QSeries:
    """Cauchy product; result order ``min(Na + vb, Nb + va)``.

    ``order`` optionally truncates further (it may not exceed the exact order).
    """
    n = product_order(a, b)
    if order is not None:
        if order > n:
            raise InsufficientOrder(f"product exact only to q^{n}, requested q^{order}")
        n = order
    if not a._terms or not b._terms:
        return QSeries.zero(n)
    ta = [(e, c._a, c._b) for e, c in a.terms()]
    tb = [(e, c._a, c._b) for e, c in b.terms()]
    if len(ta) > len(tb):
        ta, tb = tb, ta
    eb_list = [t[0] for t in tb]
    lo = ta[0][0] + tb[0][0]
    if lo > n:
        return QSeries.zero(n)
    size = n - lo + 1
    re = [0] * size
    rational = all(t[2] == 0 for t in ta) and all(t[2] == 0 for t in tb)
    if rational:
        for ea, x, _ in ta:
            stop = bisect_right(eb_list, n - ea)
            base = ea - lo
            for i in range(stop):
                eb, y, _ = tb[i]
                re[base + eb] += x * y
        return QSeries._from_clean(
            {lo + i: CycNum._raw(v, 0) for i, v in enumerate(re) if v}, n
        )
    im = [0] * size
    for ea, x1, y1 in ta:
        stop = bisect_right(eb_list, n - ea)
        base = ea - lo
        if y1 == 0:
            for i in range(stop):
                eb, x2, y2 = tb[i]
                j = base + eb
                re[j] += x1 * x2
                if y2:
                    im[j] += x1 * y2
        else:
            for i in range(stop):
                eb, x2, y2 = tb[i]
                j = base + eb
                yy = y1 * y2
                re[j] += x1 * x2 - yy
                im[j] += x1 * y2 + y1 * x2 - yy
    return QSeries._from_clean(
        {lo + i: CycNum._raw(r, s) for i, (r, s) in enumerate(zip(re, im)) if r or s}, n
    )


def ps_inv(a: QSeries, target_order: int) -> QSeries:
    """Multiplicative inverse exact to ``target_order``.

    Requires ``order(a) >= target_order + 2*valuation(a)``.
    """
    if a.is_zero():
        raise ZeroSeries(f"series is zero through q^{a.order}")
    v = a.valuation
    if a.order < target_order + 2 * v:
        raise InsufficientOrder(
            f"inverse to q^{target_order} needs order >= {target_order + 2 * v}, have {a.order}"
        )
    m = target_order + v  # number of unit-part coefficients needed, minus one
    if m < 0:
        return QSeries.zero(target_order)
    lead = a._terms[v]
    c0 = lead.inverse()
    # sparse tail of the unit part u(q) = a(q) / (lead * q^v) - 1 ... kept unnormalized
    tail = [(e - v, c._a, c._b) for e, c in a.terms()[1:] if e - v <= m]
    ra, rb = [0] * (m + 1), [0] * (m + 1)
    ra[0], rb[0] = c0._a, c0._b
    p0, p1 = c0._a, c0._b
    rational = c0._b == 0 and all(t[2] == 0 for t in tail)
    for n in range(1, m + 1):
        sa = sb = 0
        if rational:
            for k, x, _ in tail:
                if k > n:
                    break
                sa += x * ra[n - k]
        else:
            for k, x, y in tail:
                if k > n:
                    break
                u, w = ra[n - k], rb[n - k]
                yw = y * w
                sa += x * u - yw
                sb += x * w + y * u - yw
        if not (sa or sb):
            continue
        # c_n = -c0 * s
        pb = p1 * sb
        ra[n] = _norm(-(p0 * sa - pb))
        rb[n] = _norm(-(p0 * sb + p1 * sa - pb))
    return QSeries._from_clean(
        {i - v: CycNum._raw(x, y) for i, (x, y) in enumerate(zip(ra, rb)) if x or y},
        target_order,
    )


def ps_div(a: QSeries, b: QSeries, target_order: int) -> QSeries:
    """``a / b`` exact to ``target_order`` (orders of both operands must suffice)."""
    if a.is_zero():
        if a.order - b.valuation < target_order:
            raise InsufficientOrder("numerator order too low for quotient")
        return QSeries.zero(target_order)
    inv = ps_inv(b, target_order - a.valuation)
    return ps_mul(a, inv, target_order)


def ps_pow(a: QSeries, e: int) -> QSeries:
    """Nonnegative integer power by repeated squaring (orders via ``ps_mul``)."""
    if e < 0:
        raise ValueError("negative powers need ps_inv with an explicit target order")
    if e == 0:
        return QSeries.one(a.order)
    base, result = a, None
    while e:
        if e & 1:
            result = base if result is None else ps_mul(result, base)
        e >>= 1
        if e:
            base = ps_mul(base, base)
    return result


def ps_subst(a: QSeries, u: Unit, k: int) -> QSeries:
    """The substitution q -> u*q^k; order becomes ``k*N + k - 1``."""
    if k < 1:
        raise ValueError("substitution exponent must be >= 1")
    uk = u.k
    terms = {k * e: c.mul_unit(uk * e) for e, c in a._terms.items()}
    return QSeries._from_clean(terms, k * a.order + k - 1)


def ps_eq(a: QSeries, b: QSeries, through: int) -> Mismatch | None:
    """``None`` when all coefficients up to ``through`` agree, else the first mismatch."""
    if through > a.order or through > b.order:
        raise InsufficientOrder(
            f"comparison through q^{through} exceeds orders {a.order}, {b.order}"
        )
    ta, tb = a._terms, b._terms
    exps = sorted(e for e in set(ta) | set(tb) if e <= through)
    for e in exps:
        x, y = ta.get(e, ZERO), tb.get(e, ZERO)
        if x != y:
            return Mismatch(e, x, y)
    return None


# -- binomial-factor helpers used by products and Eulerian sums -----------

def mul_binomial(s: QSeries, c: CycNum, k: int, order: int | None = None) -> QSeries:
    """``s * (1 - c*q^k)`` for ``k >= 0``; exact to ``order(s)`` (or ``order``)."""
    n = s.order if order is None else min(order, s.order)
    if k < 0:
        raise ValueError("binomial exponent must be nonnegative")
    t = s._terms
    out_a: dict = {}
    out_b: dict = {}
    ca, cb = c._a, c._b
    for e, v in t.items():
        if e <= n:
            out_a[e] = out_a.get(e, 0) + v._a
            out_b[e] = out_b.get(e, 0) + v._b
        f = e + k
        if f <= n:
            x, y = v._a, v._b
            yb = y * cb
            out_a[f] = out_a.get(f, 0) - (x * ca - yb)
            out_b[f] = out_b.get(f, 0) - (x * cb + y * ca - yb)
    return QSeries.from_parts({e: (out_a[e], out_b[e]) for e in out_a}, n)


def div_binomial(s: QSeries, c: CycNum, k: int, order: int | None = None) -> QSeries:
    """``s / (1 - c*q^k)`` for ``k >= 1`` via the recurrence ``r_e = s_e + c*r_{e-k}``."""
    if k < 1:
        raise ValueError("binomial exponent must be positive")
    n = s.order if order is None else min(order, s.order)
    if s.is_zero():
        return QSeries.zero(n)
    lo = s.exponents[0]
    if lo > n:
        return QSeries.zero(n)
    size = n - lo + 1
    ra, rb = [0] * size, [0] * size
    for e, v in s._terms.items():
        if e <= n:
            ra[e - lo] = v._a
            rb[e - lo] = v._b
    ca, cb = c._a, c._b
    if cb == 0 and all(x == 0 for x in rb):
        if ca == 1:
            for i in range(k, size):
                ra[i] += ra[i - k]
        elif ca == -1:
            for i in range(k, size):
                ra[i] -= ra[i - k]
        else:
            for i in range(k, size):
                ra[i] = _norm(ra[i] + ca * ra[i - k])
    else:
        for i in range(k, size):
            x, y = ra[i - k], rb[i - k]
            if x or y:
                yb = y * cb
                ra[i] = _norm(ra[i] + x * ca - yb)
                rb[i] = _norm(rb[i] + x * cb + y * ca - yb)
    return QSeries.from_parts({lo + i: (x, y) for i, (x, y) in enumerate(zip(ra, rb))}, n)


def quotient(
    target_order: int,
    numerators: Iterable[tuple],
    denominators: Iterable[tuple] = (),
    coeff: CycNum = ONE,
    shift: Monomial = Monomial(),
) -> QSeries:
    """``coeff * shift * prod(num) / prod(den)`` exact to ``target_order``.

    Each factor is a pair ``(valuation, evaluate)`` where ``evaluate(N)`` returns
    a series exact to ``N``.  Numerator valuations may be lower bounds (or
    ``math.inf`` for a known zero); denominator valuations must be exact.
    """
    numerators = list(numerators)
    denominators = list(denominators)
    if coeff.is_zero() or any(v == INF for v, _ in numerators):
        return QSeries.zero(target_order)
    if any(v == INF for v, _ in denominators):
        raise ZeroSeries("theta denominator is identically zero")
    v_num = sum(v for v, _ in numerators)
    v_den = sum(v for v, _ in denominators)
    # the product of numerators must be exact to T_num, the inverse of the
    # denominator product exact to T_inv
    t_num = target_order - shift.exp + v_den
    t_inv = target_order - shift.exp - v_num
    prod = None
    for v, fn in numerators:
        s = fn(max(t_num - (v_num - v), v))
        prod = s if prod is None else ps_mul(prod, s)
    if prod is None:
        prod = QSeries.one(t_num)
    if denominators:
        t_den = t_inv + 2 * v_den
        dprod = None
        for v, fn in denominators:
            s = fn(t_den - (v_den - v))
            dprod = s if dprod is None else ps_mul(dprod, s)
        dprod = dprod.truncate(t_den)
        if dprod.is_zero() or dprod.valuation != v_den:
            raise ZeroSeries("denominator valuation differs from its declared value")
        inv = ps_inv(dprod, t_inv)
        prod = ps_mul(prod, inv)
    out = prod.mul_monomial(shift).scale(coeff)
    return out.truncate(target_order)
