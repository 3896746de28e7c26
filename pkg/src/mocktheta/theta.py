"""Theta functions j(z;q) in sum and product form, plus classical identities.

All parameters are monomials ``u*q^e``.  The base may carry a unit too, so
``j(-q^2; -q^10)`` is expressible directly.  A theta value vanishes exactly when
``z`` is an integer power of the base (unit included); such values are honest
zero series here, and only dividing by one is an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .cyclotomic import ONE, CycNum, Unit
from .errors import DivergentProduct
from .qseries import INF, Monomial, QSeries, mono, mul_binomial, quotient

Factor = tuple  # (valuation, evaluate(order) -> QSeries)


def binom2(n: int) -> int:
    return n * (n - 1) // 2


@dataclass(frozen=True)
class ThetaSpec:
    """The theta value j(z; base)."""

    z: Monomial
    base: Monomial

    def __post_init__(self):
        if self.base.exp < 1:
            raise ValueError(f"theta base must have positive exponent, got {self.base}")

    def reduce(self) -> tuple[Monomial, Monomial]:
        """Split off quasi-periodicity: j(z;b) = pref * j(x;b) with 0 <= x.exp < b.exp."""
        b = self.base
        n, r = divmod(self.z.exp, b.exp)
        x = self.z / b ** n
        # j(b^n x; b) = (-1)^n b^{-binom(n,2)} x^{-n} j(x; b)
        pref = Monomial(Unit(3 * n), 0) * b ** (-binom2(n)) * x ** (-n)
        return pref, x

    def is_zero(self) -> bool:
        _, x = self.reduce()
        return x.exp == 0 and x.unit.is_one()

    @property
    def valuation(self):
        pref, x = self.reduce()
        if x.exp == 0 and x.unit.is_one():
            return INF
        return pref.exp

    def factor(self) -> Factor:
        return self.valuation, lambda n: theta_sum(self, n)

    def __str__(self) -> str:
        return f"j({self.z};{self.base})"


def jspec(z: Monomial, base: Monomial) -> ThetaSpec:
    return ThetaSpec(z, base)


# -- Pochhammer -----------------------------------------------------------

def pochhammer(x: Monomial, base: Monomial, n, target_order: int) -> QSeries:
    """(x; base)_n for integer ``n >= 0`` or ``n = math.inf``."""
    if n == INF or n is None:
        if base.exp < 1 or x.exp < 0:
            raise DivergentProduct(f"({x};{base})_inf has unboundedly negative exponents")
        acc = QSeries.one(target_order)
        i = 0
        while True:
            f = x * base ** i
            if f.exp > target_order:
                break
            if f.exp == 0:
                acc = acc.scale(ONE - f.unit.to_cyc())
                if acc.is_zero():
                    return acc
            else:
                acc = mul_binomial(acc, f.unit.to_cyc(), f.exp)
            i += 1
        return acc
    if n < 0:
        raise ValueError("finite Pochhammer length must be nonnegative")
    factors = [x * base ** i for i in range(n)]
    low = sum(min(0, f.exp) for f in factors)
    if low == 0:
        acc = QSeries.one(target_order)
        for f in factors:
            if f.exp == 0:
                acc = acc.scale(ONE - f.unit.to_cyc())
            else:
                acc = mul_binomial(acc, f.unit.to_cyc(), f.exp)
        return acc
    # negative exponents: expand the exact polynomial, then truncate
    poly = {0: ONE}
    for f in factors:
        c = f.unit.to_cyc()
        nxt = dict(poly)
        for e, v in poly.items():
            nxt[e + f.exp] = nxt.get(e + f.exp, CycNum()) - v * c
        poly = nxt
    return QSeries(poly, target_order)


# -- theta evaluators ----------------------------------------------------

def _window(lead: int, lin: int, target: int):
    """Integers n with lead*binom(n,2) + lin*n <= target (lead >= 1)."""
    f = lambda n: lead * binom2(n) + lin * n
    vertex = 0.5 - lin / lead
    start = math.floor(vertex)
    n = start
    while True:
        if f(n) > target and n > vertex:
            break
        if f(n) <= target:
            yield n
        n += 1
    n = start - 1
    while True:
        if f(n) > target and n < vertex:
            break
        if f(n) <= target:
            yield n
        n -= 1


def theta_sum(spec: ThetaSpec, target_order: int) -> QSeries:
    """Bilateral sum of (-1)^n b^binom(n,2) z^n, exact to ``target_order``."""
    b, z = spec.base, spec.z
    kb, kz = b.unit.k, z.unit.k
    acc: dict = {}
    for n in _window(b.exp, z.exp, target_order):
        e = b.exp * binom2(n) + z.exp * n
        k = (3 * n + kb * binom2(n) + kz * n) % 6
        prev = acc.get(e)
        acc[e] = Unit(k).to_cyc() if prev is None else prev + Unit(k).to_cyc()
    return QSeries(acc, target_order)


def theta_product(spec: ThetaSpec, target_order: int) -> QSeries:
    """(x;b)_inf (b/x;b)_inf (b;b)_inf after reducing z into 0 <= exp < b.exp."""
    pref, x = spec.reduce()
    b = spec.base
    inner = target_order - pref.exp
    acc = QSeries.one(inner)
    for start in (x, b / x, b):
        acc = acc * pochhammer(start, b, INF, inner)
        if acc.is_zero():
            break
    return acc.mul_monomial(pref)


def named_spec(kind: str, a: int, b: int | None = None) -> ThetaSpec:
    """J(a,b) = j(q^a;q^b), Jbar(a,b) = j(-q^a;q^b), Jeta(a) = j(q^a;q^3a)."""
    if kind == "J":
        return ThetaSpec(mono(a), mono(b))
    if kind == "Jbar":
        return ThetaSpec(mono(a, 3), mono(b))
    if kind == "Jeta":
        if a < 1:
            raise ValueError("J_a needs a >= 1")
        return ThetaSpec(mono(a), mono(3 * a))
    raise ValueError(f"unknown theta shorthand {kind!r}")


def named_J(kind: str, a: int, b: int | None, target_order: int) -> QSeries:
    return theta_sum(named_spec(kind, a, b), target_order)


def infinite_product(base: Monomial) -> ThetaSpec:
    """(base; base)_inf written as the theta value j(base; base^3)."""
    return ThetaSpec(base, base ** 3)


# -- classical identities as (lhs, rhs) pairs ------------------------------

def _j(z: Monomial, base: Monomial) -> Factor:
    return ThetaSpec(z, base).factor()


def _prod(target: int, num, den=(), coeff: CycNum = ONE, shift: Monomial = Monomial()) -> QSeries:
    return quotient(target, num, den, coeff, shift)


def check_quasi_periodicity(x: Monomial, base: Monomial, n: int, order: int):
    """j(b^n x;b) against (-1)^n b^(-binom(n,2)) x^(-n) j(x;b)."""
    lhs = theta_sum(ThetaSpec(base ** n * x, base), order)
    pref = Monomial(Unit(3 * n)) * base ** (-binom2(n)) * x ** (-n)
    rhs = _prod(order, [_j(x, base)], shift=pref)
    return lhs, rhs


def check_inversion(x: Monomial, base: Monomial, order: int):
    """j(x;b) against j(b/x;b)."""
    return theta_sum(ThetaSpec(x, base), order), theta_sum(ThetaSpec(base / x, base), order)


def check_base_split(x: Monomial, base: Monomial, n: int, order: int):
    """j(x;b) = J_1 j(x, bx, ..., b^(n-1)x; b^n) / J_n^n (n = 2 and 3 are the common cases)."""
    lhs = theta_sum(ThetaSpec(x, base), order)
    num = [_j(x * base ** i, base ** n) for i in range(n)] + [infinite_product(base).factor()]
    den = [infinite_product(base ** n).factor()] * n
    return lhs, _prod(order, num, den)


def check_dissection(z: Monomial, base: Monomial, m: int, order: int):
    """j(z;b) as the m-term sum over the residue classes of the summation index."""
    lhs = theta_sum(ThetaSpec(z, base), order)
    parts = []
    for k in range(m):
        arg = Monomial(Unit(3 * (m + 1))) * base ** (binom2(m) + m * k) * z ** m
        pref = Monomial(Unit(3 * k)) * base ** binom2(k) * z ** k
        parts.append(_prod(order, [_j(arg, base ** (m * m))], shift=pref))
    rhs = parts[0]
    for p in parts[1:]:
        rhs = rhs + p
    return lhs, rhs


def check_root_split(x: Monomial, base: Monomial, n: int, order: int):
    """j(x^n; b^n) = J_n j(x, zeta x, ..., zeta^(n-1) x; b) / J_1^n for n in {2, 3}."""
    if n not in (2, 3):
        raise ValueError("root-of-unity splitting is available for n = 2 and n = 3")
    step = 6 // n
    lhs = theta_sum(ThetaSpec(x ** n, base ** n), order)
    num = [_j(Monomial(Unit(step * i)) * x, base) for i in range(n)]
    num.append(infinite_product(base ** n).factor())
    den = [infinite_product(base).factor()] * n
    return lhs, _prod(order, num, den)


def check_product_pair(x: Monomial, y: Monomial, base: Monomial, order: int):
    """j(x)j(y) = j(-xy;b^2) j(-b y/x;b^2) - x j(-b xy;b^2) j(-y/x;b^2)."""
    neg = Monomial(Unit(3))
    b2 = base ** 2
    lhs = _prod(order, [_j(x, base), _j(y, base)])
    r1 = _prod(order, [_j(neg * x * y, b2), _j(neg * base * y / x, b2)])
    r2 = _prod(order, [_j(neg * base * x * y, b2), _j(neg * y / x, b2)], shift=-x)
    return lhs, r1 + r2


def check_quintuple(x: Monomial, base: Monomial, order: int):
    """j(b x^3;b^3) + x j(b^2 x^3;b^3) = j(-x;b) j(b x^2;b^2) / J_2."""
    b3 = base ** 3
    lhs = theta_sum(ThetaSpec(base * x ** 3, b3), order) + _prod(
        order, [_j(base ** 2 * x ** 3, b3)], shift=x
    )
    rhs = _prod(
        order,
        [_j(-x, base), _j(base * x ** 2, base ** 2)],
        [infinite_product(base ** 2).factor()],
    )
    return lhs, rhs


def weierstrass_specs(a: Monomial, b: Monomial, c: Monomial, d: Monomial, base: Monomial):
    """The twelve theta values of the three-term relation, grouped per product."""
    return (
        [ThetaSpec(a * c, base), ThetaSpec(a / c, base), ThetaSpec(b * d, base), ThetaSpec(b / d, base)],
        [ThetaSpec(a * d, base), ThetaSpec(a / d, base), ThetaSpec(b * c, base), ThetaSpec(b / c, base)],
        [ThetaSpec(a * b, base), ThetaSpec(a / b, base), ThetaSpec(c * d, base), ThetaSpec(c / d, base)],
    )


def check_weierstrass(a: Monomial, b: Monomial, c: Monomial, d: Monomial, base: Monomial, order: int):
    """j(ac)j(a/c)j(bd)j(b/d) = j(ad)j(a/d)j(bc)j(b/c) + (b/c) j(ab)j(a/b)j(cd)j(c/d)."""
    g1, g2, g3 = weierstrass_specs(a, b, c, d, base)
    lhs = _prod(order, [s.factor() for s in g1])
    rhs = _prod(order, [s.factor() for s in g2]) + _prod(order, [s.factor() for s in g3], shift=b / c)
    return lhs, rhs


THETA_CHECKS: dict[str, Callable] = {
    "quasi-periodicity": check_quasi_periodicity,
    "inversion": check_inversion,
    "base-split": check_base_split,
    "dissection": check_dissection,
    "root-split": check_root_split,
    "product-pair": check_product_pair,
    "quintuple": check_quintuple,
    "weierstrass": check_weierstrass,
}
