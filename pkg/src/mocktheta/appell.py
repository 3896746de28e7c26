"""Appell functions m(x,z;q) and Lerch-type bilateral sums.

    m(x,z;q) = 1/j(z;q) * sum_n (-1)^n q^binom(n,2) z^n / (1 - q^(n-1) x z)

Each term's geometric factor is expanded in the direction that converges as a
power series in q, so both tails of the bilateral sum contribute only finitely
many terms below any fixed order.  Parameters must be generic: ``j(z;q) != 0``
and no denominator equal to ``1 - 1``.  Both are checked up front.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import ONE, CycNum, Unit
from .errors import DegenerateZ, NonGenericPole, PoleAtOne
from .qseries import INF, Monomial, QSeries, ps_inv, ps_mul, quotient
from .theta import ThetaSpec, binom2, infinite_product, theta_sum


# -- geometric factors -----------------------------------------------------

def geom_expand(v: Unit, g: int, target_order: int) -> QSeries:
    """Expansion of 1/(1 - v q^g) that is a power series in q.

    For ``g < 0`` this uses 1/(1-m) = -m^-1/(1-m^-1), leading term -v^-1 q^-g.
    """
    if g == 0:
        if v.is_one():
            raise PoleAtOne("1/(1 - q^0) with unit 1")
        return QSeries.constant(ONE / (ONE - v.to_cyc()), target_order)
    acc: dict = {}
    for e, k, c in _geom_terms(v.k, g, target_order):
        acc[e] = Unit(k).to_cyc() if c is None else c
    return QSeries(acc, target_order)


def _geom_terms(vk: int, g: int, limit: int):
    """Yield ``(exp, unit_index, None)`` terms of 1/(1 - v q^g) up to ``limit``.

    The g == 0 case yields a single ``(0, 0, constant)`` entry.
    """
    if g > 0:
        e, k = 0, 0
        while e <= limit:
            yield e, k, None
            e += g
            k += vk
    elif g < 0:
        step = -g
        e, k = step, 3 - vk
        while e <= limit:
            yield e, k, None
            e += step
            k -= vk
    else:
        if vk % 6 == 0:
            raise PoleAtOne("1/(1 - q^0) with unit 1")
        if limit >= 0:
            yield 0, 0, ONE / (ONE - Unit(vk).to_cyc())


def _bilateral_window(lowest, vertices, target: int, pad: int = 0):
    """All n whose conservative lowest exponent ``lowest(n)`` is <= target.

    ``lowest`` is a minimum of convex quadratics with the given vertices, so it
    increases past all of them; scanning stops after three consecutive misses
    there.  ``pad`` extends the window by that many extra indices on each side.
    """
    lo_v, hi_v = min(vertices), max(vertices)
    start = math.floor(lo_v)
    out = []
    for direction, n in ((1, start), (-1, start - 1)):
        misses, extra = 0, 0
        while True:
            past = n > hi_v if direction > 0 else n < lo_v
            if lowest(n) <= target:
                out.append(n)
                misses = 0
            elif past:
                misses += 1
                if misses >= 3:
                    if extra >= pad:
                        break
                    extra += 1
                    out.append(n)
            n += direction
    return sorted(set(out))


class _Accumulator:
    """Counts unit contributions per exponent; converts to Q(z3) at the end."""

    def __init__(self, limit: int):
        self.limit = limit
        self.counts: dict = {}
        self.extra: dict = {}

    def add_unit(self, e: int, k: int):
        row = self.counts.get(e)
        if row is None:
            row = self.counts[e] = [0] * 6
        row[k % 6] += 1

    def add_value(self, e: int, c: CycNum):
        prev = self.extra.get(e)
        self.extra[e] = c if prev is None else prev + c

    def series(self) -> QSeries:
        parts = {}
        for e, row in self.counts.items():
            a = row[0] + row[1] - row[3] - row[4]
            b = row[1] + row[2] - row[4] - row[5]
            parts[e] = (a, b)
        for e, c in self.extra.items():
            a, b = parts.get(e, (0, 0))
            parts[e] = (a + c._a, b + c._b)
        return QSeries.from_parts(parts, self.limit)


# -- Lerch sums --------------------------------------------------------------

@dataclass(frozen=True)
class LerchSpec:
    """sum_n (-1)^n u^n q^((a2 n^2 + a1 n + a0)/2) / (1 - w q^(c n + d))."""

    u: Unit
    a2: int
    a1: int
    a0: int
    w: Unit
    c: int
    d: int

    def __post_init__(self):
        if self.a2 <= 0:
            raise ValueError("Lerch sum needs a2 > 0")
        if self.a0 % 2 or (self.a2 + self.a1) % 2:
            raise ValueError("Lerch exponent (a2 n^2 + a1 n + a0)/2 must be integral")

    def exponent(self, n: int) -> int:
        return (self.a2 * n * n + self.a1 * n + self.a0) // 2

    def lowest(self, n: int) -> int:
        return self.exponent(n) - max(0, -(self.c * n + self.d))

    def vertices(self):
        return (-self.a1 / (2 * self.a2), -(self.a1 + 2 * self.c) / (2 * self.a2))

    def check_generic(self):
        if not self.w.is_one():
            return
        if self.c == 0:
            if self.d == 0:
                raise PoleAtOne("every Lerch term has denominator 1 - 1")
        elif self.d % self.c == 0:
            raise PoleAtOne(f"Lerch term n={-self.d // self.c} has denominator 1 - 1")

    def valuation_bound(self) -> int:
        lo = math.floor(min(self.vertices())) - 1
        hi = math.ceil(max(self.vertices())) + 1
        return min(self.lowest(n) for n in range(lo, hi + 1))

    def __str__(self) -> str:
        return f"lerch({self.u};{self.a2},{self.a1},{self.a0};{self.w};{self.c},{self.d})"


def lerch_sum(spec: LerchSpec, target_order: int, pad: int = 0) -> QSeries:
    spec.check_generic()
    acc = _Accumulator(target_order)
    uk, wk = spec.u.k, spec.w.k
    for n in _bilateral_window(spec.lowest, spec.vertices(), target_order, pad):
        e0 = spec.exponent(n)
        k0 = 3 * n + uk * n
        for e, k, c in _geom_terms(wk, spec.c * n + spec.d, target_order - e0):
            if c is None:
                acc.add_unit(e0 + e, k0 + k)
            else:
                acc.add_value(e0 + e, c.mul_unit(k0))
    return acc.series()


# -- Appell functions --------------------------------------------------------

@dataclass(frozen=True)
class AppellSpec:
    """m(x, z; base)."""

    x: Monomial
    z: Monomial
    base: Monomial

    def __post_init__(self):
        if self.base.exp < 1:
            raise ValueError(f"Appell base must have positive exponent, got {self.base}")

    @property
    def theta(self) -> ThetaSpec:
        return ThetaSpec(self.z, self.base)

    def term_exponent(self, n: int) -> int:
        return self.base.exp * binom2(n) + self.z.exp * n

    def pole_exponent(self, n: int) -> int:
        return self.base.exp * (n - 1) + self.x.exp + self.z.exp

    def lowest(self, n: int) -> int:
        return self.term_exponent(n) - max(0, -self.pole_exponent(n))

    def vertices(self):
        b, z = self.base.exp, self.z.exp
        v = 0.5 - z / b
        return (v, v - 1)

    def check_generic(self):
        if self.theta.is_zero():
            raise DegenerateZ(f"j({self.z};{self.base}) vanishes identically")
        b = self.base
        num = -(self.x.exp + self.z.exp)
        if num % b.exp == 0:
            n = 1 + num // b.exp
            k = b.unit.k * (n - 1) + self.x.unit.k + self.z.unit.k
            if k % 6 == 0:
                raise NonGenericPole(f"term n={n} of m({self.x},{self.z};{b}) has denominator 1 - 1")

    def valuation_bound(self) -> int:
        lo = math.floor(min(self.vertices())) - 1
        hi = math.ceil(max(self.vertices())) + 1
        return min(self.lowest(n) for n in range(lo, hi + 1)) - self.theta.valuation

    def factor(self):
        return self.valuation_bound(), lambda n: appell_m(self, n)

    def __str__(self) -> str:
        return f"m({self.x},{self.z};{self.base})"


def appell_numerator(spec: AppellSpec, target_order: int, pad: int = 0) -> QSeries:
    """The bilateral sum in the definition of m, before division by j(z;q)."""
    b, x, z = spec.base, spec.x, spec.z
    kb, kx, kz = b.unit.k, x.unit.k, z.unit.k
    acc = _Accumulator(target_order)
    for n in _bilateral_window(spec.lowest, spec.vertices(), target_order, pad):
        bn = binom2(n)
        e0 = b.exp * bn + z.exp * n
        k0 = 3 * n + kb * bn + kz * n
        g = spec.pole_exponent(n)
        vk = kb * (n - 1) + kx + kz
        for e, k, c in _geom_terms(vk, g, target_order - e0):
            if c is None:
                acc.add_unit(e0 + e, k0 + k)
            else:
                acc.add_value(e0 + e, c.mul_unit(k0))
    return acc.series()


def appell_m(spec: AppellSpec, target_order: int) -> QSeries:
    spec.check_generic()
    vz = spec.theta.valuation
    num = appell_numerator(spec, target_order + vz)
    if num.is_zero():
        return QSeries.zero(target_order)
    t_inv = target_order - num.valuation
    jz = theta_sum(spec.theta, t_inv + 2 * vz)
    return ps_mul(num, ps_inv(jz, t_inv), target_order)


def appell_term(spec: AppellSpec, target_order: int, pref: Monomial = Monomial(), coeff: CycNum = ONE) -> QSeries:
    """``coeff * pref * m(spec)`` exact to ``target_order``."""
    s = appell_m(spec, target_order - pref.exp)
    return s.mul_monomial(pref).scale(coeff)


# -- splitting corollaries ---------------------------------------------------

_NEG = Monomial(Unit(3))


def _j(z: Monomial, base: Monomial):
    return ThetaSpec(z, base).factor()


def _sum(parts):
    out = parts[0]
    for p in parts[1:]:
        out = out + p
    return out


def split_n2(x: Monomial, z: Monomial, zp: Monomial, base: Monomial, target_order: int):
    """Both sides of the two-term splitting of m(x,z;q) into base q^4."""
    q, T = base, target_order
    q2, q4 = q ** 2, q ** 4
    lhs = appell_m(AppellSpec(x, z, q), T)
    common_num = [infinite_product(q2).factor()] * 3
    common_den = [_j(x * z, q), _j(zp, q4), _j(_NEG * q * x ** 2 * zp, q2)]
    parts = [
        appell_term(AppellSpec(_NEG * q * x ** 2, zp, q4), T),
        appell_term(AppellSpec(_NEG * q.inverse() * x ** 2, zp, q4), T, pref=-(q.inverse() * x)),
        quotient(
            T,
            common_num + [_j(_NEG * q * x ** 2 * z * zp, q2), _j(z ** 2 / zp, q4)],
            common_den + [_j(z, q2)],
            shift=zp,
        ),
        quotient(
            T,
            common_num + [_j(_NEG * q2 * x ** 2 * z * zp, q2), _j(q2 * z ** 2 / zp, q4)],
            common_den + [_j(q * z, q2)],
            shift=-(zp * x * z),
        ),
    ]
    return lhs, _sum(parts)


def split_n3(x: Monomial, z: Monomial, zp: Monomial, base: Monomial, target_order: int):
    """Both sides of the three-term splitting of m(x,z;q) into base q^9."""
    q, T = base, target_order
    q3, q9 = q ** 3, q ** 9
    x3 = x ** 3
    qi = q.inverse()
    lhs = appell_m(AppellSpec(x, z, q), T)
    common_num = [infinite_product(q3).factor()] * 3
    common_den = [_j(x * z, q), _j(zp, q9), _j(x3 * zp, q3)]
    parts = [
        appell_term(AppellSpec(q3 * x3, zp, q9), T),
        appell_term(AppellSpec(x3, zp, q9), T, pref=-(qi * x)),
        appell_term(AppellSpec(q3.inverse() * x3, zp, q9), T, pref=q3.inverse() * x ** 2),
        quotient(
            T,
            common_num + [_j(x3 * z * zp, q3), _j(z ** 3 / zp, q9)],
            common_den + [_j(z, q3)],
            shift=zp * z.inverse(),
        ),
        quotient(
            T,
            common_num + [_j(q * x3 * z * zp, q3), _j(q3 * z ** 3 / zp, q9)],
            common_den + [_j(q * z, q3)],
            shift=-(zp * x * qi),
        ),
        quotient(
            T,
            common_num + [_j(q ** 2 * x3 * z * zp, q3), _j(q ** 6 * z ** 3 / zp, q9)],
            common_den + [_j(q ** 2 * z, q3)],
            shift=zp * x ** 2 * z * qi,
        ),
    ]
    return lhs, _sum(parts)


# -- functional equations as (lhs, rhs) pairs --------------------------------

def check_shift_z(x: Monomial, z: Monomial, base: Monomial, order: int):
    """m(x,z;q) = m(x,qz;q)."""
    return appell_m(AppellSpec(x, z, base), order), appell_m(AppellSpec(x, base * z, base), order)


def check_flip(x: Monomial, z: Monomial, base: Monomial, order: int):
    """m(x,z;q) = x^-1 m(x^-1, z^-1; q)."""
    lhs = appell_m(AppellSpec(x, z, base), order)
    rhs = appell_term(AppellSpec(x.inverse(), z.inverse(), base), order, pref=x.inverse())
    return lhs, rhs


def check_shift_x(x: Monomial, z: Monomial, base: Monomial, order: int):
    """m(qx,z;q) = 1 - x m(x,z;q)."""
    lhs = appell_m(AppellSpec(base * x, z, base), order)
    rhs = QSeries.one(order) - appell_term(AppellSpec(x, z, base), order, pref=x)
    return lhs, rhs


def check_flip_xz(x: Monomial, z: Monomial, base: Monomial, order: int):
    """m(x,z;q) = m(x, x^-1 z^-1; q)."""
    lhs = appell_m(AppellSpec(x, z, base), order)
    rhs = appell_m(AppellSpec(x, (x * z).inverse(), base), order)
    return lhs, rhs


def check_change_z(x: Monomial, z0: Monomial, z1: Monomial, base: Monomial, order: int):
    """m(x,z1) - m(x,z0) = z0 J_1^3 j(z1/z0) j(x z0 z1) / (j(z0) j(z1) j(x z0) j(x z1))."""
    lhs = appell_m(AppellSpec(x, z1, base), order) - appell_m(AppellSpec(x, z0, base), order)
    rhs = quotient(
        order,
        [infinite_product(base).factor()] * 3 + [_j(z1 / z0, base), _j(x * z0 * z1, base)],
        [_j(z0, base), _j(z1, base), _j(x * z0, base), _j(x * z1, base)],
        shift=z0,
    )
    return lhs, rhs


APPELL_CHECKS = {
    "shift-z": check_shift_z,
    "flip": check_flip,
    "shift-x": check_shift_x,
    "flip-xz": check_flip_xz,
    "change-z": check_change_z,
}
