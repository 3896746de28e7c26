from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mocktheta.appell import (
    AppellSpec, LerchSpec, appell_m, check_change_z, check_flip, check_flip_xz,
    check_shift_x, check_shift_z, geom_expand, lerch_sum, split_n2, split_n3,
)
from mocktheta.cyclotomic import ONE, CycNum, Unit
from mocktheta.errors import DegenerateZ, NonGeneric, NonGenericPole, PoleAtOne
from mocktheta.mock import mock_series
from mocktheta.qseries import QSeries, mono, ps_eq, series
from mocktheta.theta import ThetaSpec
from strategies import bases, monomials

# m(-q, q; q^3) through q^8, frozen from a computer-algebra expansion of the
# bilateral definition over n in [-12, 12]
M_MINUS_Q = [0, 0, -1, 1, -1, 1, -2, 2, -2]


def test_geom_positive():
    assert geom_expand(Unit(0), 2, 10).same_as(series({e: 1 for e in range(0, 11, 2)}, 10))


def test_geom_constant():
    assert geom_expand(Unit(3), 0, 7).same_as(QSeries.constant(CycNum(Fraction(1, 2)), 7))


def test_geom_negative():
    assert geom_expand(Unit(0), -1, 5).same_as(series({e: -1 for e in range(1, 6)}, 5))


def test_geom_pole():
    with pytest.raises(PoleAtOne):
        geom_expand(Unit(0), 0, 5)


def _oracle_m_minus_q(order):
    """Direct dense expansion: every term and the theta sum with plain Fractions."""
    size = order + 1

    def mul(a, b):
        out = [Fraction(0)] * size
        for i, x in enumerate(a):
            if x:
                for j in range(size - i):
                    out[i + j] += x * b[j]
        return out

    num = [Fraction(0)] * size
    for n in range(-12, 13):
        e = 3 * n * (n - 1) // 2 + n
        g = 3 * (n - 1) + 2  # 1/(1 + q^g)
        sign = 1 - 2 * (n % 2)
        if g >= 0:
            tail = [(k, (-1) ** k) for k in range(0, order + 1) if g * k <= order]
            terms = [(e + g * k, c) for k, c in tail]
        else:
            # 1/(1+q^g) = q^-g / (1 + q^-g)
            terms = [(e - g * (k + 1), (-1) ** k) for k in range(0, order + 1)]
        for ex, c in terms:
            if 0 <= ex <= order:
                num[ex] += sign * c
    jz = [Fraction(0)] * size
    for n in range(-12, 13):
        e = 3 * n * (n - 1) // 2 + n
        if 0 <= e <= order:
            jz[e] += 1 - 2 * (n % 2)
    # j(q;q^3) has constant term 1, so invert directly
    inv = [Fraction(0)] * size
    inv[0] = Fraction(1)
    for k in range(1, size):
        inv[k] = -sum(jz[i] * inv[k - i] for i in range(1, k + 1))
    return mul(num, inv)


def test_oracle_agrees_with_frozen_values():
    assert _oracle_m_minus_q(8) == M_MINUS_Q


def test_appell_against_frozen_values():
    s = appell_m(AppellSpec(mono(1, 3), mono(1), mono(3)), 8)
    assert [s[e] for e in range(9)] == [CycNum(c) for c in M_MINUS_Q]


def test_appell_sixth_order_forms():
    T = 80
    phi = appell_m(AppellSpec(mono(1), mono(0, 3), mono(3)), T).scale(CycNum(2))
    assert ps_eq(phi, mock_series("phi6", T), T) is None
    psi = appell_m(AppellSpec(mono(0), mono(1, 3), mono(3)), T)
    assert ps_eq(psi, mock_series("psi6", T), T) is None


def test_appell_degenerate_z():
    with pytest.raises(DegenerateZ):
        appell_m(AppellSpec(mono(3), mono(3), mono(3)), 10)


def test_appell_pole():
    # n = 1 term: 1 - q^0 * x z with x z = 1
    with pytest.raises(NonGenericPole):
        appell_m(AppellSpec(mono(-1), mono(1), mono(2)), 10)


def test_appell_valuation_bound():
    for spec in [AppellSpec(mono(1), mono(2), mono(6)), AppellSpec(mono(-3, 2), mono(4, 1), mono(2))]:
        s = appell_m(spec, 30)
        assert s.valuation >= spec.valuation_bound()


GM1_RAW = LerchSpec(Unit(4), 2, 2, 0, Unit(2), 2, 1)
GM2_RAW = LerchSpec(Unit(2), 1, 1, 0, Unit(3), 1, 0)


def test_lerch_constant_term():
    assert lerch_sum(GM2_RAW, 0).same_as(QSeries.constant(CycNum(Fraction(1, 2)), 0))


def test_lerch_validation():
    with pytest.raises(ValueError):
        LerchSpec(Unit(0), 0, 0, 0, Unit(0), 1, 0)
    with pytest.raises(ValueError):
        LerchSpec(Unit(0), 1, 0, 1, Unit(1), 1, 0)
    with pytest.raises(PoleAtOne):
        lerch_sum(LerchSpec(Unit(0), 1, 1, 0, Unit(0), 2, -4), 10)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 5), st.integers(1, 4), st.integers(-5, 5), st.integers(-3, 3),
       st.integers(0, 5), st.sampled_from([-3, -2, -1, 1, 2, 3]), st.integers(-4, 4))
def test_lerch_window_soundness(u, a2, a1, a0, w, c, d):
    if (a2 + a1) % 2:
        a1 += 1
    spec = LerchSpec(Unit(u), a2, a1, 2 * a0, Unit(w), c, d)
    assume(not (w == 0 and d % c == 0))
    base = lerch_sum(spec, 30)
    assert lerch_sum(spec, 30, pad=5).same_as(base)


# -- splitting identities on fixed parameter sets -------------------------

SPLIT2_CASES = [
    (mono(1), mono(2), mono(8), mono(6)),
    (mono(1), mono(2), mono(16), mono(6)),
    (mono(1), mono(4), mono(8), mono(6)),
    (mono(1), mono(4), mono(16), mono(6)),
]
SPLIT3_CASES = [
    (mono(1, 4), mono(0, 4), mono(6), mono(2)),
    (mono(1, 4), mono(0, 4), mono(12), mono(2)),
    (mono(0, 5), mono(0, 3), mono(3), mono(1)),
    (mono(0, 5), mono(0, 3), mono(6), mono(1)),
]


@pytest.mark.parametrize("x, z, zp, base", SPLIT2_CASES, ids=lambda m: str(m))
def test_split_n2(x, z, zp, base):
    lhs, rhs = split_n2(x, z, zp, base, 60)
    assert ps_eq(lhs, rhs, 60) is None


@pytest.mark.parametrize("x, z, zp, base", SPLIT3_CASES, ids=lambda m: str(m))
def test_split_n3(x, z, zp, base):
    lhs, rhs = split_n3(x, z, zp, base, 60)
    assert ps_eq(lhs, rhs, 60) is None


# -- functional equations on random generic parameters --------------------

ORDER = 30
fast = settings(max_examples=20, deadline=None)


def _generic(*specs):
    try:
        for s in specs:
            s.check_generic()
    except NonGeneric:
        return False
    return True


@fast
@given(monomials, monomials, bases)
def test_shift_z(x, z, b):
    assume(_generic(AppellSpec(x, z, b), AppellSpec(x, b * z, b)))
    lhs, rhs = check_shift_z(x, z, b, ORDER)
    assert ps_eq(lhs, rhs, ORDER) is None


@fast
@given(monomials, monomials, bases)
def test_flip(x, z, b):
    assume(_generic(AppellSpec(x, z, b), AppellSpec(x.inverse(), z.inverse(), b)))
    lhs, rhs = check_flip(x, z, b, ORDER)
    assert ps_eq(lhs, rhs, ORDER) is None


@fast
@given(monomials, monomials, bases)
def test_shift_x(x, z, b):
    assume(_generic(AppellSpec(b * x, z, b), AppellSpec(x, z, b)))
    lhs, rhs = check_shift_x(x, z, b, ORDER)
    assert ps_eq(lhs, rhs, ORDER) is None


@fast
@given(monomials, monomials, bases)
def test_flip_xz(x, z, b):
    assume(_generic(AppellSpec(x, z, b), AppellSpec(x, (x * z).inverse(), b)))
    lhs, rhs = check_flip_xz(x, z, b, ORDER)
    assert ps_eq(lhs, rhs, ORDER) is None


@fast
@given(monomials, monomials, monomials, bases)
def test_change_z(x, z0, z1, b):
    assume(_generic(AppellSpec(x, z0, b), AppellSpec(x, z1, b)))
    assume(not ThetaSpec(x * z0, b).is_zero() and not ThetaSpec(x * z1, b).is_zero())
    lhs, rhs = check_change_z(x, z0, z1, b, ORDER)
    assert ps_eq(lhs, rhs, ORDER) is None
