from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given

from mocktheta.cyclotomic import (
    I_SQRT3, ONE, ZERO, ZETA3, ZETA3_SQ, CycNum, Unit, cyc_arith, cyc_inv, unit_pow,
)
from mocktheta.errors import DivisionByZero
from strategies import cycnums, nonzero_cycnums, units


def test_zeta_squared_reduces():
    assert cyc_arith(ZETA3, ZETA3, "mul") == CycNum(-1, -1)


def test_zeta_times_its_square_is_one():
    assert cyc_arith(ZETA3, CycNum(-1, -1), "mul") == ONE


def test_i_sqrt3_squared():
    assert I_SQRT3 * I_SQRT3 == CycNum(-3)
    assert ZETA3 - ZETA3_SQ == I_SQRT3


def test_minimal_polynomial_and_cube():
    assert ONE + ZETA3 + ZETA3 ** 2 == ZERO
    assert ZETA3 ** 3 == ONE


@pytest.mark.parametrize("x, expected", [
    (CycNum(2), CycNum(Fraction(1, 2))),
    (ZETA3, CycNum(-1, -1)),
    (CycNum(1, 2), CycNum(Fraction(-1, 3), Fraction(-2, 3))),
])
def test_inverse_examples(x, expected):
    assert cyc_inv(x) == expected


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        cyc_inv(ZERO)


def test_unit_pow_examples():
    assert unit_pow(Unit(3), 3) == Unit(3)
    assert unit_pow(Unit(2), 4) == Unit(2)
    for k in range(6):
        assert unit_pow(Unit(k), 0) == Unit(0)


def test_unit_table():
    assert Unit(1).to_cyc() == -ZETA3_SQ
    assert Unit(2).to_cyc() == ZETA3
    assert Unit(5).to_cyc() == -ZETA3
    assert [str(Unit(k)) for k in range(6)] == ["1", "-z3^2", "z3", "-1", "z3^2", "-z3"]


def test_integral_parts_stay_int():
    c = CycNum(Fraction(4, 2), 3) * CycNum(5)
    assert type(c.parts[0]) is int and type(c.parts[1]) is int


@pytest.mark.parametrize("text", ["0", "-3", "5/7", "1 + 2*z3", "-1/2 + 3/4*z3", "0 + -1*z3"])
def test_text_round_trip(text):
    assert str(CycNum.parse(text)) == text


@pytest.mark.parametrize("bad", ["1+2*z3", "1 + 0*z3", "z3", "2/4x", ""])
def test_text_rejects_noncanonical(bad):
    with pytest.raises(ValueError):
        CycNum.parse(bad)


@given(cycnums, cycnums, cycnums)
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(nonzero_cycnums)
def test_inverse_property(x):
    assert x * cyc_inv(x) == ONE


@given(cycnums)
def test_str_parse_round_trip(x):
    assert CycNum.parse(str(x)) == x


@given(units, units)
def test_unit_embedding_is_a_homomorphism(u, v):
    assert (u * v).to_cyc() == u.to_cyc() * v.to_cyc()


@given(cycnums, units)
def test_mul_unit_matches_embedding(x, u):
    assert x.mul_unit(u.k) == x * u.to_cyc()
