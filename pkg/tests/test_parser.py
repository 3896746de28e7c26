from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mocktheta.appell import AppellSpec, LerchSpec
from mocktheta.cyclotomic import ZETA3, CycNum, Unit
from mocktheta.errors import ParseError
from mocktheta.identity import CATALOG, parse, to_text
from mocktheta.identity.expr import (
    Add, AppellAtom, Const, Div, IntPow, LerchAtom, MockAtom, Mul, NamedJ, Neg,
    PochAtom, QPow, Sub, ThetaAtom,
)
from mocktheta.identity.parser import parse_mono, tokenize
from mocktheta.mock import MockName
from mocktheta.qseries import Monomial, mono
from mocktheta.theta import ThetaSpec


def test_named_j():
    assert parse("J(1,2)") == NamedJ("J", 1, 2)
    assert parse("Jb(0,12)") == NamedJ("Jbar", 0, 12)
    assert parse("Jp(6)") == NamedJ("Jeta", 6, None)


def test_sum_shape():
    e = parse("f3(q^3) - 1/3 * Jp(1)^4/(Jp(3)*Jp(2)^2)")
    assert isinstance(e, Sub)
    assert e.a == MockAtom(MockName.f3, mono(3))
    assert isinstance(e.b, Div)
    assert e.b.a == Mul(Const(CycNum(Fraction(1, 3))), IntPow(NamedJ("Jeta", 1, None), 4))


def test_appell_monomials():
    e = parse("m(-z3*1, -1; q)")
    assert e == AppellAtom(AppellSpec(Monomial(Unit(5), 0), Monomial(Unit(3), 0), mono(1)))


def test_precedence():
    q = QPow(1)
    assert parse("q + q*q^2") == Add(q, Mul(q, QPow(2)))
    assert parse("q - q - q") == Sub(Sub(q, q), q)
    assert parse("-q^2") == Neg(QPow(2))
    assert parse("(q)^2") == IntPow(q, 2)
    assert parse("z3") == Const(ZETA3)


def test_greedy_rationals():
    q = QPow(1)
    assert parse("q/2/3") == Div(q, Const(CycNum(Fraction(2, 3))))
    assert parse("4/3/poch(q;q;inf)") == Div(Const(CycNum(Fraction(4, 3))), PochAtom(mono(1), mono(1), None))


def test_mono_slots():
    assert parse_mono("q") == mono(1)
    assert parse_mono("-q") == Monomial(Unit(3), 1)
    assert parse_mono("z3^2*q^-4") == Monomial(Unit(4), -4)
    assert parse_mono("-z3^2") == Monomial(Unit(1), 0)
    assert parse_mono("z3*1") == Monomial(Unit(2), 0)


def test_lerch_and_poch():
    e = parse("lerch(z3^2;2,2,0;z3;2,1)")
    assert e == LerchAtom(LerchSpec(Unit(4), 2, 2, 0, Unit(2), 2, 1))
    assert parse("poch(q^6;q^6;3)") == PochAtom(mono(6), mono(6), 3)


def test_whitespace_insensitive():
    assert parse("  j( -q ;q^4 )  ") == parse("j(-q;q^4)")


def test_byte_offsets():
    toks = tokenize("q + z3")
    assert [t.offset for t in toks] == [0, 2, 4, 6]


@pytest.mark.parametrize("text, offset, expected", [
    ("J(1,", 4, {"integer"}),
    ("J(1 2)", 4, {","}),
    ("q +", 3, {"number", "z3", "q", "("}),
    ("j(q;q", 5, {")"}),
    ("f3(q) q", 6, {"+", "-", "*", "/", "end of input"}),
    ("m(q,2;q)", 4, {"q", "1", "z3", "-"}),
])
def test_error_positions(text, offset, expected):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.offset == offset
    assert expected <= info.value.expected


def test_error_offset_counts_bytes():
    with pytest.raises(ParseError) as info:
        parse("q + é")
    assert info.value.offset == 4


@pytest.mark.parametrize("text", [
    "j(q;q^0)", "J(1,0)", "Jp(0)", "f3(q^0)", "psi3(z3)", "poch(q;q;-1)",
    "lerch(1;1,0,0;z3;1,0)", "unknown(q)", "1/0",
])
def test_semantic_errors(text):
    with pytest.raises(ParseError):
        parse(text)


@pytest.mark.parametrize("rid", sorted(r for r in CATALOG if CATALOG[r].active))
def test_catalog_round_trip(rid):
    rec = CATALOG[rid]
    for side in (rec.lhs, rec.rhs):
        assert parse(to_text(side)) == side


# -- random trees -----------------------------------------------------------

units = st.integers(0, 5).map(Unit)
monos = st.builds(Monomial, units, st.integers(-6, 6))
pos_monos = st.builds(Monomial, units, st.integers(1, 6))

leaves = st.one_of(
    st.builds(lambda n, d: Const(CycNum(Fraction(n, d))), st.integers(0, 30), st.integers(1, 9)),
    st.just(Const(ZETA3)),
    st.integers(-8, 8).map(QPow),
    st.builds(lambda z, b: ThetaAtom(ThetaSpec(z, b)), monos, pos_monos),
    st.builds(lambda a, b: NamedJ("J", a, b), st.integers(-5, 10), st.integers(1, 12)),
    st.builds(lambda a: NamedJ("Jeta", a, None), st.integers(1, 12)),
    st.builds(lambda n, a: MockAtom(n, a), st.sampled_from(list(MockName)), pos_monos),
    st.builds(lambda x, z, b: AppellAtom(AppellSpec(x, z, b)), monos, monos, pos_monos),
    st.builds(lambda x, b, n: PochAtom(x, b, n), monos, pos_monos, st.one_of(st.none(), st.integers(0, 6))),
)


def _extend(children):
    return st.one_of(
        children.map(Neg),
        st.builds(Add, children, children),
        st.builds(Sub, children, children),
        st.builds(Mul, children, children),
        st.builds(Div, children, children),
        st.builds(IntPow, children, st.integers(-4, 4)),
    )


trees = st.recursive(leaves, _extend, max_leaves=12)


@settings(max_examples=300, deadline=None)
@given(trees)
def test_random_round_trip(e):
    text = to_text(e)
    assert parse(text) == e
    assert to_text(parse(text)) == text
