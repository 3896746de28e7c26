from __future__ import annotations

import pytest

from mocktheta.cyclotomic import ZERO, CycNum, Unit
from mocktheta.errors import UnsupportedForm
from mocktheta.mock import (
    APPELL_FORMS, PLAIN_VALUATION, MockName, appell_form, appell_forms, mock_series,
)
from mocktheta.qseries import ps_eq, ps_subst

# third-order omega through q^30, frozen from a computer-algebra expansion of
# sum q^(2n(n+1)) / (q;q^2)_(n+1)^2
OMEGA3 = [1, 2, 3, 4, 6, 8, 10, 14, 18, 22, 29, 36, 44, 56, 68, 82, 101, 122, 146,
          176, 210, 248, 296, 350, 410, 484, 566, 660, 772, 896, 1038]

F3_HEAD = [1, 1, -2, 3, -3, 3, -5, 7, -6]


def test_omega3_frozen():
    s = mock_series("omega3", 30)
    assert [s[e] for e in range(31)] == [CycNum(c) for c in OMEGA3]


def test_f3_head():
    s = mock_series(MockName.f3, 8)
    assert [s[e] for e in range(9)] == [CycNum(c) for c in F3_HEAD]


def test_psi3_starts_at_q():
    s = mock_series("psi3", 10)
    assert s.valuation == 1 and s[1] == CycNum(1)


@pytest.mark.parametrize("name", list(MockName), ids=str)
def test_integer_coefficients(name):
    s = mock_series(name, 120)
    assert s.order == 120
    assert all(c.is_integer() for _, c in s.terms())
    assert s.valuation == PLAIN_VALUATION[name]
    assert s[s.valuation] == CycNum(1)


def test_cache_truncates():
    big = mock_series("chi10", 80)
    small = mock_series("chi10", 20)
    assert small.same_as(big.truncate(20))


@pytest.mark.parametrize("name, form", [(n, f) for n, fs in APPELL_FORMS.items() for f in fs])
def test_forms_agree(name, form):
    assert ps_eq(mock_series(name, 100), appell_form(name, 100, form), 100) is None


def test_default_form_is_first():
    assert appell_forms("f3")[0] == list(APPELL_FORMS[MockName.f3])[0]
    assert appell_form("f3", 40).same_as(appell_form("f3", 40, appell_forms("f3")[0]))


@pytest.mark.parametrize("name", ["phi10", "psi10", "X10", "chi10", "chi3"])
def test_unsupported_forms(name):
    assert appell_forms(name) == []
    with pytest.raises(UnsupportedForm):
        appell_form(name, 20)


def test_unknown_form_name():
    with pytest.raises(UnsupportedForm):
        appell_form("f3", 20, "no-such-form")


def _psi10_at_unit(k: int, order: int) -> list[CycNum]:
    """psi10(u q) with u = Unit(k), expanded term by term from the sum itself."""
    u = Unit(k).to_cyc()
    total = [ZERO] * (order + 1)
    n = 0
    while (n + 1) * (n + 2) // 2 <= order:
        e = (n + 1) * (n + 2) // 2
        term = [ZERO] * (order + 1)
        term[e] = u ** e
        for i in range(n + 1):  # divide by 1 - (u q)^(2i+1)
            g, c = 2 * i + 1, u ** (2 * i + 1)
            for x in range(g, order + 1):
                term[x] = term[x] + c * term[x - g]
        total = [a + b for a, b in zip(total, term)]
        n += 1
    return total


def test_psi10_difference_is_rational():
    T = 20
    plain = mock_series("psi10", T)
    at_w = ps_subst(plain, Unit(2), 1)
    at_w2 = ps_subst(plain, Unit(4), 1)
    assert [at_w[e] for e in range(T + 1)] == _psi10_at_unit(2, T)
    assert [at_w2[e] for e in range(T + 1)] == _psi10_at_unit(4, T)
    diff = (at_w - at_w2).scale((Unit(2).to_cyc() - Unit(4).to_cyc()).inverse())
    assert diff.is_rational()
