"""Mock theta functions: Eulerian series and their recorded Appell forms.

Every Eulerian sum is evaluated with a running ratio ``R_n`` of Pochhammer
products, updated one binomial factor at a time.  All factors have constant
term 1, so the n-th term has valuation exactly equal to its q-exponent and the
sum can stop at the first exponent beyond the target order.
"""

from __future__ import annotations

import threading
from enum import Enum
from typing import Callable

from .cyclotomic import ONE, CycNum
from .errors import UnsupportedForm
from .qseries import Monomial, QSeries, div_binomial, mono, mul_binomial, quotient
from .appell import AppellSpec, appell_term
from .theta import ThetaSpec, infinite_product


class MockName(str, Enum):
    f3 = "f3"
    psi3 = "psi3"
    chi3 = "chi3"
    omega3 = "omega3"
    phi10 = "phi10"
    psi10 = "psi10"
    X10 = "X10"
    chi10 = "chi10"
    phi6 = "phi6"
    psi6 = "psi6"

    def __str__(self) -> str:
        return self.value


_POS, _NEG = ONE, -ONE

# name -> (first n, exponent of q in term n, alternating sign?, factors(n))
# factors(n) lists ((c, k) numerators, (c, k) denominators) turning R_{n-1}
# into R_n, each meaning the binomial (1 - c*q^k).
_EULERIAN: dict = {
    MockName.f3: (0, lambda n: n * n, False,
                  lambda n: ((), ((_NEG, n), (_NEG, n))) if n else ((), ())),
    MockName.psi3: (1, lambda n: n * n, False,
                    lambda n: ((), ((_POS, 2 * n - 1),))),
    MockName.chi3: (0, lambda n: n * n, False,
                    lambda n: (((_NEG, n),), ((_NEG, 3 * n),)) if n else ((), ())),
    MockName.omega3: (0, lambda n: 2 * n * (n + 1), False,
                      lambda n: ((), ((_POS, 2 * n + 1), (_POS, 2 * n + 1)))),
    MockName.phi10: (0, lambda n: n * (n + 1) // 2, False,
                     lambda n: ((), ((_POS, 2 * n + 1),))),
    MockName.psi10: (0, lambda n: (n + 1) * (n + 2) // 2, False,
                     lambda n: ((), ((_POS, 2 * n + 1),))),
    MockName.X10: (0, lambda n: n * n, True,
                   lambda n: ((), ((_NEG, 2 * n - 1), (_NEG, 2 * n))) if n else ((), ())),
    MockName.chi10: (0, lambda n: (n + 1) ** 2, True,
                     lambda n: ((), ((_NEG, 2 * n), (_NEG, 2 * n + 1))) if n else ((), ((_NEG, 1),))),
    MockName.phi6: (0, lambda n: n * n, True,
                    lambda n: (((_POS, 2 * n - 1),), ((_NEG, 2 * n - 1), (_NEG, 2 * n))) if n else ((), ())),
    MockName.psi6: (0, lambda n: (n + 1) ** 2, True,
                    lambda n: (((_POS, 2 * n - 1),), ((_NEG, 2 * n), (_NEG, 2 * n + 1))) if n else ((), ((_NEG, 1),))),
}

# exact valuation at plain q (every leading coefficient is 1)
PLAIN_VALUATION = {name: spec[1](spec[0]) for name, spec in _EULERIAN.items()}


def _eulerian(name: MockName, target_order: int) -> QSeries:
    start, expo, alternating, factors = _EULERIAN[name]
    total: dict = {}
    ratio = QSeries.one(target_order)
    n = start
    while True:
        e = expo(n)
        if e > target_order:
            break
        nums, dens = factors(n)
        room = target_order - e
        ratio = ratio.truncate(room)
        for c, k in nums:
            ratio = mul_binomial(ratio, c, k)
        for c, k in dens:
            ratio = div_binomial(ratio, c, k)
        negate = alternating and n % 2
        for d, v in ratio.terms():
            v = -v if negate else v
            prev = total.get(e + d)
            total[e + d] = v if prev is None else prev + v
        n += 1
    return QSeries(total, target_order)


_cache: dict = {}
_lock = threading.Lock()


def mock_series(name: MockName | str, target_order: int) -> QSeries:
    """Eulerian expansion at plain q, exact to ``target_order``."""
    name = MockName(name)
    if target_order < 0:
        raise ValueError("mock theta series need target_order >= 0")
    hit = _cache.get(name)
    if hit is not None and hit.order >= target_order:
        return hit.truncate(target_order)
    s = _eulerian(name, target_order)
    with _lock:
        prev = _cache.get(name)
        if prev is None or prev.order < s.order:
            _cache[name] = s
    return s


# -- Appell forms ---------------------------------------------------------

def _m(x: Monomial, z: Monomial, base: Monomial, T: int, pref: Monomial = Monomial(), coeff: CycNum = ONE) -> QSeries:
    return appell_term(AppellSpec(x, z, base), T, pref=pref, coeff=coeff)


def _f3_theta_less(T: int) -> QSeries:
    two = CycNum(2)
    return _m(mono(1, 3), mono(1), mono(3), T, coeff=two) + _m(mono(1, 3), mono(2), mono(3), T, coeff=two)


def _f3_watson(T: int) -> QSeries:
    theta = quotient(
        T,
        [ThetaSpec(mono(3), mono(6)).factor()] * 2,
        [infinite_product(mono(1)).factor()],
    )
    return _m(mono(1, 3), mono(1), mono(3), T, coeff=CycNum(4)) + theta


def _omega3(T: int) -> QSeries:
    pref = mono(-1, 3)
    return _m(mono(1), mono(2), mono(6), T, pref=pref) + _m(mono(1), mono(4), mono(6), T, pref=pref)


def _phi6(T: int) -> QSeries:
    return _m(mono(1), mono(0, 3), mono(3), T, coeff=CycNum(2))


def _psi6(T: int) -> QSeries:
    return _m(mono(0), mono(1, 3), mono(3), T)


def _psi3_watson(T: int) -> QSeries:
    theta = quotient(
        T,
        [infinite_product(mono(12)).factor()] * 3,
        [infinite_product(mono(4)).factor(), ThetaSpec(mono(3), mono(12)).factor()],
        shift=mono(1),
    )
    return theta - _m(mono(1), mono(1, 3), mono(3, 3), T)


APPELL_FORMS: dict[MockName, dict[str, Callable[[int], QSeries]]] = {
    MockName.f3: {"theta-less": _f3_theta_less, "watson": _f3_watson},
    MockName.psi3: {"watson": _psi3_watson},
    MockName.omega3: {"theta-less": _omega3},
    MockName.phi6: {"appell": _phi6},
    MockName.psi6: {"appell": _psi6},
}


def appell_forms(name: MockName | str) -> list[str]:
    """Names of the recorded Appell forms of ``name`` (possibly empty)."""
    return list(APPELL_FORMS.get(MockName(name), {}))


def appell_form(name: MockName | str, target_order: int, form: str | None = None) -> QSeries:
    """Evaluate a recorded Appell form; the first recorded one by default."""
    name = MockName(name)
    forms = APPELL_FORMS.get(name)
    if not forms:
        raise UnsupportedForm(f"no Appell form is recorded for {name}")
    if form is None:
        form = next(iter(forms))
    if form not in forms:
        raise UnsupportedForm(f"{name} has no Appell form named {form!r}; known: {', '.join(forms)}")
    return forms[form](target_order)
