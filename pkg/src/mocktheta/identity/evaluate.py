"""Order-propagating evaluation of expression trees.

A bottom-up pass bounds every node's valuation from below; denominators get
an exact valuation by probing.  The top-down pass then hands every child the
smallest order that keeps its parent exact to the requested order, using the
same formulas as :mod:`mocktheta.qseries` (products, inverses, substitutions).
"""

from __future__ import annotations

import math
import threading

from ..appell import appell_m, lerch_sum
from ..errors import DivergentProduct, ZeroDenominator
from ..mock import PLAIN_VALUATION, mock_series
from ..qseries import INF, QSeries, ps_inv, ps_mul, ps_pow, ps_subst
from ..theta import pochhammer, theta_sum
from .expr import (
    Add, AppellAtom, Const, Div, Expr, IntPow, LerchAtom, MockAtom, Mul, NamedJ,
    Neg, PochAtom, QPow, Sub, ThetaAtom, is_leaf,
)

_PROBE_FIRST = 8
_PROBE_LIMIT = 512


def mock_plain_order(arg_exp: int, target_order: int) -> int:
    """Order of the plain-q series so that q -> u*q^k is exact to ``target_order``."""
    return max(0, math.ceil((target_order + 1) / arg_exp) - 1)


class Evaluator:
    """Evaluates expressions, caching leaf series and valuation facts.

    One instance may be shared between threads; caches only ever grow and a
    cached series is reused whenever its order covers the request.
    """

    def __init__(self):
        self._leaves: dict = {}
        self._vlow: dict = {}
        self._vexact: dict = {}
        self._lock = threading.Lock()

    # -- valuations ---------------------------------------------------

    def vlow(self, e: Expr):
        """A lower bound for the valuation (``math.inf`` for a known zero)."""
        hit = self._vlow.get(e)
        if hit is None:
            hit = self._vlow[e] = self._vlow_raw(e)
        return hit

    def _vlow_raw(self, e: Expr):
        if isinstance(e, Const):
            return INF if e.value.is_zero() else 0
        if isinstance(e, QPow):
            return e.exp
        if isinstance(e, (ThetaAtom, NamedJ)):
            return e.spec.valuation
        if isinstance(e, AppellAtom):
            e.spec.check_generic()
            return e.spec.valuation_bound()
        if isinstance(e, LerchAtom):
            e.spec.check_generic()
            return e.spec.valuation_bound()
        if isinstance(e, MockAtom):
            return e.arg.exp * PLAIN_VALUATION[e.name]
        if isinstance(e, PochAtom):
            return self._poch_vlow(e)
        if isinstance(e, Neg):
            return self.vlow(e.a)
        if isinstance(e, (Add, Sub)):
            return min(self.vlow(e.a), self.vlow(e.b))
        if isinstance(e, Mul):
            return self.vlow(e.a) + self.vlow(e.b)
        if isinstance(e, Div):
            return self.vlow(e.a) - self.vexact(e.b)
        if isinstance(e, IntPow):
            if e.k == 0:
                return 0
            if e.k > 0:
                return e.k * self.vlow(e.a)
            return e.k * self.vexact(e.a)
        raise TypeError(f"not an expression node: {e!r}")

    @staticmethod
    def _poch_vlow(e: PochAtom):
        if e.n is None:
            if e.base.exp < 1 or e.x.exp < 0:
                raise DivergentProduct(f"({e.x};{e.base})_inf has unboundedly negative exponents")
            # only the first factor can have exponent 0
            return INF if e.x.exp == 0 and e.x.unit.is_one() else 0
        factors = [e.x * e.base ** i for i in range(e.n)]
        if any(f.exp == 0 and f.unit.is_one() for f in factors):
            return INF
        return sum(min(0, f.exp) for f in factors)

    def vexact(self, e: Expr) -> int:
        """The exact valuation, found by evaluating at growing orders."""
        hit = self._vexact.get(e)
        if hit is not None:
            return hit
        low = self.vlow(e)
        if low == INF:
            raise ZeroDenominator(f"{e} is identically zero")
        gap = _PROBE_FIRST
        while True:
            s = self.eval(e, low + gap)
            if not s.is_zero():
                v = s.valuation
                break
            if gap >= _PROBE_LIMIT:
                raise ZeroDenominator(f"{e} vanishes through q^{low + gap}")
            gap *= 2
        self._vexact[e] = v
        return v

    # -- order demand ----------------------------------------------------

    def plan(self, e: Expr, target_order: int):
        """Orders demanded of ``e``'s children, or ``None`` when ``e`` is a known zero."""
        T = target_order
        if isinstance(e, Neg):
            return [T]
        if isinstance(e, (Add, Sub)):
            return [T, T]
        if isinstance(e, Mul):
            va, vb = self.vlow(e.a), self.vlow(e.b)
            if va == INF or vb == INF:
                return None
            return [max(T - vb, va), max(T - va, vb)]
        if isinstance(e, Div):
            vd = self.vexact(e.b)
            va = self.vlow(e.a)
            if va == INF:
                return None
            return [max(T + vd, va), T - va + 2 * vd]
        if isinstance(e, IntPow):
            if e.k == 0:
                return []
            if e.k > 0:
                va = self.vlow(e.a)
                if va == INF:
                    return None
                return [max(T - (e.k - 1) * va, va)]
            vd = self.vexact(e.a)
            return [T + (-e.k + 1) * vd]
        raise TypeError(f"not an interior node: {e!r}")

    def required_order(self, e: Expr, target_order: int) -> dict:
        """Map from leaf path (tuple of child indices) to the order it is evaluated at.

        Mock theta leaves report the order of their plain-q series.
        """
        out: dict = {}

        def walk(node: Expr, T: int, path: tuple):
            if is_leaf(node):
                if isinstance(node, MockAtom):
                    T = mock_plain_order(node.arg.exp, T)
                out[path] = T
                return
            demands = self.plan(node, T)
            if demands is None:
                return
            for i, (child, t) in enumerate(zip(node.children(), demands)):
                walk(child, t, path + (i,))

        walk(e, target_order, ())
        return out

    # -- evaluation ------------------------------------------------------

    def eval(self, e: Expr, target_order: int) -> QSeries:
        """``e`` as a series exact to exactly ``target_order``."""
        T = target_order
        if is_leaf(e):
            return self._leaf(e, T)
        demands = self.plan(e, T)
        if demands is None:
            return QSeries.zero(T)
        if isinstance(e, Neg):
            return -self.eval(e.a, T)
        if isinstance(e, Add):
            return (self.eval(e.a, T) + self.eval(e.b, T)).truncate(T)
        if isinstance(e, Sub):
            return (self.eval(e.a, T) - self.eval(e.b, T)).truncate(T)
        if isinstance(e, Mul):
            a = self.eval(e.a, demands[0])
            b = self.eval(e.b, demands[1])
            return ps_mul(a, b, T)
        if isinstance(e, Div):
            a = self.eval(e.a, demands[0])
            d = self.eval(e.b, demands[1])
            t_inv = T - self.vlow(e.a)
            return ps_mul(a, ps_inv(d, t_inv), T)
        if isinstance(e, IntPow):
            if e.k == 0:
                return QSeries.one(T)
            a = self.eval(e.a, demands[0])
            if e.k > 0:
                return ps_pow(a, e.k).truncate(T)
            return ps_inv(ps_pow(a, -e.k), T)
        raise TypeError(f"not an expression node: {e!r}")

    def _leaf(self, e: Expr, T: int) -> QSeries:
        hit = self._leaves.get(e)
        if hit is not None and hit.order >= T:
            return hit.truncate(T)
        s = self._leaf_raw(e, T)
        with self._lock:
            prev = self._leaves.get(e)
            if prev is None or prev.order < s.order:
                self._leaves[e] = s
        return s

    def _leaf_raw(self, e: Expr, T: int) -> QSeries:
        if isinstance(e, Const):
            return QSeries.constant(e.value, T)
        if isinstance(e, QPow):
            return QSeries({e.exp: 1}, T)
        if isinstance(e, (ThetaAtom, NamedJ)):
            return theta_sum(e.spec, T)
        if isinstance(e, AppellAtom):
            return appell_m(e.spec, T)
        if isinstance(e, LerchAtom):
            return lerch_sum(e.spec, T)
        if isinstance(e, MockAtom):
            k = e.arg.exp
            if k < 1:
                raise DivergentProduct(f"{e.name} needs an argument with positive q-exponent")
            plain = mock_series(e.name, mock_plain_order(k, T))
            return ps_subst(plain, e.arg.unit, k).truncate(T)
        if isinstance(e, PochAtom):
            return pochhammer(e.x, e.base, math.inf if e.n is None else e.n, T)
        raise TypeError(f"not a leaf: {e!r}")


_default = Evaluator()


def evaluate(e: Expr, target_order: int, evaluator: Evaluator | None = None) -> QSeries:
    return (evaluator or _default).eval(e, target_order)


def required_order(e: Expr, target_order: int, evaluator: Evaluator | None = None) -> dict:
    return (evaluator or _default).required_order(e, target_order)
