"""Seeded randomized property suites for the theta and Appell toolbox.

Each property draws monomial parameters, rejects degenerate draws up front (an
Appell function at non-generic parameters, or a vanishing theta denominator)
and compares both sides exactly.  Draws come from ``random.Random`` seeded per
property, so a seed fixes every parameter and every outcome.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import appell as ap
from . import theta as th
from .appell import AppellSpec, LerchSpec
from .cyclotomic import Unit
from .errors import MockThetaError, NonGeneric
from .qseries import Mismatch, Monomial, ps_eq
from .theta import ThetaSpec

EXP_RANGE = (-5, 5)
BASE_RANGE = (1, 6)
MAX_REDRAWS = 100


class DrawExhausted(MockThetaError):
    """No generic parameters found within the redraw budget."""


@dataclass(frozen=True)
class Property:
    name: str
    draw: Callable[[random.Random], tuple]
    check: Callable[..., tuple]
    generic: Callable[..., bool] = lambda *a: True


@dataclass
class PropResult:
    name: str
    cases: int
    order: int
    passed: int = 0
    redraws: int = 0
    elapsed_ms: int = 0
    mismatch: Optional[Mismatch] = None
    failing_params: Optional[tuple] = None
    error_kind: Optional[str] = None
    draws: list = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.error_kind is not None:
            return "error"
        return "pass" if self.mismatch is None else "fail"

    def to_json(self) -> dict:
        mm = None
        if self.mismatch is not None:
            m = self.mismatch
            mm = {"exponent": m.exponent, "lhs": str(m.lhs), "rhs": str(m.rhs)}
        return {
            "id": f"props.{self.name}",
            "status": self.status,
            "order": self.order,
            "elapsed_ms": self.elapsed_ms,
            "mismatch": mm,
            "error_kind": self.error_kind,
        }


# -- draws --------------------------------------------------------------

def rand_mono(rng: random.Random, lo: int = EXP_RANGE[0], hi: int = EXP_RANGE[1]) -> Monomial:
    return Monomial(Unit(rng.randrange(6)), rng.randint(lo, hi))


def rand_base(rng: random.Random) -> Monomial:
    return Monomial(Unit(rng.randrange(6)), rng.randint(*BASE_RANGE))


def _nonzero(*specs: ThetaSpec) -> bool:
    return not any(s.is_zero() for s in specs)


def _generic(*specs: AppellSpec) -> bool:
    for s in specs:
        try:
            s.check_generic()
        except NonGeneric:
            return False
    return True


_NEG = Monomial(Unit(3))


def _split2_ok(x, z, zp, q) -> bool:
    q2, q4 = q ** 2, q ** 4
    return _generic(
        AppellSpec(x, z, q), AppellSpec(_NEG * q * x ** 2, zp, q4),
        AppellSpec(_NEG * q.inverse() * x ** 2, zp, q4),
    ) and _nonzero(
        ThetaSpec(x * z, q), ThetaSpec(zp, q4), ThetaSpec(_NEG * q * x ** 2 * zp, q2),
        ThetaSpec(z, q2), ThetaSpec(q * z, q2),
    )


def _split3_ok(x, z, zp, q) -> bool:
    q3, q9 = q ** 3, q ** 9
    x3 = x ** 3
    return _generic(
        AppellSpec(x, z, q), AppellSpec(q3 * x3, zp, q9), AppellSpec(x3, zp, q9),
        AppellSpec(q3.inverse() * x3, zp, q9),
    ) and _nonzero(
        ThetaSpec(x * z, q), ThetaSpec(zp, q9), ThetaSpec(x3 * zp, q3),
        ThetaSpec(z, q3), ThetaSpec(q * z, q3), ThetaSpec(q ** 2 * z, q3),
    )


def _lerch_draw(rng: random.Random) -> tuple:
    a2 = rng.randint(1, 4)
    a1 = rng.randint(-5, 5)
    if (a2 + a1) % 2:
        a1 += 1
    a0 = 2 * rng.randint(-3, 3)
    c = rng.choice([-3, -2, -1, 1, 2, 3])
    spec = LerchSpec(Unit(rng.randrange(6)), a2, a1, a0, Unit(rng.randrange(6)), c, rng.randint(-4, 4))
    return (spec,)


def _lerch_ok(spec: LerchSpec) -> bool:
    try:
        spec.check_generic()
    except NonGeneric:
        return False
    return True


def _lerch_window(spec: LerchSpec, order: int):
    return ap.lerch_sum(spec, order), ap.lerch_sum(spec, order, pad=5)


def _m(x, z, q):
    return AppellSpec(x, z, q)


PROPERTIES: dict[str, Property] = {p.name: p for p in [
    Property("theta.inversion", lambda r: (rand_mono(r), rand_base(r)), th.check_inversion),
    Property("theta.quasi-periodicity",
             lambda r: (rand_mono(r), rand_base(r), r.randint(-4, 4)), th.check_quasi_periodicity),
    Property("theta.base-split",
             lambda r: (rand_mono(r), rand_base(r), r.choice([2, 3])), th.check_base_split),
    Property("theta.dissection",
             lambda r: (rand_mono(r), rand_base(r), r.choice([2, 3])), th.check_dissection),
    Property("theta.root-split",
             lambda r: (rand_mono(r), rand_base(r), r.choice([2, 3])), th.check_root_split),
    Property("theta.product-pair",
             lambda r: (rand_mono(r), rand_mono(r), rand_base(r)), th.check_product_pair),
    Property("theta.quintuple", lambda r: (rand_mono(r), rand_base(r)), th.check_quintuple),
    Property("theta.weierstrass",
             lambda r: (rand_mono(r), rand_mono(r), rand_mono(r), rand_mono(r), rand_base(r)),
             th.check_weierstrass,
             lambda a, b, c, d, q: _nonzero(*[s for g in th.weierstrass_specs(a, b, c, d, q) for s in g])),
    Property("appell.shift-z", lambda r: (rand_mono(r), rand_mono(r), rand_base(r)), ap.check_shift_z,
             lambda x, z, q: _generic(_m(x, z, q), _m(x, q * z, q))),
    Property("appell.flip", lambda r: (rand_mono(r), rand_mono(r), rand_base(r)), ap.check_flip,
             lambda x, z, q: _generic(_m(x, z, q), _m(x.inverse(), z.inverse(), q))),
    Property("appell.shift-x", lambda r: (rand_mono(r), rand_mono(r), rand_base(r)), ap.check_shift_x,
             lambda x, z, q: _generic(_m(q * x, z, q), _m(x, z, q))),
    Property("appell.flip-xz", lambda r: (rand_mono(r), rand_mono(r), rand_base(r)), ap.check_flip_xz,
             lambda x, z, q: _generic(_m(x, z, q), _m(x, (x * z).inverse(), q))),
    Property("appell.change-z",
             lambda r: (rand_mono(r), rand_mono(r), rand_mono(r), rand_base(r)), ap.check_change_z,
             lambda x, z0, z1, q: _generic(_m(x, z0, q), _m(x, z1, q))
             and _nonzero(ThetaSpec(x * z0, q), ThetaSpec(x * z1, q))),
    Property("split.n2",
             lambda r: (rand_mono(r), rand_mono(r), rand_mono(r), rand_base(r)), ap.split_n2, _split2_ok),
    Property("split.n3",
             lambda r: (rand_mono(r), rand_mono(r), rand_mono(r), rand_base(r)), ap.split_n3, _split3_ok),
    Property("lerch.window", _lerch_draw, _lerch_window, _lerch_ok),
]}


def draws(name: str, cases: int, seed: int) -> list[tuple]:
    """The parameter tuples a run would use (after rejecting degenerate draws)."""
    return run_property(name, cases, 0, seed, evaluate=False).draws


def run_property(name: str, cases: int, order: int, seed: int, evaluate: bool = True) -> PropResult:
    prop = PROPERTIES[name]
    rng = random.Random(f"{seed}/{name}")
    res = PropResult(name, cases, order)
    start = time.perf_counter()
    for _ in range(cases):
        for _attempt in range(MAX_REDRAWS):
            params = prop.draw(rng)
            if prop.generic(*params):
                break
            res.redraws += 1
        else:
            res.error_kind = DrawExhausted.__name__
            break
        res.draws.append(params)
        if not evaluate:
            continue
        try:
            lhs, rhs = prop.check(*params, order)
            mm = ps_eq(lhs, rhs, order)
        except MockThetaError as exc:
            res.error_kind = exc.kind
            res.failing_params = params
            break
        if mm is not None:
            if res.mismatch is None:
                res.mismatch, res.failing_params = mm, params
            continue
        res.passed += 1
    res.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return res


def run_all(cases: int, order: int, seed: int, names=None) -> list[PropResult]:
    names = sorted(PROPERTIES) if names is None else list(names)
    return [run_property(n, cases, order, seed) for n in names]
