from __future__ import annotations

import random

from mocktheta import props
from mocktheta.props import PROPERTIES, Property, draws, run_all, run_property


def test_property_names():
    assert len(PROPERTIES) == 16
    assert {n.split(".")[0] for n in PROPERTIES} == {"theta", "appell", "split", "lerch"}


def test_draws_are_seeded():
    for name in PROPERTIES:
        assert draws(name, 5, 3) == draws(name, 5, 3)
    assert draws("appell.flip", 5, 3) != draws("appell.flip", 5, 4)


def test_draws_are_generic():
    for name in ["appell.change-z", "split.n2", "split.n3", "theta.weierstrass"]:
        prop = PROPERTIES[name]
        assert all(prop.generic(*d) for d in draws(name, 10, 1))


def test_run_all_passes():
    results = run_all(5, 30, 11)
    assert [r.name for r in results] == sorted(PROPERTIES)
    assert all(r.status == "pass" and r.passed == 5 for r in results)


def test_failure_is_recorded(monkeypatch):
    broken = Property("theta.inversion", PROPERTIES["theta.inversion"].draw,
                      lambda z, q, order: (props.th.check_inversion(z, q, order)[0] + 1, props.th.check_inversion(z, q, order)[1]))
    monkeypatch.setitem(PROPERTIES, "theta.inversion", broken)
    r = run_property("theta.inversion", 4, 10, 0)
    assert r.status == "fail" and r.mismatch is not None and r.failing_params is not None
    assert r.to_json()["mismatch"]["exponent"] == 0


def test_draw_exhaustion(monkeypatch):
    never = Property("appell.flip", lambda rng: (rng.random(),), lambda *a: None, lambda *a: False)
    monkeypatch.setitem(PROPERTIES, "appell.flip", never)
    r = run_property("appell.flip", 3, 10, 0)
    assert r.status == "error" and r.error_kind == "DrawExhausted"
    assert r.redraws == props.MAX_REDRAWS


def test_rand_ranges():
    rng = random.Random(0)
    for _ in range(200):
        m, b = props.rand_mono(rng), props.rand_base(rng)
        assert props.EXP_RANGE[0] <= m.exp <= props.EXP_RANGE[1]
        assert props.BASE_RANGE[0] <= b.exp <= props.BASE_RANGE[1]
