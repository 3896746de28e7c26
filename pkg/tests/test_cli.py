from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from mocktheta.cli import dump_json, main
from mocktheta.identity import CATALOG, ids


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_list_text_marks_gaps():
    code, out, _ = run("list")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == len(CATALOG)
    for rid in ids():
        matching = [ln for ln in lines if ln.split()[0] == rid]
        assert len(matching) == 1
        assert ("[gap]" in matching[0]) == (not CATALOG[rid].active)


def test_list_json():
    code, out, _ = run("list", "--json")
    rows = json.loads(out)
    assert code == 0 and [r["id"] for r in rows] == ids()
    assert {r["status"] for r in rows} == {"active", "gap"}


def test_verify_pass():
    code, out, _ = run("verify", "--id", "forms.psi6", "--order", "40")
    assert code == 0 and "1/1 passed" in out


def test_verify_json_round_trip():
    code, out, _ = run("verify", "--id", "forms.phi6", "gm.2", "--order", "30", "--json")
    entries = json.loads(out)
    assert code == 0
    assert [e["id"] for e in entries] == ["forms.phi6", "gm.2"]
    assert dump_json(entries) + "\n" == out


def test_verify_gap_excluded_from_totals():
    code, out, _ = run("verify", "--id", "sixth-new.1", "forms.psi6", "--order", "20")
    assert code == 0 and "1/1 passed" in out and "gap" in out


def test_verify_unknown_id_is_usage():
    code, _, err = run("verify", "--id", "nope")
    assert code == 2 and "unknown identity id" in err


@pytest.mark.parametrize("argv", [[], ["verify"], ["verify", "--all", "--id", "gm.1"],
                                  ["eval", "q", "--order", "0"], ["props", "--cases", "x"]])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_eval_text_and_json():
    code, out, _ = run("eval", "j(q;q)", "--order", "40")
    assert code == 0 and out.strip() == "0 + O(q^41)"
    code, out, _ = run("eval", "q^-1 + 2*z3", "--order", "3", "--json")
    data = json.loads(out)
    assert code == 0 and data["expr"] == "q^-1 + 2*z3" and data["order"] == 3


def test_eval_parse_error():
    code, out, err = run("eval", "J(1,")
    assert code == 2 and out == "" and "parse error" in err


def test_eval_error():
    code, _, err = run("eval", "m(q,q^-1;q)")
    assert code == 3 and "DegenerateZ" in err


def test_props_deterministic():
    a = json.loads(run("props", "--cases", "3", "--order", "20", "--seed", "7", "--json")[1])
    b = json.loads(run("props", "--cases", "3", "--order", "20", "--seed", "7", "--json")[1])
    strip = lambda xs: [{k: v for k, v in x.items() if k != "elapsed_ms"} for x in xs]
    assert strip(a) == strip(b)
    assert all(e["status"] == "pass" for e in a)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mocktheta", "verify", "--id", "forms.f3", "--order", "20"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "1/1 passed" in proc.stdout
