import io
import json
import math

import pytest

from wderiv.cli import main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), buf)
    return code, buf.getvalue()


def value_of(*argv):
    code, text = run(*argv, "--format", "json")
    assert code == 0
    return json.loads(text)["value"]


def test_eval_w():
    assert math.isclose(value_of("eval", "--fn", "W", "--kappa", "0", "--mu", "0.5", "--x", "2"), math.exp(-1), rel_tol=1e-14)


def test_eval_derivative():
    v = value_of("eval", "--fn", "dW", "--wrt", "kappa", "--kappa", "1", "--mu", "1/2", "--x", "2")
    assert math.isclose(v, math.exp(-1) * (2 * math.log(2) - 1), rel_tol=1e-13)


def test_eval_integral_whittaker_pair():
    lower = value_of("eval", "--fn", "Wi", "--kappa", "1", "--mu", "0.5", "--x", "2")
    upper = value_of("eval", "--fn", "wi", "--kappa", "1", "--mu", "0.5", "--x", "2")
    assert math.isclose(lower, 2 * (1 - math.exp(-1)), rel_tol=1e-12)
    assert math.isclose(upper, 2 * math.exp(-1), rel_tol=1e-12)


@pytest.mark.parametrize("fmt", ["plain", "csv"])
def test_eval_text_formats(fmt):
    code, text = run("eval", "--fn", "M", "--kappa", "0.8", "--mu", "0.3", "--x", "2", "--format", fmt)
    assert code == 0 and "value" in text


@pytest.mark.parametrize("argv,code", [
    (["eval", "--fn", "W", "--kappa", "0", "--mu", "0.5", "--x", "-1"], 2),
    (["eval", "--fn", "W", "--kappa", "0", "--mu", "abc", "--x", "1"], 64),
    (["eval", "--fn", "dW", "--kappa", "0", "--mu", "0.3", "--x", "1"], 64),
    (["eval", "--fn", "W", "--kappa", "0", "--mu", "0.3", "--x", "1", "--wrt", "mu"], 64),
    (["bogus"], 64),
])
def test_exit_codes(argv, code):
    assert run(*argv)[0] == code


def test_table_unwritable_output(tmp_path):
    assert run("table", "T5", "--out", str(tmp_path / "missing" / "t.csv"))[0] == 74


def test_table_csv_to_stdout():
    code, text = run("table", "T5", "--x", "2")
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0] == "table_id,kappa,mu,x,value,method,residual" and len(lines) == 20


def test_verify_pass_and_fail():
    code, text = run("verify", "--suite", "hypergeometric")
    doc = json.loads(text)
    assert code == 0 and doc["passed"] == doc["total"] > 0
    code, text = run("verify", "--suite", "variants", "--tol", "1e-30")
    assert code == 1 and json.loads(text)["passed"] < json.loads(text)["total"]


def test_verify_unknown_suite():
    assert run("verify", "--suite", "nope")[0] == 64


def test_module_entry_point():
    import subprocess
    import sys
    p = subprocess.run([sys.executable, "-m", "wderiv", "eval", "--fn", "W", "--kappa", "0", "--mu", "1/2", "--x", "2"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and "value=" in p.stdout
