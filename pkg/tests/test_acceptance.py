"""Acceptance criteria 1-10.

Each test prints one ``criterion N: PASS|FAIL`` line (also under captured
output) and then asserts.  Run directly with ``python3 tests/test_acceptance.py``
for the summary alone.
"""

import sys
from collections import Counter

import pytest

from wderiv import tables, verify

_LINES: list[str] = []


@pytest.fixture
def emit(capsys):
    def _out(*args, **kw):
        with capsys.disabled():
            return _emit(*args, **kw)
    return _out


def _emit(n: int, title: str, reports, extra_ok: bool = True, note: str = "") -> bool:
    passed = sum(r.passed for r in reports)
    ok = bool(reports) and passed == len(reports) and extra_ok
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({passed}/{len(reports)} checks{'; ' + note if note else ''})"
    _LINES.append(line)
    print("\n" + line, flush=True)
    return ok


def _worst(reports) -> str:
    bad = [r for r in reports if not r.passed]
    return "" if not bad else f"first failure: {bad[0].context}"


def test_criterion_01_mu_parity(emit):
    reps = verify.symmetry()
    w_even = [r for r in reps if r.context.startswith("W even")]
    ok = emit(1, "W even and dW/dkappa even, dW/dmu odd in mu at 1e-10", reps, len(w_even) >= 48,
               f"{len(w_even)} W points")
    assert ok, _worst(reps)


def test_criterion_02_route_agreement(emit):
    reps = verify.routes()
    points = {r.context.split("(", 1)[1] for r in reps}
    ok = emit(2, "W evaluation routes agree pairwise at 1e-8", reps, len(points) >= 30, f"{len(points)} points")
    assert ok, _worst(reps)


def test_criterion_03_closed_forms_vs_fd(emit):
    reps = verify.closed_forms()
    per_case = Counter(r.context.rsplit(", x=", 1)[0] for r in reps)
    ok = emit(3, "every derivative closed form matches FD at 1e-6", reps, min(per_case.values()) >= 3,
               f"{len(per_case)} cases, >= {min(per_case.values())} x values each")
    assert ok, _worst(reps)


def test_criterion_04_log_integrals(emit):
    reps = verify.integrals()
    kinds = {k: sum(r.context.startswith(k) for r in reps) for k in ("I1*", "I2*", "I3*", "I4*", "H two", "log-Laplace")}
    ok = emit(4, "I1*/I3* and I2*/I4* at 1e-8, H at 1e-7, log-Laplace family at 1e-9", reps, all(kinds.values()),
               ", ".join(f"{k.split()[0]}:{v}" for k, v in kinds.items()))
    assert ok, _worst(reps)


def test_criterion_05_variant_forms(emit):
    reps = verify.variants()
    ms = {int(r.context.split("m=")[1].split(",")[0]) for r in reps if "m=" in r.context}
    ok = emit(5, "integer-family forms at 1e-12 (m <= 6), half-minus-mu forms at 1e-10", reps,
               ms == set(range(7)))
    assert ok, _worst(reps)


def test_criterion_06_hypergeometric_identities(emit):
    reps = verify.hypergeometric()
    g1 = [r for r in reps if r.context.startswith("G1(a;a;x)")]
    red = {int(r.context.split("m=")[1].split(",")[0]) for r in reps if r.context.startswith("2F2 reduction")}
    ok = emit(6, "G1(a;a;x) at 1e-10, finite 2F2 reduction at 1e-12 for m <= 8", reps,
               len(g1) == 16 and red == set(range(9)))
    assert ok, _worst(reps)


def test_criterion_07_sum_rules(emit):
    reps = verify.sum_rules()
    ok = emit(7, "dW/dkappa + dW/dmu = e^{-x/2} x^kappa ln x at 1e-10", reps)
    assert ok, _worst(reps)


def test_criterion_08_tables(emit):
    reps = verify.table_rows()
    xs = {float(r.context.split("x=")[1].split(")")[0]) for r in reps}
    meijer = [r for r in tables.TABLES["T2-DmK"] if r.kind == "fd-substitute"]
    corrected = sum(r.kind == "corrected" for rows in tables.TABLES.values() for r in rows)
    ok = emit(8, "every table row within 1e-6 of FD at x in {0.5,1,2,4,8}", reps,
               xs == {0.5, 1.0, 2.0, 4.0, 8.0} and len(meijer) == 4,
               f"{len(meijer)} Meijer-G rows flagged fd-substitute, {corrected} rows corrected")
    assert ok, _worst(reps)


def test_criterion_09_realness(emit):
    reps = verify.realness()
    ok = emit(9, "imaginary residual of complex-intermediate forms <= 1e-8", reps)
    assert ok, _worst(reps)


def test_criterion_10_integral_whittaker(emit):
    reps = verify.wi()
    rep = [r for r in reps if r.context.startswith("wi integral rep")]
    dk = [r for r in reps if r.context.startswith("d wi")]
    ok = emit(10, "wi integral rep vs quadrature at 1e-7, d wi/d kappa vs FD at 1e-6", reps,
               len(rep) >= 6 and len(dk) >= 3, f"{len(rep)} + {len(dk)} points")
    assert ok, _worst(reps)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]) or 0)
