import math

import pytest

from wderiv import tables
from wderiv.cli import read_table_csv, read_table_json, main
from wderiv.errors import DomainError


def test_table_ids():
    assert set(tables.TABLES) == set(tables.TABLE_IDS)


def test_t5_at_two():
    recs = tables.evaluate_table("T5", [2.0])
    assert len(recs) == 19
    assert max(r.residual for r in recs) < 1e-8


def test_t3b_zero_row():
    recs = [r for r in tables.evaluate_table("T3B", [0.5, 1.0, 2.0]) if (r.kappa, r.mu) == ("1/2", "0")]
    assert len(recs) == 3 and all(r.value == 0.0 for r in recs)


def test_t3a_matches_printed_rows():
    for r in tables.evaluate_table("T3A", [0.5, 1.0, 2.0]):
        assert r.residual < 1e-6


def test_literal_failures_are_exactly_the_corrected_rows():
    failing = set()
    for tid, rows in tables.TABLES.items():
        for row in rows:
            if row.expr is None:
                continue
            if any(tables.printed_residual(row, x) > 1e-6 for x in (0.5, 2.0)):
                failing.add((tid, row.kappa, row.mu))
    assert failing == set(tables._FIXES)


def test_meijer_rows_are_flagged():
    rows = [r for r in tables.TABLES["T2-DmK"] if r.expr is None]
    assert {float(r.mu) for r in rows} == {0.5, 1.0, 1.5, 2.0}
    assert all(r.kind == "fd-substitute" for r in rows)
    assert math.isnan(tables.printed_residual(rows[0], 1.0))


def test_unknown_table():
    with pytest.raises(DomainError):
        tables.evaluate_table("T9")


@pytest.mark.parametrize("fmt,reader", [("csv", read_table_csv), ("json", read_table_json)])
def test_serialisation_round_trip(fmt, reader, tmp_path):
    out = tmp_path / f"t3a.{fmt}"
    assert main(["table", "T3A", "--x", "0.5,2", "--format", fmt, "--out", str(out)]) == 0
    recs = reader(out.read_text())
    assert recs == tables.evaluate_table("T3A", [0.5, 2.0])
