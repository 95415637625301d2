"""Tests for the singord database layer."""

import json
import sqlite3

import pytest

from singord.db import (
    get_run_results,
    init_db,
    insert_case,
    insert_result,
    insert_run,
    insert_verdict,
    latest_run_ids,
)


@pytest.fixture
def db(tmp_path):
    """Provide a fresh database connection for each test."""
    db_path = str(tmp_path / "test.sqlite")
    conn = init_db(db_path)
    yield conn
    conn.close()


# -------------------------------------------------------------------
# init_db
# -------------------------------------------------------------------


class TestInitDb:
    def test_creates_tables(self, db):
        tables = {
            row[0]
            for row in db.execute(
                "SELECT name FROM sqlite_master WHERE type='table'"
            ).fetchall()
        }
        assert {"runs", "cases", "results", "verdicts"} <= tables

    def test_creates_indexes(self, db):
        indexes = {
            row[0]
            for row in db.execute(
                "SELECT name FROM sqlite_master WHERE type='index'"
            ).fetchall()
        }
        assert "idx_results_run_case" in indexes
        assert "idx_runs_pack" in indexes

    def test_row_factory_is_set(self, db):
        assert db.row_factory == sqlite3.Row

    def test_idempotent(self, tmp_path):
        """Calling init_db twice on same path should not fail."""
        db_path = str(tmp_path / "test.sqlite")
        init_db(db_path).close()
        conn = init_db(db_path)
        tables = {
            row[0]
            for row in conn.execute(
                "SELECT name FROM sqlite_master WHERE type='table'"
            ).fetchall()
        }
        assert "verdicts" in tables
        conn.close()


# -------------------------------------------------------------------
# insert helpers
# -------------------------------------------------------------------


class TestInserts:
    def test_insert_run(self, db):
        run_id = insert_run(db, pack_id="castelnuovo", seed=7, params={"trials": 5})
        row = db.execute("SELECT * FROM runs WHERE run_id = ?", (run_id,)).fetchone()
        assert row["pack_id"] == "castelnuovo"
        assert row["seed"] == 7
        assert json.loads(row["params_json"]) == {"trials": 5}
        assert row["created_at"]

    def test_insert_case_is_idempotent(self, db):
        first = insert_case(db, pack_id="p", case_id="p/a", op="invariants", params={"germ": "y^2 - x^3"})
        second = insert_case(db, pack_id="p", case_id="p/a", op="invariants", params={"germ": "y^2 - x^3"})
        assert first == second == "p/a"
        assert db.execute("SELECT COUNT(*) FROM cases").fetchone()[0] == 1

    def test_insert_case_generates_id(self, db):
        case_id = insert_case(db, pack_id="p", op="invariants")
        assert len(case_id) == 32

    def test_empty_params_stored_as_null(self, db):
        insert_case(db, pack_id="p", case_id="p/b", op="ak3d", params={})
        row = db.execute("SELECT params_json FROM cases WHERE case_id = 'p/b'").fetchone()
        assert row["params_json"] is None


# -------------------------------------------------------------------
# get_run_results / latest_run_ids
# -------------------------------------------------------------------


def _populate(db, pack_id="p", label="PASS"):
    run_id = insert_run(db, pack_id=pack_id)
    case_id = insert_case(db, pack_id=pack_id, case_id=f"{pack_id}/c1", op="invariants", expected={"mu": 2})
    result_id = insert_result(db, run_id=run_id, case_id=case_id, result={"mu": 2}, elapsed_ms=3.5)
    insert_verdict(db, result_id=result_id, score=1, label=label, reason="ok", details={"mu": 2})
    return run_id


class TestQueries:
    def test_get_run_results_joins_everything(self, db):
        run_id = _populate(db)
        rows = get_run_results(db, run_id)
        assert len(rows) == 1
        row = rows[0]
        assert row["label"] == "PASS"
        assert row["op"] == "invariants"
        assert json.loads(row["result_json"]) == {"mu": 2}
        assert json.loads(row["expected_json"]) == {"mu": 2}
        assert row["elapsed_ms"] == pytest.approx(3.5)

    def test_unknown_run_is_empty(self, db):
        assert get_run_results(db, "nope") == []

    def test_latest_run_per_pack(self, db):
        _populate(db, "a")
        newest_a = _populate(db, "a")
        only_b = _populate(db, "b")
        ids = latest_run_ids(db)
        assert len(ids) == 2
        assert only_b in ids
        assert newest_a in ids
