import json
import sqlite3
from datetime import datetime, timezone
from uuid import uuid4


def init_db(db_path: str) -> sqlite3.Connection:
    conn = sqlite3.connect(db_path)
    conn.row_factory = sqlite3.Row
    conn.execute("PRAGMA journal_mode=WAL")
    conn.execute("PRAGMA foreign_keys=ON")

    conn.executescript("""
        CREATE TABLE IF NOT EXISTS runs (
            run_id      TEXT PRIMARY KEY,
            created_at  TEXT NOT NULL,
            git_sha     TEXT,
            pack_id     TEXT NOT NULL,
            seed        INTEGER NOT NULL,
            params_json TEXT
        );

        CREATE TABLE IF NOT EXISTS cases (
            case_id       TEXT PRIMARY KEY,
            pack_id       TEXT NOT NULL,
            op            TEXT NOT NULL,
            params_json   TEXT,
            expected_json TEXT,
            metadata_json TEXT
        );

        CREATE TABLE IF NOT EXISTS results (
            result_id   TEXT PRIMARY KEY,
            run_id      TEXT NOT NULL,
            case_id     TEXT NOT NULL,
            result_json TEXT,
            elapsed_ms  REAL,
            FOREIGN KEY (run_id)  REFERENCES runs(run_id),
            FOREIGN KEY (case_id) REFERENCES cases(case_id)
        );

        CREATE TABLE IF NOT EXISTS verdicts (
            result_id    TEXT PRIMARY KEY,
            score        REAL,
            label        TEXT,
            reason       TEXT,
            details_json TEXT,
            FOREIGN KEY (result_id) REFERENCES results(result_id)
        );

        CREATE INDEX IF NOT EXISTS idx_results_run_case
            ON results(run_id, case_id);

        CREATE INDEX IF NOT EXISTS idx_runs_pack
            ON runs(pack_id);
    """)
    conn.commit()
    return conn


def _dump(value) -> str | None:
    return json.dumps(value, sort_keys=True) if value else None


def insert_run(
    conn: sqlite3.Connection,
    *,
    pack_id: str,
    seed: int = 0,
    git_sha: str | None = None,
    params: dict | None = None,
) -> str:
    run_id = uuid4().hex
    created_at = datetime.now(timezone.utc).isoformat()
    conn.execute(
        "INSERT INTO runs (run_id, created_at, git_sha, pack_id, seed, params_json) VALUES (?, ?, ?, ?, ?, ?)",
        (run_id, created_at, git_sha, pack_id, seed, _dump(params)),
    )
    conn.commit()
    return run_id


def insert_case(
    conn: sqlite3.Connection,
    *,
    pack_id: str,
    op: str,
    params: dict | None = None,
    expected: dict | None = None,
    metadata: dict | None = None,
    case_id: str | None = None,
) -> str:
    case_id = case_id or uuid4().hex
    conn.execute(
        "INSERT OR IGNORE INTO cases (case_id, pack_id, op, params_json, expected_json, metadata_json) "
        "VALUES (?, ?, ?, ?, ?, ?)",
        (case_id, pack_id, op, _dump(params), _dump(expected), _dump(metadata)),
    )
    conn.commit()
    return case_id


def insert_result(
    conn: sqlite3.Connection,
    *,
    run_id: str,
    case_id: str,
    result: dict,
    elapsed_ms: float,
) -> str:
    result_id = uuid4().hex
    conn.execute(
        "INSERT INTO results (result_id, run_id, case_id, result_json, elapsed_ms) VALUES (?, ?, ?, ?, ?)",
        (result_id, run_id, case_id, json.dumps(result, sort_keys=True), elapsed_ms),
    )
    conn.commit()
    return result_id


def insert_verdict(
    conn: sqlite3.Connection,
    *,
    result_id: str,
    score: float,
    label: str | None = None,
    reason: str | None = None,
    details: dict | None = None,
) -> None:
    conn.execute(
        "INSERT INTO verdicts (result_id, score, label, reason, details_json) VALUES (?, ?, ?, ?, ?)",
        (result_id, score, label, reason, _dump(details)),
    )
    conn.commit()


def get_run_results(conn: sqlite3.Connection, run_id: str) -> list[dict]:
    rows = conn.execute(
        """
        SELECT r.result_id, r.case_id, r.result_json, r.elapsed_ms,
               v.score, v.label, v.reason, v.details_json,
               c.op, c.params_json, c.expected_json, c.metadata_json
        FROM results r
        LEFT JOIN verdicts v ON v.result_id = r.result_id
        LEFT JOIN cases c    ON c.case_id   = r.case_id
        WHERE r.run_id = ?
        ORDER BY r.case_id
        """,
        (run_id,),
    ).fetchall()
    return [dict(r) for r in rows]


def latest_run_ids(conn: sqlite3.Connection) -> list[str]:
    """The most recent run of every pack."""
    rows = conn.execute(
        """
        SELECT run_id FROM runs r
        WHERE created_at = (SELECT MAX(created_at) FROM runs WHERE pack_id = r.pack_id)
        ORDER BY pack_id
        """
    ).fetchall()
    return [r["run_id"] for r in rows]
