"""Table generation for corpus reports."""
import json
import sqlite3

import pandas as pd
from tabulate import tabulate


def _query_df(db_path: str, sql: str) -> pd.DataFrame:
    conn = sqlite3.connect(db_path)
    try:
        return pd.read_sql_query(sql, conn)
    finally:
        conn.close()


def _to_markdown(df: pd.DataFrame) -> str:
    return tabulate(df, headers="keys", tablefmt="pipe", showindex=False, floatfmt=".1f")


def _latest_results(db_path: str) -> pd.DataFrame:
    return _query_df(db_path, """
        SELECT ru.pack_id, ru.seed, r.case_id, r.result_json, r.elapsed_ms, v.label
        FROM results r
        JOIN runs ru    ON ru.run_id   = r.run_id
        LEFT JOIN verdicts v ON v.result_id = r.result_id
        WHERE ru.created_at = (SELECT MAX(created_at) FROM runs WHERE pack_id = ru.pack_id)
    """)


# ── verdicts ──────────────────────────────────────────────────────

def verdicts_by_pack_table(db_path: str) -> str:
    """Markdown table: pack | PASS | other labels | total | time."""
    df = _latest_results(db_path)
    if df.empty:
        return ""

    rows = []
    for pack, grp in df.groupby("pack_id"):
        rows.append({
            "Pack": pack,
            "Pass": int((grp["label"] == "PASS").sum()),
            "Not Pass": int((grp["label"] != "PASS").sum()),
            "Total": len(grp),
            "Seconds": grp["elapsed_ms"].sum() / 1000.0,
        })
    return _to_markdown(pd.DataFrame(rows))


def failing_cases_table(db_path: str) -> str:
    df = _latest_results(db_path)
    if df.empty:
        return ""
    bad = df[df["label"] != "PASS"]
    if bad.empty:
        return ""
    return _to_markdown(bad[["case_id", "label"]].rename(columns={"case_id": "Case", "label": "Label"}))


# ── bounds ────────────────────────────────────────────────────────

def bound_checks_table(db_path: str) -> str:
    """Markdown table: bound id | PASS | FAIL | INCONCLUSIVE."""
    df = _latest_results(db_path)
    rows = []
    for raw in df["result_json"].dropna():
        for report in json.loads(raw).get("reports", []):
            rows.append({"bound": report["id"], "verdict": report["verdict"]})
    if not rows:
        return ""
    counts = pd.DataFrame(rows).groupby(["bound", "verdict"]).size().unstack(fill_value=0).reset_index()
    counts.columns.name = None
    return _to_markdown(counts.rename(columns={"bound": "Bound"}))


# ── realizations ──────────────────────────────────────────────────

def realizer_degrees_table(db_path: str) -> str:
    """Markdown table: case | targets | degree | cap | label | verified."""
    df = _latest_results(db_path)
    rows = []
    for _, row in df.dropna(subset=["result_json"]).iterrows():
        result = json.loads(row["result_json"])
        if "polynomial" not in result or "verified" not in result:
            continue
        rows.append({
            "Case": row["case_id"],
            "Targets": " + ".join(result.get("targets", [])),
            "Degree": result["degree"],
            "Cap": "-" if result.get("bound") is None else result["bound"],
            "Label": result.get("label"),
            "Verified": result["verified"],
        })
    if not rows:
        return ""
    return _to_markdown(pd.DataFrame(rows))
