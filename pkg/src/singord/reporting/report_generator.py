"""Report generator that combines the result tables into a markdown report."""
import sqlite3
from datetime import datetime, timezone
from pathlib import Path

from ..bounds import HISTORICAL_CONSTANTS
from .tables import (
    bound_checks_table,
    failing_cases_table,
    realizer_degrees_table,
    verdicts_by_pack_table,
)


def _run_metadata(db_path: str) -> dict:
    """Gather high-level metadata about the runs in the database."""
    conn = sqlite3.connect(db_path)
    conn.row_factory = sqlite3.Row
    try:
        packs = [r[0] for r in conn.execute("SELECT DISTINCT pack_id FROM runs ORDER BY pack_id").fetchall()]
        seeds = [r[0] for r in conn.execute("SELECT DISTINCT seed FROM runs ORDER BY seed").fetchall()]
        sha_row = conn.execute(
            "SELECT git_sha FROM runs WHERE git_sha IS NOT NULL LIMIT 1"
        ).fetchone()
        git_sha = sha_row["git_sha"] if sha_row else None
        return {"packs": packs, "seeds": seeds, "git_sha": git_sha}
    finally:
        conn.close()


def generate_report(db_path: str, output_dir: str) -> str:
    """Write ``summary.md`` for the latest run of every pack; returns its path."""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)

    meta = _run_metadata(db_path)
    sections: list[str] = []

    # ── header ────────────────────────────────────────────────────
    sections.append("# Corpus Report\n")
    sections.append(f"**Generated:** {datetime.now(timezone.utc).strftime('%Y-%m-%d %H:%M UTC')}\n")
    sections.append(f"**Packs:** {', '.join(meta['packs']) or 'none'}\n")
    sections.append(f"**Seeds:** {', '.join(str(s) for s in meta['seeds']) or 'none'}\n")
    if meta["git_sha"]:
        sections.append(f"**Git SHA:** `{meta['git_sha']}`\n")
    sections.append("")

    for title, table in (
        ("Verdicts by Pack", verdicts_by_pack_table(db_path)),
        ("Cases Not Passing", failing_cases_table(db_path)),
        ("Bound Checks", bound_checks_table(db_path)),
        ("Realized Degrees", realizer_degrees_table(db_path)),
    ):
        if table:
            sections.append(f"## {title}\n")
            sections.append(table)
            sections.append("")

    # ── earlier constants, for comparison only ────────────────────
    sections.append("## Earlier Bounds (not checked)\n")
    for bound_id, text in sorted(HISTORICAL_CONSTANTS.items()):
        sections.append(f"- `{bound_id}`: {text}")
    sections.append("")

    md_path = str(out / "summary.md")
    Path(md_path).write_text("\n".join(sections))
    return md_path
