import logging
import subprocess
import time
from dataclasses import replace

import click

from .config import Settings, resolve
from .db import init_db, insert_case, insert_result, insert_run, insert_verdict
from .errors import SingordError
from .jsonio import error_payload, to_jsonable
from .pack_loader import PackConfig
from .operations import execute

logger = logging.getLogger(__name__)

PASS_LABEL = "PASS"


def _get_git_sha() -> str | None:
    try:
        result = subprocess.run(
            ["git", "rev-parse", "HEAD"],
            capture_output=True,
            text=True,
            timeout=5,
        )
        if result.returncode == 0:
            return result.stdout.strip()
    except (FileNotFoundError, subprocess.TimeoutExpired):
        pass
    return None


def _check(pack: PackConfig, result: dict, expected: dict | None, metadata: dict | None) -> dict:
    if "error" in result:
        return {"score": 0, "label": "ERROR", "reason": f"{result['error']}: {result['message']}", "details": {}}
    if pack.checker and hasattr(pack.checker, "check"):
        verdict = pack.checker.check(result=result, expected=expected or {}, metadata=metadata or {})
        if isinstance(verdict, dict):
            return {
                "score": verdict.get("score", 0),
                "label": verdict.get("label"),
                "reason": verdict.get("reason"),
                "details": verdict.get("details") or {},
            }
        return {"score": int(bool(verdict)), "label": PASS_LABEL if verdict else "FAIL", "reason": None,
                "details": {}}
    return {"score": 1, "label": PASS_LABEL, "reason": "no checker", "details": {}}


def run_pack(
    pack: PackConfig,
    seed: int = 0,
    settings: Settings | None = None,
    db_path: str | None = None,
    include_slow: bool = True,
) -> dict:
    """Run every case of a pack; returns the deterministic per-pack report."""
    settings = replace(resolve(settings), trials=pack.trials)
    conn = init_db(db_path) if db_path else None
    run_id = None
    if conn is not None:
        run_id = insert_run(
            conn,
            pack_id=pack.id,
            seed=seed,
            git_sha=_get_git_sha(),
            params={"trials": pack.trials, "jet_ceiling": settings.jet_ceiling},
        )

    cases = [c for c in pack.cases if include_slow or not c.slow]
    total = len(cases)
    click.echo(f"--- Pack: {pack.id} | seed={seed} | {total} cases ---", err=True)

    rows = []
    for i, case in enumerate(cases, start=1):
        start = time.perf_counter()
        try:
            result = to_jsonable(execute(case.op, case.params, seed, settings))
        except (SingordError, ValueError) as exc:
            logger.debug("case %s raised %s", case.id, exc)
            result = error_payload(exc)
        elapsed_ms = (time.perf_counter() - start) * 1000.0
        verdict = _check(pack, result, case.expected, case.metadata)

        if conn is not None:
            case_id = insert_case(
                conn,
                pack_id=pack.id,
                case_id=f"{pack.id}/{case.id}",
                op=case.op,
                params=case.params,
                expected=case.expected,
                metadata=case.metadata,
            )
            result_id = insert_result(
                conn,
                run_id=run_id,
                case_id=case_id,
                result=result,
                elapsed_ms=elapsed_ms,
            )
            insert_verdict(
                conn,
                result_id=result_id,
                score=verdict["score"],
                label=verdict["label"],
                reason=verdict["reason"],
                details=verdict["details"],
            )

        click.echo(f"  [{i}/{total}] case={case.id} label={verdict['label']} elapsed={elapsed_ms:.0f}ms", err=True)
        rows.append({
            "id": case.id,
            "op": case.op,
            "label": verdict["label"],
            "reason": verdict["reason"],
            "result": result,
        })

    if conn is not None:
        conn.close()
    passed = sum(1 for r in rows if r["label"] == PASS_LABEL)
    return {"id": pack.id, "name": pack.name, "cases": rows, "passed": passed, "total": total}


def run_corpus(
    packs: list[PackConfig],
    seed: int = 0,
    settings: Settings | None = None,
    db_path: str | None = None,
    include_slow: bool = True,
) -> dict:
    reports = [run_pack(p, seed, settings, db_path, include_slow) for p in packs]
    return {
        "seed": seed,
        "packs": reports,
        "passed": all(r["passed"] == r["total"] for r in reports),
    }
