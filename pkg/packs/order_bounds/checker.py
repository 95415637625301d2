"""Order-bound checker

Labels:
- PASS (1): final verdict PASS with every expected bound reported, possibly
  after the rerun with more trials
- INCONCLUSIVE (0): the generic orders never stabilized
- FAIL (0): a bound failed or an expected order differs
"""


def check(result: dict, expected: dict, metadata: dict | None = None) -> dict:
    reports = result.get("reports", [])
    seen = {r["id"] for r in reports}
    details = {"ord0": result.get("ord0"), "ord1": result.get("ord1"), "deg": result.get("deg"),
               "rerun": result.get("rerun", False)}

    missing = sorted(set(expected.get("ids", [])) - seen)
    if missing:
        return {"score": 0, "label": "FAIL", "reason": f"no report for {', '.join(missing)}", "details": details}

    for key in ("ord0", "ord1"):
        if key in expected and result.get(key) != expected[key]:
            return {
                "score": 0,
                "label": "FAIL",
                "reason": f"{key}={result.get(key)}, expected {expected[key]}",
                "details": details,
            }

    verdict = result.get("verdict")
    if verdict == "INCONCLUSIVE":
        return {"score": 0, "label": "INCONCLUSIVE", "reason": "unstable after rerun", "details": details}
    if verdict != "PASS":
        failing = [r["id"] for r in reports if r["verdict"] == "FAIL"]
        return {"score": 0, "label": "FAIL", "reason": f"failing: {', '.join(failing)}", "details": details}

    reason = f"{len(reports)} bounds hold" + (" after rerun" if result.get("rerun") else "")
    return {"score": 1, "label": "PASS", "reason": reason, "details": details}
