"""Degree-inequality checker

Labels:
- PASS (1): every report passes; details carry the slack of each inequality
- MISSING (0): an expected bound id produced no report
- FAIL (0): an inequality or sandwich report failed
"""

_INEQUALITIES = ("e40", "e42", "e71")


def check(result: dict, expected: dict, metadata: dict | None = None) -> dict:
    reports = result.get("reports", [])
    by_id: dict[str, list[dict]] = {}
    for r in reports:
        by_id.setdefault(r["id"], []).append(r)

    missing = [i for i in expected.get("ids", []) if i not in by_id]
    if missing:
        return {"score": 0, "label": "MISSING", "reason": f"no report for {', '.join(missing)}", "details": {}}

    failing = [r for r in reports if r["verdict"] != "PASS"]
    if failing:
        return {
            "score": 0,
            "label": "FAIL",
            "reason": "; ".join(f"{r['id']}: {r['lhs']} {r['relation']} {r['rhs']}" for r in failing),
            "details": {"invariants": failing[0]["details"]},
        }

    slack = {i: by_id[i][0]["slack"] for i in _INEQUALITIES if i in by_id}
    return {"score": 1, "label": "PASS", "reason": "all bounds hold", "details": {"slack": slack}}
