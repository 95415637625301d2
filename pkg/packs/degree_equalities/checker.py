"""Degree-formula checker

Labels:
- PASS (1): every report passes and each expected bound id was checked
- MISSING (0): an expected bound id produced no report
- FAIL (0): some report failed; the first failing id is named
"""


def check(result: dict, expected: dict, metadata: dict | None = None) -> dict:
    reports = result.get("reports", [])
    seen = {r["id"] for r in reports}
    missing = sorted(set(expected.get("ids", [])) - seen)
    if missing:
        return {
            "score": 0,
            "label": "MISSING",
            "reason": f"no report for {', '.join(missing)}",
            "details": {"seen": sorted(seen)},
        }
    failing = [r for r in reports if r["verdict"] != "PASS"]
    if failing:
        first = failing[0]
        return {
            "score": 0,
            "label": "FAIL",
            "reason": f"{first['id']}: {first['lhs']} {first['relation']} {first['rhs']} is {first['verdict']}",
            "details": {"failing": [r["id"] for r in failing], "invariants": first["details"]},
        }
    return {
        "score": 1,
        "label": "PASS",
        "reason": f"{len(reports)} reports pass",
        "details": {"ids": sorted(seen)},
    }
