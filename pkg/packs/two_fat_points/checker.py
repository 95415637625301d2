"""Two-fat-points checker

Labels:
- PASS (1): ord0 = m, ord1 >= 2m - 2, and the upper bound on ord1 holds
- ORDER (0): ord0 or ord1 is off
- BOUND (0): some order bound is not PASS
"""


def check(result: dict, expected: dict, metadata: dict | None = None) -> dict:
    ord0, ord1 = result["ord0"], result["ord1"]
    details = {"m": result.get("m"), "ord0": ord0, "ord1": ord1, "deg": result.get("deg")}
    if ord0 != expected["ord0"] or ord1 < expected["ord1_min"]:
        return {
            "score": 0,
            "label": "ORDER",
            "reason": f"ord0={ord0} (want {expected['ord0']}), ord1={ord1} (want >= {expected['ord1_min']})",
            "details": details,
        }
    upper = [r for r in result["reports"] if r["id"] == "e7"]
    if not upper or any(r["verdict"] != "PASS" for r in result["reports"]):
        return {"score": 0, "label": "BOUND", "reason": f"verdict {result['verdict']}", "details": details}
    return {"score": 1, "label": "PASS", "reason": f"ord1={ord1} <= {upper[0]['rhs']}", "details": details}
