"""Critical-point realization checker

Labels:
- PASS (1): verified, with the expected label and check values
- OVER_BOUND (0): degree above the cap plus the case's allowed slack
- UNVERIFIED (0): some check failed
- MISMATCH (0): verified but a label, route or check value differs from expected
"""


def _value(result: dict, key: str):
    checks = result.get("checks", {})
    if key in checks:
        return checks[key]
    if key in result:
        return result[key]
    return result.get("details", {}).get(key)


def check(result: dict, expected: dict, metadata: dict | None = None) -> dict:
    details = {"degree": result.get("degree"), "bound": result.get("bound"), "label": result.get("label"),
               "route": result.get("details", {}).get("route")}
    bound = result.get("bound")
    slack = int(expected.get("slack", 0))
    if bound is not None and result["degree"] > bound + slack:
        return {"score": 0, "label": "OVER_BOUND", "reason": f"degree {result['degree']} > {bound} + {slack}",
                "details": details}
    if not result.get("verified"):
        return {"score": 0, "label": "UNVERIFIED", "reason": "; ".join(result.get("failures", [])),
                "details": details}

    wanted = {k: v for k, v in expected.items() if k not in ("label", "slack")}
    wanted_label = expected.get("label")
    diffs = {k: {"got": _value(result, k), "expected": v} for k, v in wanted.items() if _value(result, k) != v}
    if wanted_label and result.get("label") != wanted_label:
        diffs["label"] = {"got": result.get("label"), "expected": wanted_label}
    if diffs:
        return {"score": 0, "label": "MISMATCH", "reason": ", ".join(sorted(diffs)), "details": diffs}
    return {"score": 1, "label": "PASS", "reason": f"{result['polynomial']}", "details": details}
