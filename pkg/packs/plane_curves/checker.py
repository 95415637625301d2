"""Plane-curve checker

Labels:
- PASS (1): verified curve of the expected degree; the singular scan, irreducibility
  and T-smoothness checks all hold
- UNVERIFIED (0): the realizer returned a member with failed checks
- DEGREE (0): the curve has another degree than expected
"""

_REQUIRED = ("extra_sing_clean", "irreducible", "t_smooth", "tree_match", "genus")


def check(result: dict, expected: dict, metadata: dict | None = None) -> dict:
    checks = result.get("checks", {})
    details = {
        "degree": result.get("degree"),
        "scan": checks.get("singular_scan"),
        "t_smooth_h1": checks.get("t_smooth_h1"),
    }
    failed = [name for name in _REQUIRED if checks.get(name) is not True]
    if not result.get("verified") or failed:
        reason = "; ".join(result.get("failures", [])) or f"checks not passing: {', '.join(failed)}"
        return {"score": 0, "label": "UNVERIFIED", "reason": reason, "details": details}
    if result["degree"] != expected["degree"]:
        return {"score": 0, "label": "DEGREE", "reason": f"degree {result['degree']}, expected {expected['degree']}",
                "details": details}
    if result.get("label") != expected.get("label", result.get("label")):
        return {"score": 0, "label": "UNVERIFIED", "reason": f"label {result.get('label')}", "details": details}
    return {"score": 1, "label": "PASS", "reason": result["polynomial"], "details": details}
