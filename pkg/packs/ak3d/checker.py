"""Three-variable A_k checker

Labels:
- PASS (1): mu = k, corank <= 1, verified
- MU (0): the Milnor number is off
- UNVERIFIED (0): another check failed
"""


def check(result: dict, expected: dict, metadata: dict | None = None) -> dict:
    checks = result.get("checks", {})
    details = {"mu": checks.get("mu"), "corank": checks.get("corank"), "degree": result.get("degree")}
    if checks.get("mu") != expected["mu"]:
        return {"score": 0, "label": "MU", "reason": f"mu={checks.get('mu')}, expected {expected['mu']}",
                "details": details}
    if not result.get("verified") or result.get("label") != expected.get("label", "CERTIFIED"):
        return {"score": 0, "label": "UNVERIFIED", "reason": "; ".join(result.get("failures", [])),
                "details": details}
    return {"score": 1, "label": "PASS", "reason": result["polynomial"], "details": details}
