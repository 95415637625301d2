"""Castelnuovo checker

The profile properties themselves are enforced while computing; a breach
surfaces as an ERROR result before this checker runs.

Labels:
- PASS (1): the profile matches every expected field
- MISMATCH (0): some field differs
- SUM (0): C(n) does not sum to the degree
"""


def _one(profile: dict) -> str | None:
    if sum(profile["castelnuovo"]) != profile["deg"]:
        return f"C sums to {sum(profile['castelnuovo'])}, deg is {profile['deg']}"
    if profile["ord1"] + 1 < profile["ord0"]:
        return f"ord0={profile['ord0']} exceeds ord1+1={profile['ord1'] + 1}"
    return None


def check(result: dict, expected: dict, metadata: dict | None = None) -> dict:
    profiles = result["schemes"] if "schemes" in result else [result]
    for profile in profiles:
        problem = _one(profile)
        if problem:
            return {"score": 0, "label": "SUM", "reason": problem, "details": {"profile": profile}}

    diffs = {k: {"got": result.get(k), "expected": v} for k, v in expected.items() if result.get(k) != v}
    if diffs:
        return {"score": 0, "label": "MISMATCH", "reason": ", ".join(sorted(diffs)), "details": diffs}
    return {"score": 1, "label": "PASS", "reason": f"{len(profiles)} profiles consistent", "details": {}}
