"""Milnor oracle checker

Labels:
- PASS (1): the Milnor formula holds and every expected invariant matches
- MISMATCH (0): an invariant differs from its expected value
- MILNOR_BREACH (0): mu != 2 delta - r + 1
- DISAGREE (0): Noether sum and eliminant differ on some pair
"""


def _check_pairs(result: dict, expected: dict) -> dict:
    pairs = result.get("pairs", [])
    bad = [p for p in pairs if p["noether"] != p["oracle"]]
    if bad or not result.get("agree"):
        first = bad[0] if bad else {}
        return {
            "score": 0,
            "label": "DISAGREE",
            "reason": f"I({first.get('f')}, {first.get('g')}): {first.get('noether')} vs {first.get('oracle')}",
            "details": {"disagreements": len(bad)},
        }
    if len(pairs) != expected.get("count", len(pairs)):
        return {"score": 0, "label": "MISMATCH", "reason": f"{len(pairs)} pairs checked", "details": {}}
    return {"score": 1, "label": "PASS", "reason": f"{len(pairs)} pairs agree", "details": {}}


def check(result: dict, expected: dict, metadata: dict | None = None) -> dict:
    if "pairs" in result:
        return _check_pairs(result, expected)

    if not result.get("milnor_formula"):
        return {
            "score": 0,
            "label": "MILNOR_BREACH",
            "reason": f"mu={result.get('mu')} delta={result.get('delta')} r={result.get('branches')}",
            "details": {},
        }

    diffs = {k: {"got": result.get(k), "expected": v} for k, v in (expected or {}).items() if result.get(k) != v}
    if diffs:
        return {"score": 0, "label": "MISMATCH", "reason": ", ".join(sorted(diffs)), "details": diffs}
    return {
        "score": 1,
        "label": "PASS",
        "reason": f"mu={result['mu']} = 2*{result['delta']} - {result['branches']} + 1",
        "details": {"tree": result.get("tree")},
    }
