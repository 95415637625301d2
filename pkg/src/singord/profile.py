"""Invariant profile of a plane germ: mu, tau, mt, delta, r, corank, type, tree."""
from dataclasses import dataclass

from .arith.poly import MultiPoly
from .config import Settings, resolve
from .errors import InvariantBreach
from .local.invariants import classify_simple, hessian_corank, milnor_number, multiplicity, tjurina_number
from .puiseux import Resolution, resolve_germ, tree_text


@dataclass(frozen=True)
class GermProfile:
    polynomial: str
    mu: int
    tau: int
    mt: int
    delta: int
    branches: int
    corank: int
    type: str | None
    resolution: Resolution

    def to_json(self) -> dict:
        return {
            "polynomial": self.polynomial,
            "mu": self.mu,
            "tau": self.tau,
            "mt": self.mt,
            "delta": self.delta,
            "branches": self.branches,
            "corank": self.corank,
            "type": self.type,
            "tree": tree_text(self.resolution.tree),
            "resolution": self.resolution.to_json(),
        }


def germ_profile(f: MultiPoly, settings: Settings | None = None) -> GermProfile:
    settings = resolve(settings)
    res = resolve_germ(f, settings=settings)
    mu = milnor_number(f, settings)
    if mu != 2 * res.delta - res.branch_count + 1:
        raise InvariantBreach(
            f"Milnor formula fails for {f.to_text()}: mu={mu}, delta={res.delta}, r={res.branch_count}"
        )
    return GermProfile(
        polynomial=f.to_text(),
        mu=mu,
        tau=tjurina_number(f, settings),
        mt=multiplicity(f),
        delta=res.delta,
        branches=res.branch_count,
        corank=hessian_corank(f),
        type=classify_simple(f, settings),
        resolution=res,
    )
