from .critical import ROUTES, realize_critical_point
from .curves import minimal_degree, realize_plane_curve
from .families import ak_family, construct_ak_3d
from .verify import CERTIFIED, FAILED, INVARIANT_MATCHED, RealizationResult

__all__ = [
    "CERTIFIED",
    "FAILED",
    "INVARIANT_MATCHED",
    "ROUTES",
    "RealizationResult",
    "ak_family",
    "construct_ak_3d",
    "minimal_degree",
    "realize_critical_point",
    "realize_plane_curve",
]
