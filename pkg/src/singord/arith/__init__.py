from .poly import PLANE, SPACE, MultiPoly, eliminant
from .scalars import RATIONALS, ScalarField
from .series import series_sqrt

__all__ = [
    "PLANE",
    "SPACE",
    "MultiPoly",
    "RATIONALS",
    "ScalarField",
    "eliminant",
    "series_sqrt",
]
