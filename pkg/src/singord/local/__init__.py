"""Finite-colength computations in the local ring at a point."""
from .invariants import (
    IDEAL_KINDS,
    classify_simple,
    derived_ideal,
    hessian_corank,
    is_reduced,
    milnor_number,
    multiplicity,
    normal_form,
    sample_ideal_element,
    tjurina_ideal,
    tjurina_number,
)
from .jets import JetIdeal, JetSpace, close_ideal, jet_space, maximal_ideal

__all__ = [
    "IDEAL_KINDS",
    "JetIdeal",
    "JetSpace",
    "classify_simple",
    "close_ideal",
    "derived_ideal",
    "hessian_corank",
    "is_reduced",
    "jet_space",
    "maximal_ideal",
    "milnor_number",
    "multiplicity",
    "normal_form",
    "sample_ideal_element",
    "tjurina_ideal",
    "tjurina_number",
]
