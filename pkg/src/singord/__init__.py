"""singord - exact singularity orders, schemes and realizations."""

__version__ = "0.1.0"
