"""Numerical residue calculus: potentials, residue pairs, principal and total values."""

from .errors import NumericalFailure, ResiduumError, ValidationFailure
from .expr import parse
from .improper import jump_term, vp_1d, vt_1d
from .potential import potential_2d, potential_3d
from .residue import residue_at_infinity, residue_from_sectors, residue_small_circle, sector_limits

__version__ = "0.1.0"

__all__ = [
    "NumericalFailure",
    "ResiduumError",
    "ValidationFailure",
    "jump_term",
    "parse",
    "potential_2d",
    "potential_3d",
    "residue_at_infinity",
    "residue_from_sectors",
    "residue_small_circle",
    "sector_limits",
    "vp_1d",
    "vt_1d",
]
