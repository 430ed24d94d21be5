from .area import integrate_area, integrate_area_excised, vp_integrate_area, vp_integrate_area_matched
from .extrapolation import LimitEstimate, extrapolate_limit, richardson_limit
from .gauss_kronrod import integrate_adaptive, integrate_unit_square
from .path import Measure, integrate_path, pieces_of, vp_integrate_path

__all__ = [
    "LimitEstimate",
    "Measure",
    "extrapolate_limit",
    "integrate_adaptive",
    "integrate_area",
    "integrate_area_excised",
    "integrate_path",
    "integrate_unit_square",
    "pieces_of",
    "richardson_limit",
    "vp_integrate_area",
    "vp_integrate_area_matched",
    "vp_integrate_path",
]
