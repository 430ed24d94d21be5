from .evaluate import evaluate, evaluate_array
from .nodes import Expr, free_of_z, free_of_zbar
from .parser import parse
from .printer import to_source
from .wirtinger import (
    derivative_along_real_axis,
    invert_about,
    is_zero,
    substitute,
    translate,
    wirtinger_dz,
    wirtinger_dzbar,
)

__all__ = [
    "Expr",
    "derivative_along_real_axis",
    "evaluate",
    "evaluate_array",
    "free_of_z",
    "free_of_zbar",
    "invert_about",
    "is_zero",
    "parse",
    "substitute",
    "to_source",
    "translate",
    "wirtinger_dz",
    "wirtinger_dzbar",
]
