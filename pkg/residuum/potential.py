"""Potential of a point with respect to closed contours: 2πi times the winding number,
with i*alpha (or i*(2π - alpha)) for points on the contour."""

import logging
import math
from typing import List, Literal, Optional, Sequence, Union

from .defaults import MAX_SIMPLE_WINDING
from .errors import OpenContourError
from .geometry.contour import Contour, locate_point
from .geometry.paths import TWO_PI
from .models.results import Potential

log = logging.getLogger(__name__)

Convention = Literal["interior", "exterior"]
Loops = Union[Contour, Sequence[Contour]]


def as_loops(c: Loops) -> List[Contour]:
    loops = [c] if isinstance(c, Contour) else list(c)
    for loop in loops:
        if not loop.closed:
            raise OpenContourError("potential needs closed contours", field="contour")
    return loops


def potential_2d(c: Loops, p: complex, tol: Optional[float] = None, convention: Convention = "interior") -> Potential:
    p = complex(p)
    loops = as_loops(c)
    for loop in loops:
        location = locate_point(loop, p, tol)
        if location.tag == "Boundary":
            alpha = location.interior_angle
            if convention == "interior":
                return Potential(value=1j * alpha, kind="BoundaryInteriorArc", winding=0, interior_angle=alpha)
            return Potential(value=1j * (TWO_PI - alpha), kind="BoundaryExteriorArc", winding=0, interior_angle=alpha)

    winding = round(math.fsum(loop.argument_change(p) for loop in loops) / TWO_PI)
    outside = abs(winding) > MAX_SIMPLE_WINDING
    if outside:
        log.warning(f"winding number {winding} around {p!r} is outside the simple-contour 0/2πi dichotomy")
    if winding == 0:
        return Potential(value=0j, kind="Exterior", winding=0)
    return Potential(value=2j * math.pi * winding, kind="Interior", winding=winding, outside_simple_scope=outside)


def potential_3d(c: Loops, p: complex, tol: Optional[float] = None, convention: Convention = "interior") -> complex:
    """The doubled planar potential"""
    return 2.0 * potential_2d(c, p, tol, convention).value
