import cmath
import logging
import math
from typing import List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..defaults import BOUNDARY_TOL_FACTOR, ENDPOINT_MATCH_FACTOR
from ..errors import GeometryError, OpenContourError
from ..models.numbers import Complex
from .paths import TWO_PI, Arc, FullCircle, PathPiece, Segment

log = logging.getLogger(__name__)


class Contour(BaseModel):
    """Ordered chain of path pieces; closed contours bound a region"""

    model_config = ConfigDict(frozen=True)

    segments: List[PathPiece] = Field(min_length=1)
    closed: bool = True

    @model_validator(mode="after")
    def _check_chain(self) -> "Contour":
        tol = ENDPOINT_MATCH_FACTOR * max(1.0, self.scale())
        for index, (prev, nxt) in enumerate(zip(self.segments, self.segments[1:])):
            if abs(prev.end - nxt.start) > tol:
                raise ValueError(f"segment {index} ends at {prev.end!r} but segment {index + 1} starts at {nxt.start!r}")
        if self.closed and abs(self.segments[-1].end - self.segments[0].start) > tol:
            raise ValueError("closed contour must end where it starts")
        return self

    def scale(self) -> float:
        return max(piece.scale() for piece in self.segments)

    @property
    def start(self) -> complex:
        return self.segments[0].start

    @property
    def end(self) -> complex:
        return self.segments[-1].end

    def length(self) -> float:
        return sum(piece.length() for piece in self.segments)

    def reversed(self) -> "Contour":
        return Contour(segments=[piece.reversed() for piece in reversed(self.segments)], closed=self.closed)

    def translated(self, shift: complex) -> "Contour":
        return Contour(segments=[piece.translated(shift) for piece in self.segments], closed=self.closed)

    def argument_change(self, p: complex) -> float:
        return math.fsum(piece.argument_change(p) for piece in self.segments)

    def signed_area(self) -> float:
        """Enclosed area, positive for counter-clockwise contours"""
        if not self.closed:
            raise OpenContourError("signed area needs a closed contour", field="contour")
        total = sum(piece.zbar_dz() for piece in self.segments)
        return (total / 2j).real

    @property
    def orientation(self) -> Literal["ccw", "cw"]:
        return "ccw" if self.signed_area() >= 0 else "cw"

    def nearest(self, p: complex) -> Tuple[float, int, float]:
        """(distance, piece index, parameter) of the closest contour point"""
        best = (math.inf, 0, 0.0)
        for index, piece in enumerate(self.segments):
            distance, t = piece.nearest(p)
            if distance < best[0]:
                best = (distance, index, t)
        return best

    def default_tol(self) -> float:
        return BOUNDARY_TOL_FACTOR * max(1.0, self.scale())


def circle_contour(center: complex, radius: float, orientation: Literal["ccw", "cw"] = "ccw") -> Contour:
    return Contour(segments=[FullCircle(center=center, radius=radius, orientation=orientation)])


def polygon_contour(vertices: Sequence[complex]) -> Contour:
    if len(vertices) < 3:
        raise GeometryError("a polygon needs at least 3 vertices", field="contour")
    points = [complex(v) for v in vertices]
    pieces = [Segment(a=a, b=b) for a, b in zip(points, points[1:] + points[:1])]
    return Contour(segments=pieces)


def square_contour(center: complex, side: float) -> Contour:
    if not side > 0:
        raise GeometryError("square side must be positive", field="contour")
    h = side / 2.0
    c = complex(center)
    return polygon_contour([c + complex(h, -h), c + complex(h, h), c + complex(-h, h), c + complex(-h, -h)])


def make_keyhole(center: complex, R: float, delta: float, cut_angle: float, gap: float) -> Contour:
    """Slit annulus delta <= |z - center| <= R with the slit along `cut_angle`.

    Outer arc ccw from cut+gap to cut+2pi-gap, inward ray, inner arc cw back to
    cut+gap, outward ray; the enclosed region is positively oriented.
    """
    if not 0 < delta < R:
        raise GeometryError(f"keyhole radii need 0 < delta < R, got delta={delta}, R={R}", field="contour")
    if not 0 < gap < math.pi / 8:
        raise GeometryError(f"keyhole gap must lie in (0, pi/8), got {gap}", field="contour")

    c = complex(center)
    lo = cut_angle + gap
    hi = cut_angle + TWO_PI - gap
    outer = Arc(center=c, radius=R, theta_start=lo, theta_end=hi)
    inner = Arc(center=c, radius=delta, theta_start=hi, theta_end=lo)
    inward = Segment(a=outer.end, b=inner.start)
    outward = Segment(a=inner.end, b=outer.start)
    return Contour(segments=[outer, inward, inner, outward])


class PointLocation(BaseModel):
    tag: Literal["Interior", "Exterior", "Boundary"]
    interior_angle: Optional[float] = None
    winding: int = 0

    @model_validator(mode="after")
    def _angle_only_on_boundary(self) -> "PointLocation":
        if (self.tag == "Boundary") != (self.interior_angle is not None):
            raise ValueError("interior_angle is defined exactly for boundary points")
        return self


def _junction_angle(contour: Contour, index: int, t: float, tol: float) -> float:
    pieces = contour.segments
    n = len(pieces)
    piece = pieces[index]
    q = complex(piece.point(t))
    incoming = outgoing = None
    if abs(q - piece.start) <= tol and (contour.closed or index > 0):
        incoming = pieces[(index - 1) % n].tangent_at_end()
        outgoing = piece.tangent_at_start()
    elif abs(q - piece.end) <= tol and (contour.closed or index < n - 1):
        incoming = piece.tangent_at_end()
        outgoing = pieces[(index + 1) % n].tangent_at_start()
    if incoming is None:
        return math.pi
    turn = cmath.phase(outgoing / incoming)
    return math.pi - turn if contour.orientation == "ccw" else math.pi + turn


def locate_point(contour: Contour, p: complex, tol: Optional[float] = None) -> PointLocation:
    """Classify p against a closed contour.

    Boundary points carry the interior angle between the one-sided tangents at the
    nearest contour point (pi at smooth points). Off the boundary the exact
    argument change decides between interior and exterior; on a simple contour this
    agrees with a crossing count and it also yields the signed winding.
    """
    if not contour.closed:
        raise OpenContourError("point location needs a closed contour", field="contour")
    p = complex(p)
    tol = contour.default_tol() if tol is None else tol
    distance, index, t = contour.nearest(p)
    if distance <= tol:
        alpha = _junction_angle(contour, index, t, max(tol, 1e-12 * max(1.0, contour.scale())))
        alpha = min(max(alpha, 0.0), TWO_PI)
        return PointLocation(tag="Boundary", interior_angle=alpha)

    winding = round(contour.argument_change(p) / TWO_PI)
    return PointLocation(tag="Interior" if winding != 0 else "Exterior", winding=winding)
