import cmath
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Annotated, List, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..models.numbers import Complex
from .contour import Contour, circle_contour, polygon_contour
from .paths import TWO_PI, Arc, Segment, segment_distance


@dataclass(frozen=True)
class Coordinates:
    """Iterated-integral description of a domain.

    polar: outer variable rho in `outer`, inner variable theta in `inner`, both about `center`.
    cartesian: outer variable x, inner variable y.
    """

    system: Literal["polar", "cartesian"]
    center: complex
    outer: Tuple[float, float]
    inner: Tuple[float, float]


class BaseDomain(BaseModel, ABC):
    model_config = ConfigDict(frozen=True)

    @abstractmethod
    def contains(self, p: complex) -> bool:
        """True for points of the open domain"""

    @abstractmethod
    def distance_to_boundary(self, p: complex) -> float:
        pass

    @abstractmethod
    def area(self) -> float:
        pass

    @abstractmethod
    def boundary(self) -> List[Contour]:
        """Boundary loops, positively oriented with respect to the domain"""

    @abstractmethod
    def coordinates(self) -> Coordinates:
        pass

    @abstractmethod
    def scale(self) -> float:
        pass


class Disc(BaseDomain):
    kind: Literal["disc"] = "disc"
    center: Complex = 0j
    R: float

    @model_validator(mode="after")
    def _positive_radius(self) -> "Disc":
        if not self.R > 0:
            raise ValueError("disc radius must be positive")
        return self

    def contains(self, p: complex) -> bool:
        return abs(p - self.center) < self.R

    def distance_to_boundary(self, p: complex) -> float:
        return abs(self.R - abs(p - self.center))

    def area(self) -> float:
        return math.pi * self.R ** 2

    def boundary(self) -> List[Contour]:
        return [circle_contour(self.center, self.R)]

    def coordinates(self) -> Coordinates:
        return Coordinates("polar", self.center, (0.0, self.R), (0.0, TWO_PI))

    def scale(self) -> float:
        return abs(self.center) + self.R


class Annulus(BaseDomain):
    kind: Literal["annulus"] = "annulus"
    center: Complex = 0j
    r: float
    R: float

    @model_validator(mode="after")
    def _ordered_radii(self) -> "Annulus":
        if not 0 <= self.r < self.R:
            raise ValueError("annulus radii need 0 <= r < R")
        return self

    def contains(self, p: complex) -> bool:
        return self.r < abs(p - self.center) < self.R

    def distance_to_boundary(self, p: complex) -> float:
        rho = abs(p - self.center)
        if self.r == 0:
            return abs(self.R - rho)
        return min(abs(self.R - rho), abs(rho - self.r))

    def area(self) -> float:
        return math.pi * (self.R ** 2 - self.r ** 2)

    def boundary(self) -> List[Contour]:
        loops = [circle_contour(self.center, self.R)]
        if self.r > 0:
            loops.append(circle_contour(self.center, self.r, orientation="cw"))
        return loops

    def coordinates(self) -> Coordinates:
        return Coordinates("polar", self.center, (self.r, self.R), (0.0, TWO_PI))

    def scale(self) -> float:
        return abs(self.center) + self.R


class AnnularSector(BaseDomain):
    kind: Literal["annular_sector"] = "annular_sector"
    center: Complex = 0j
    r: float
    R: float
    phi_lo: float
    phi_hi: float

    @model_validator(mode="after")
    def _check_sector(self) -> "AnnularSector":
        if not 0 <= self.r < self.R:
            raise ValueError("annular sector radii need 0 <= r < R")
        if not self.phi_lo < self.phi_hi <= self.phi_lo + TWO_PI + 1e-12:
            raise ValueError("annular sector angles need phi_lo < phi_hi <= phi_lo + 2*pi")
        return self

    def _angle_offset(self, p: complex) -> float:
        return (cmath.phase(p - self.center) - self.phi_lo) % TWO_PI

    def contains(self, p: complex) -> bool:
        rho = abs(p - self.center)
        if not self.r < rho < self.R:
            return False
        offset = self._angle_offset(p)
        return 0 < offset < self.phi_hi - self.phi_lo

    def _ray_points(self, phi: float) -> Tuple[complex, complex]:
        unit = cmath.exp(1j * phi)
        return self.center + self.r * unit, self.center + self.R * unit

    def distance_to_boundary(self, p: complex) -> float:
        rho = abs(p - self.center)
        candidates = [abs(self.R - rho)]
        if self.r > 0:
            candidates.append(abs(rho - self.r))
        for phi in (self.phi_lo, self.phi_hi):
            a, b = self._ray_points(phi)
            candidates.append(segment_distance(a, b, p)[0])
        return min(candidates)

    def area(self) -> float:
        return 0.5 * (self.phi_hi - self.phi_lo) * (self.R ** 2 - self.r ** 2)

    def boundary(self) -> List[Contour]:
        outer = Arc(center=self.center, radius=self.R, theta_start=self.phi_lo, theta_end=self.phi_hi)
        if self.r > 0:
            inner = Arc(center=self.center, radius=self.r, theta_start=self.phi_hi, theta_end=self.phi_lo)
            pieces = [outer, Segment(a=outer.end, b=inner.start), inner, Segment(a=inner.end, b=outer.start)]
        else:
            pieces = [outer, Segment(a=outer.end, b=self.center), Segment(a=self.center, b=outer.start)]
        return [Contour(segments=pieces)]

    def coordinates(self) -> Coordinates:
        return Coordinates("polar", self.center, (self.r, self.R), (self.phi_lo, self.phi_hi))

    def scale(self) -> float:
        return abs(self.center) + self.R


class Rectangle(BaseDomain):
    kind: Literal["rectangle"] = "rectangle"
    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    @model_validator(mode="after")
    def _ordered_bounds(self) -> "Rectangle":
        if not (self.x_lo < self.x_hi and self.y_lo < self.y_hi):
            raise ValueError("rectangle bounds need x_lo < x_hi and y_lo < y_hi")
        return self

    def contains(self, p: complex) -> bool:
        return self.x_lo < p.real < self.x_hi and self.y_lo < p.imag < self.y_hi

    def distance_to_boundary(self, p: complex) -> float:
        return min(abs(p.real - self.x_lo), abs(self.x_hi - p.real), abs(p.imag - self.y_lo), abs(self.y_hi - p.imag))

    def area(self) -> float:
        return (self.x_hi - self.x_lo) * (self.y_hi - self.y_lo)

    def boundary(self) -> List[Contour]:
        return [polygon_contour([
            complex(self.x_lo, self.y_lo),
            complex(self.x_hi, self.y_lo),
            complex(self.x_hi, self.y_hi),
            complex(self.x_lo, self.y_hi),
        ])]

    def coordinates(self) -> Coordinates:
        return Coordinates("cartesian", 0j, (self.x_lo, self.x_hi), (self.y_lo, self.y_hi))

    def scale(self) -> float:
        return max(abs(self.x_lo), abs(self.x_hi), abs(self.y_lo), abs(self.y_hi))


PlanarDomain = Annotated[Union[Disc, Annulus, AnnularSector, Rectangle], Field(discriminator="kind")]
