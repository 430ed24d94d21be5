"""Oriented path pieces: straight segments, circular arcs and full circles.

Every piece is parametrised over t in [0, 1] with constant speed, and knows how to
compute, in closed form, the change of arg(z - p) along itself.
"""

import cmath
import math
from abc import ABC, abstractmethod
from typing import Annotated, Literal, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..models.numbers import Complex

TWO_PI = 2.0 * math.pi
_MAX_SPLIT_DEPTH = 60


def _cross(u: complex, v: complex) -> float:
    return u.real * v.imag - u.imag * v.real


def segment_distance(a: complex, b: complex, p: complex) -> Tuple[float, float]:
    d = b - a
    t = ((p - a) * d.conjugate()).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(a + t * d - p), t


class BasePath(BaseModel, ABC):
    """Base class for all path pieces"""

    model_config = ConfigDict(frozen=True)

    @property
    @abstractmethod
    def start(self) -> complex:
        pass

    @property
    @abstractmethod
    def end(self) -> complex:
        pass

    @abstractmethod
    def point(self, t: np.ndarray) -> np.ndarray:
        """Position at parameter values t in [0, 1]"""

    @abstractmethod
    def derivative(self, t: np.ndarray) -> np.ndarray:
        """dz/dt at parameter values t"""

    @abstractmethod
    def length(self) -> float:
        pass

    @abstractmethod
    def reversed(self) -> "BasePath":
        pass

    @abstractmethod
    def translated(self, shift: complex) -> "BasePath":
        pass

    @abstractmethod
    def tangent_at_start(self) -> complex:
        pass

    @abstractmethod
    def tangent_at_end(self) -> complex:
        pass

    @abstractmethod
    def nearest(self, p: complex) -> Tuple[float, float]:
        """(distance, parameter t) of the point of the piece closest to p"""

    @abstractmethod
    def argument_change(self, p: complex) -> float:
        """Total change of arg(z - p) along the piece, p not on the piece"""

    @abstractmethod
    def zbar_dz(self) -> complex:
        """Closed form of the integral of conj(z) dz along the piece"""

    def scale(self) -> float:
        return max(abs(self.start), abs(self.end), self.length())


class Segment(BasePath):
    kind: Literal["segment"] = "segment"
    a: Complex
    b: Complex

    @model_validator(mode="after")
    def _distinct_endpoints(self) -> "Segment":
        if self.a == self.b:
            raise ValueError("segment endpoints must be distinct")
        return self

    @property
    def start(self) -> complex:
        return self.a

    @property
    def end(self) -> complex:
        return self.b

    def point(self, t: np.ndarray) -> np.ndarray:
        return self.a + (self.b - self.a) * np.asarray(t, dtype=float)

    def derivative(self, t: np.ndarray) -> np.ndarray:
        return np.full(np.shape(t), self.b - self.a, dtype=complex)

    def length(self) -> float:
        return abs(self.b - self.a)

    def reversed(self) -> "Segment":
        return Segment(a=self.b, b=self.a)

    def translated(self, shift: complex) -> "Segment":
        return Segment(a=self.a + shift, b=self.b + shift)

    def tangent_at_start(self) -> complex:
        return (self.b - self.a) / abs(self.b - self.a)

    def tangent_at_end(self) -> complex:
        return self.tangent_at_start()

    def nearest(self, p: complex) -> Tuple[float, float]:
        return segment_distance(self.a, self.b, p)

    def argument_change(self, p: complex) -> float:
        return cmath.phase((self.b - p) / (self.a - p))

    def zbar_dz(self) -> complex:
        return (self.b - self.a) * (self.a + self.b).conjugate() / 2.0


def _arc_argument_change(c: complex, r: float, t0: float, t1: float, p: complex, depth: int = 0) -> float:
    if abs(t1 - t0) > math.pi / 2 and depth < _MAX_SPLIT_DEPTH:
        mid = 0.5 * (t0 + t1)
        return (_arc_argument_change(c, r, t0, mid, p, depth + 1)
                + _arc_argument_change(c, r, mid, t1, p, depth + 1))

    a = c + r * cmath.exp(1j * t0)
    b = c + r * cmath.exp(1j * t1)
    chord_distance, _ = segment_distance(a, b, p)
    if chord_distance <= 1e-12 * max(r, 1.0) and depth < _MAX_SPLIT_DEPTH:
        mid = 0.5 * (t0 + t1)
        return (_arc_argument_change(c, r, t0, mid, p, depth + 1)
                + _arc_argument_change(c, r, mid, t1, p, depth + 1))

    chord_change = cmath.phase((b - p) / (a - p))
    # p inside the circular segment cut off by the chord: the arc winds once more than the chord
    m = c + r * cmath.exp(0.5j * (t0 + t1))
    inside = abs(p - c) < r and _cross(b - a, p - a) * _cross(b - a, m - a) > 0
    if inside:
        chord_change += math.copysign(TWO_PI, t1 - t0)
    return chord_change


class Arc(BasePath):
    kind: Literal["arc"] = "arc"
    center: Complex
    radius: float
    theta_start: float
    theta_end: float

    @model_validator(mode="after")
    def _check_arc(self) -> "Arc":
        if not self.radius > 0:
            raise ValueError("arc radius must be positive")
        sweep = self.theta_end - self.theta_start
        if sweep == 0 or abs(sweep) > TWO_PI + 1e-12:
            raise ValueError("arc sweep must satisfy 0 < |theta_end - theta_start| <= 2*pi")
        return self

    @property
    def sweep(self) -> float:
        return self.theta_end - self.theta_start

    @property
    def start(self) -> complex:
        return self.center + self.radius * cmath.exp(1j * self.theta_start)

    @property
    def end(self) -> complex:
        return self.center + self.radius * cmath.exp(1j * self.theta_end)

    def _theta(self, t: np.ndarray) -> np.ndarray:
        return self.theta_start + self.sweep * np.asarray(t, dtype=float)

    def point(self, t: np.ndarray) -> np.ndarray:
        return self.center + self.radius * np.exp(1j * self._theta(t))

    def derivative(self, t: np.ndarray) -> np.ndarray:
        return 1j * self.radius * self.sweep * np.exp(1j * self._theta(t))

    def length(self) -> float:
        return self.radius * abs(self.sweep)

    def reversed(self) -> "Arc":
        return Arc(center=self.center, radius=self.radius,
                   theta_start=self.theta_end, theta_end=self.theta_start)

    def translated(self, shift: complex) -> "Arc":
        return self.model_copy(update={"center": self.center + shift})

    def tangent_at_start(self) -> complex:
        return 1j * cmath.exp(1j * self.theta_start) * math.copysign(1.0, self.sweep)

    def tangent_at_end(self) -> complex:
        return 1j * cmath.exp(1j * self.theta_end) * math.copysign(1.0, self.sweep)

    def nearest(self, p: complex) -> Tuple[float, float]:
        offset = p - self.center
        if offset == 0:
            return self.radius, 0.0
        direction = math.copysign(1.0, self.sweep)
        travelled = (direction * (cmath.phase(offset) - self.theta_start)) % TWO_PI
        if travelled <= abs(self.sweep):
            return abs(abs(offset) - self.radius), travelled / abs(self.sweep)
        to_start = abs(p - self.start)
        to_end = abs(p - self.end)
        return (to_start, 0.0) if to_start <= to_end else (to_end, 1.0)

    def argument_change(self, p: complex) -> float:
        return _arc_argument_change(self.center, self.radius, self.theta_start, self.theta_end, p)

    def zbar_dz(self) -> complex:
        c, r = self.center, self.radius
        return (c.conjugate() * r * (cmath.exp(1j * self.theta_end) - cmath.exp(1j * self.theta_start))
                + 1j * r * r * self.sweep)


class FullCircle(BasePath):
    kind: Literal["circle"] = "circle"
    center: Complex
    radius: float
    orientation: Literal["ccw", "cw"] = "ccw"

    @model_validator(mode="after")
    def _positive_radius(self) -> "FullCircle":
        if not self.radius > 0:
            raise ValueError("circle radius must be positive")
        return self

    @property
    def sign(self) -> float:
        return 1.0 if self.orientation == "ccw" else -1.0

    @property
    def start(self) -> complex:
        return self.center + self.radius

    @property
    def end(self) -> complex:
        return self.start

    def point(self, t: np.ndarray) -> np.ndarray:
        return self.center + self.radius * np.exp(1j * self.sign * TWO_PI * np.asarray(t, dtype=float))

    def derivative(self, t: np.ndarray) -> np.ndarray:
        theta = self.sign * TWO_PI * np.asarray(t, dtype=float)
        return 1j * self.sign * TWO_PI * self.radius * np.exp(1j * theta)

    def length(self) -> float:
        return TWO_PI * self.radius

    def reversed(self) -> "FullCircle":
        return self.model_copy(update={"orientation": "cw" if self.orientation == "ccw" else "ccw"})

    def translated(self, shift: complex) -> "FullCircle":
        return self.model_copy(update={"center": self.center + shift})

    def tangent_at_start(self) -> complex:
        return 1j * self.sign

    def tangent_at_end(self) -> complex:
        return 1j * self.sign

    def nearest(self, p: complex) -> Tuple[float, float]:
        offset = p - self.center
        if offset == 0:
            return self.radius, 0.0
        travelled = (self.sign * cmath.phase(offset)) % TWO_PI
        return abs(abs(offset) - self.radius), travelled / TWO_PI

    def argument_change(self, p: complex) -> float:
        return self.sign * TWO_PI if abs(p - self.center) < self.radius else 0.0

    def zbar_dz(self) -> complex:
        return self.sign * TWO_PI * 1j * self.radius ** 2


PathPiece = Annotated[Union[Segment, Arc, FullCircle], Field(discriminator="kind")]
