import cmath
import math
from typing import List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..models.numbers import Complex
from .paths import TWO_PI


class SectorDecomposition(BaseModel):
    """Angles phi_1 < ... < phi_K around `center`; sector k spans [phi_k, phi_{k+1}] with phi_{K+1} = phi_1 + 2pi"""

    model_config = ConfigDict(frozen=True)

    center: Complex = 0j
    angles: List[float] = Field(min_length=1)

    @model_validator(mode="after")
    def _check_angles(self) -> "SectorDecomposition":
        if any(b <= a for a, b in zip(self.angles, self.angles[1:])):
            raise ValueError("sector angles must be strictly increasing")
        if not self.angles[-1] < self.angles[0] + TWO_PI:
            raise ValueError("sector angles must span less than 2*pi")
        return self

    @classmethod
    def whole_plane(cls, center: complex = 0j, angle: float = 0.0) -> "SectorDecomposition":
        return cls(center=center, angles=[angle])

    @classmethod
    def uniform(cls, k: int, center: complex = 0j, start: float = 0.0) -> "SectorDecomposition":
        return cls(center=center, angles=[start + TWO_PI * j / k for j in range(k)])

    @property
    def count(self) -> int:
        return len(self.angles)

    def bounds(self, k: int) -> Tuple[float, float]:
        lo = self.angles[k]
        hi = self.angles[k + 1] if k + 1 < self.count else self.angles[0] + TWO_PI
        return lo, hi

    def widths(self) -> List[float]:
        return [hi - lo for lo, hi in (self.bounds(k) for k in range(self.count))]

    def bisector(self, k: int) -> float:
        lo, hi = self.bounds(k)
        return 0.5 * (lo + hi)

    def ray_angles(self, k: int, fractions: Sequence[float]) -> List[float]:
        lo, hi = self.bounds(k)
        return [lo + f * (hi - lo) for f in fractions]

    def sector_of(self, p: complex) -> int:
        """Index of the sector containing the direction of p - center"""
        offset = (cmath.phase(p - self.center) - self.angles[0]) % TWO_PI
        edges = np.array(self.angles) - self.angles[0]
        return int(np.searchsorted(edges, offset, side="right") - 1)

    def translated(self, shift: complex) -> "SectorDecomposition":
        return self.model_copy(update={"center": self.center + shift})


def total_width(decomposition: SectorDecomposition) -> float:
    return math.fsum(decomposition.widths())
