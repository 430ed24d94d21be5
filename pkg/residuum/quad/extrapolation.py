"""Limits of sequences sampled on a geometric schedule h_m = h_0 * q**m."""

import logging
from typing import List, Literal, Optional, Sequence

from pydantic import BaseModel

from ..defaults import CONVERGENCE_RATIO, NOISE_FLOOR, RICHARDSON_ORDERS
from ..errors import NonConvergentError, OscillatoryError
from ..models.numbers import Complex, unit_phase
from ..models.results import ConvergenceRow

log = logging.getLogger(__name__)


class LimitEstimate(BaseModel):
    value: Complex
    error: float
    status: Literal["converged", "divergent", "oscillatory"]
    direction: Optional[Complex] = None
    table: List[ConvergenceRow]

    def require(self, what: str = "limit") -> complex:
        """The converged value, or the matching NonConvergent error"""
        if self.status == "converged":
            return self.value
        if self.status == "divergent":
            raise NonConvergentError(f"{what} diverges in direction {self.direction!r}", direction=self.direction)
        raise OscillatoryError(f"{what} has no stable limit")


def richardson_limit(values: Sequence[complex], ratio: float, orders: Sequence[int] = RICHARDSON_ORDERS) -> complex:
    """Eliminate error terms h**p, p in `orders`, from values at h, q*h, q**2*h, ..."""
    level = [complex(v) for v in values]
    for p in orders[: len(level) - 1]:
        factor = ratio ** p
        level = [(high - factor * low) / (1.0 - factor) for low, high in zip(level, level[1:])]
    return level[-1]


def _aligned(diffs: Sequence[complex]) -> bool:
    reference = unit_phase(diffs[-1])
    return all(abs(unit_phase(d) - reference) < 0.1 for d in diffs)


def extrapolate_limit(
    params: Sequence[float],
    values: Sequence[complex],
    ratio: float,
    noise: float = NOISE_FLOOR,
    what: str = "limit",
) -> LimitEstimate:
    """Estimate lim values as params -> 0 (or any geometric schedule with factor `ratio`).

    The result carries the Richardson value or the last raw value, whichever has the
    smaller error estimate. Differences below the noise floor count as zero.
    """
    values = [complex(v) for v in values]
    if len(values) < 3:
        raise ValueError("at least three schedule values are needed")

    magnitude = max(1.0, max(abs(v) for v in values))
    floor = noise * magnitude
    diffs = [b - a for a, b in zip(values, values[1:])]
    table = [
        ConvergenceRow(step=m, param=float(params[m]), value=v, err_estimate=0.0 if m == 0 else abs(diffs[m - 1]))
        for m, v in enumerate(values)
    ]

    tail = diffs[-3:]
    quiet = [abs(d) <= floor for d in tail]
    ratios = [abs(b) / abs(a) for a, b in zip(tail, tail[1:]) if abs(a) > floor]
    converging = all(quiet) or quiet[-1] or (len(ratios) > 0 and max(ratios) < CONVERGENCE_RATIO)

    if not converging:
        growing = all(abs(b) > abs(a) for a, b in zip(values[-4:], values[-3:]))
        if growing and not any(quiet) and _aligned(tail):
            direction = complex(unit_phase(tail[-1]))
            log.info(f"{what}: divergent along {direction:.3f} after {len(values)} steps")
            return LimitEstimate(value=values[-1], error=float("inf"), status="divergent",
                                 direction=direction, table=table)
        log.info(f"{what}: no stable limit after {len(values)} steps")
        return LimitEstimate(value=values[-1], error=float("inf"), status="oscillatory", table=table)

    raw_error = abs(diffs[-1])
    best, best_error = values[-1], raw_error
    window = len(RICHARDSON_ORDERS) + 1
    if len(values) >= window + 1:
        current = richardson_limit(values[-window:], ratio)
        previous = richardson_limit(values[-window - 1:-1], ratio)
        rich_error = abs(current - previous)
        if rich_error < best_error:
            best, best_error = current, rich_error
    best_error = max(best_error, floor if quiet[-1] else 0.0)
    return LimitEstimate(value=best, error=float(best_error), status="converged", table=table)

