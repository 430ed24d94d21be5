import logging
from typing import List, Optional, Sequence

import numpy as np

from ..defaults import CLASSIFY_GRID, CLASSIFY_TOL
from ..errors import EvaluationError, ValidationFailure
from ..expr import Expr, evaluate_array, free_of_z, free_of_zbar, wirtinger_dz, wirtinger_dzbar
from ..geometry.domains import BaseDomain
from ..models.results import AnalyticityReport

log = logging.getLogger(__name__)

WITNESS_COUNT = 3


def sample_grid(dom: BaseDomain, grid_n: int) -> np.ndarray:
    """Midpoints of a grid_n x grid_n cell grid in the domain's own coordinates"""
    coords = dom.coordinates()
    mid = (np.arange(grid_n) + 0.5) / grid_n
    outer = coords.outer[0] + (coords.outer[1] - coords.outer[0]) * mid
    inner = coords.inner[0] + (coords.inner[1] - coords.inner[0]) * mid
    u, v = np.meshgrid(outer, inner, indexing="ij")
    if coords.system == "polar":
        points = coords.center + u * np.exp(1j * v)
    else:
        points = u + 1j * v
    return points.reshape(-1)


def _magnitudes(g: Expr, points: np.ndarray) -> np.ndarray:
    """|g| at every point; points where g cannot be evaluated come back as nan"""
    try:
        return np.abs(evaluate_array(g, points))
    except EvaluationError:
        pass
    values = np.full(points.shape, np.nan)
    for k, p in enumerate(points):
        try:
            values[k] = abs(evaluate_array(g, np.array([p]))[0])
        except EvaluationError:
            continue
    return values


def _peak(values: np.ndarray) -> float:
    finite = values[np.isfinite(values)]
    return float(finite.max()) if finite.size else 0.0


def classify_analyticity(
    f: Expr,
    dom: BaseDomain,
    grid_n: int = CLASSIFY_GRID,
    tol: float = CLASSIFY_TOL,
    singular_points: Sequence[complex] = (),
) -> AnalyticityReport:
    """RegularAnalytic, SingularAnalytic or NonAnalytic from sampled Wirtinger derivatives.

    Grid points closer than 1e-6 * scale to a declared singular point are skipped.
    A function whose source never mentions conj(z) (or z) is taken as vanishing
    without sampling that derivative.
    """
    if grid_n < 16:
        raise ValidationFailure(f"classification grid needs grid_n >= 16, got {grid_n}", field="grid_n")

    points = sample_grid(dom, grid_n)
    singular = [complex(s) for s in singular_points]
    if singular:
        guard = 1e-6 * max(1.0, dom.scale())
        keep = np.ones(points.shape, dtype=bool)
        for s in singular:
            keep &= np.abs(points - s) > guard
        points = points[keep]

    dzbar = np.zeros(points.shape) if free_of_zbar(f) else _magnitudes(wirtinger_dzbar(f), points)
    dz = np.zeros(points.shape) if free_of_z(f) else _magnitudes(wirtinger_dz(f), points)
    max_dzbar = _peak(dzbar)
    max_dz = _peak(dz)

    vanishing: Optional[str] = None
    if max_dzbar <= tol:
        vanishing = "dzbar"
    elif max_dz <= tol:
        vanishing = "dz"

    if vanishing is None:
        witnesses = _witnesses(points, np.minimum(np.nan_to_num(dzbar), np.nan_to_num(dz)))
        log.info(f"non-analytic on {dom.kind}: max |df/dzbar| = {max_dzbar:.3e}, max |df/dz| = {max_dz:.3e}")
        return AnalyticityReport(kind="NonAnalytic", witness_points=witnesses,
                                 max_abs_dzbar=max_dzbar, max_abs_dz=max_dz)

    inside = [s for s in singular if dom.contains(s)]
    kind = "SingularAnalytic" if inside else "RegularAnalytic"
    return AnalyticityReport(kind=kind, vanishing_derivative=vanishing, witness_points=inside,
                             max_abs_dzbar=max_dzbar, max_abs_dz=max_dz)


def _witnesses(points: np.ndarray, strength: np.ndarray) -> List[complex]:
    order = np.argsort(-strength, kind="stable")[:WITNESS_COUNT]
    return [complex(points[k]) for k in order]
