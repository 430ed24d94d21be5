import logging
import math
from typing import List, Literal, Optional, Sequence, Tuple, Union

import numpy as np

from ..defaults import EPS0, Q, QUAD_TOL, STEPS
from ..errors import EvaluationError, GeometryError, SingularityOnPathError
from ..expr import Expr, evaluate_array
from ..geometry.contour import Contour
from ..geometry.paths import BasePath
from ..models.results import ExcisionSpec, QuadResult
from .extrapolation import extrapolate_limit
from .gauss_kronrod import integrate_adaptive

log = logging.getLogger(__name__)

Measure = Literal["dz", "dzbar"]
PathLike = Union[Contour, BasePath, Sequence[BasePath]]


def pieces_of(path: PathLike) -> List[BasePath]:
    if isinstance(path, Contour):
        return list(path.segments)
    if isinstance(path, BasePath):
        return [path]
    return list(path)


def _piece_integrand(f: Expr, piece: BasePath, measure: Measure):
    def integrand(t: np.ndarray) -> np.ndarray:
        z = piece.point(t)
        dz = piece.derivative(t)
        try:
            values = evaluate_array(f, z)
        except EvaluationError as exc:
            raise SingularityOnPathError(exc.position if exc.position is not None else complex(z[0])) from exc
        return values * (dz if measure == "dz" else np.conj(dz))

    return integrand


def _integrate_pieces(f: Expr, spans: List[Tuple[BasePath, float, float]], measure: Measure, tol: float) -> QuadResult:
    share = tol / max(1, len(spans))
    values: List[complex] = []
    error = 0.0
    evaluations = 0
    converged = True
    for piece, lo, hi in spans:
        if hi <= lo:
            continue
        result = integrate_adaptive(_piece_integrand(f, piece, measure), lo, hi, tol=share)
        values.append(result.value)
        error += result.error
        evaluations += result.evaluations
        converged = converged and result.converged
    value = complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))
    return QuadResult(value=value, abs_error_estimate=error, evaluations=max(evaluations, 1), converged=converged)


def integrate_path(f: Expr, path: PathLike, measure: Measure = "dz", tol: float = QUAD_TOL) -> QuadResult:
    """Integral of f dz (or f d conj(z)) along every piece of the path.

    A singularity met on the path raises SingularityOnPathError. Failing to reach
    `tol` is reported through `converged=False`.
    """
    spans = [(piece, 0.0, 1.0) for piece in pieces_of(path)]
    result = _integrate_pieces(f, spans, measure, tol)
    if not result.converged:
        log.warning(f"path integral of measure {measure} did not reach tol {tol:.1e}; "
                    f"error estimate {result.abs_error_estimate:.3e}")
    return result


def _locate_on_path(pieces: List[BasePath], point: complex, tol: float) -> Tuple[int, float]:
    best = (math.inf, 0, 0.0)
    for index, piece in enumerate(pieces):
        distance, t = piece.nearest(point)
        if distance < best[0]:
            best = (distance, index, t)
    if best[0] > tol:
        raise GeometryError(f"excision point {point!r} is not on the path (distance {best[0]:.3e})", field="points")
    return best[1], best[2]


def _excluded_ranges(pieces: List[BasePath], closed: bool, index: int, t: float, eps: float):
    """Parameter ranges removed by an arclength-eps neighbourhood of the point at (index, t)"""
    n = len(pieces)
    piece = pieces[index]
    reach = eps / piece.length()
    ranges = [(index, t - reach, t + reach)]
    if t - reach < 0 and (closed or index > 0):
        prev = (index - 1) % n
        overflow = (reach - t) * piece.length() / pieces[prev].length()
        ranges.append((prev, 1.0 - overflow, 1.0))
    if t + reach > 1 and (closed or index < n - 1):
        nxt = (index + 1) % n
        overflow = (t + reach - 1.0) * piece.length() / pieces[nxt].length()
        ranges.append((nxt, 0.0, overflow))
    return ranges


def _allowed_spans(pieces: List[BasePath], excluded) -> List[Tuple[BasePath, float, float]]:
    spans = []
    for index, piece in enumerate(pieces):
        cuts = sorted((max(lo, 0.0), min(hi, 1.0)) for k, lo, hi in excluded if k == index)
        cursor = 0.0
        for lo, hi in cuts:
            if lo > cursor:
                spans.append((piece, cursor, lo))
            cursor = max(cursor, hi)
        if cursor < 1.0:
            spans.append((piece, cursor, 1.0))
    return spans


def vp_integrate_path(
    f: Expr,
    path: PathLike,
    sing: Sequence[complex],
    measure: Measure = "dz",
    tol: float = QUAD_TOL,
    schedule: Optional[ExcisionSpec] = None,
    boundary_tol: Optional[float] = None,
) -> QuadResult:
    """Principal value: limit of the integral with symmetric arclength-eps pieces removed around each point"""
    pieces = pieces_of(path)
    closed = isinstance(path, Contour) and path.closed
    if not sing:
        return integrate_path(f, pieces, measure, tol)

    scale = max(1.0, max(p.scale() for p in pieces))
    boundary_tol = 1e-9 * scale if boundary_tol is None else boundary_tol
    located = [_locate_on_path(pieces, complex(s), boundary_tol) for s in sing]

    schedule = schedule or ExcisionSpec(eps0=EPS0, q=Q, steps=STEPS)
    limit = min(pieces[index].length() for index, _ in located) / 4.0
    points = [complex(s) for s in sing]
    for i, a in enumerate(points):
        for b in points[i + 1:]:
            limit = min(limit, abs(a - b) / 4.0)
    schedule = schedule.capped(limit)
    radii = schedule.radii()

    values: List[complex] = []
    quad_error = 0.0
    evaluations = 0
    for eps in radii:
        excluded = []
        for index, t in located:
            excluded.extend(_excluded_ranges(pieces, closed, index, t, eps))
        result = _integrate_pieces(f, _allowed_spans(pieces, excluded), measure, tol)
        values.append(result.value)
        quad_error = max(quad_error, result.abs_error_estimate)
        evaluations += result.evaluations

    estimate = extrapolate_limit(radii, values, schedule.q, what="principal value along path")
    value = estimate.require("principal value along path")
    return QuadResult(
        value=value,
        abs_error_estimate=estimate.error + quad_error,
        evaluations=evaluations,
        converged=True,
        table=estimate.table,
    )
