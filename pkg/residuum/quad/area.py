"""Area integrals with respect to dz̄dz = 2i dx dy, plain and with excised discs."""

import cmath
import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..defaults import AREA_TOL
from ..errors import EvaluationError, GeometryError, SingularityInDomainError
from ..expr import Expr, evaluate_array
from ..geometry.domains import Annulus, BaseDomain, Coordinates
from ..geometry.paths import TWO_PI
from ..models.results import ExcisionSpec, QuadResult
from .extrapolation import extrapolate_limit
from .gauss_kronrod import integrate_unit_square

log = logging.getLogger(__name__)

Hole = Tuple[complex, float]


def _subtract(base: Tuple[float, float], removed: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
    spans = [base]
    for lo, hi in removed:
        next_spans = []
        for a, b in spans:
            if hi <= a or lo >= b:
                next_spans.append((a, b))
                continue
            if lo > a:
                next_spans.append((a, lo))
            if hi < b:
                next_spans.append((hi, b))
        spans = next_spans
    return spans


def _polar_removed(coords: Coordinates, rho: float, holes: Sequence[Hole]) -> Optional[List[Tuple[float, float]]]:
    """Angular ranges cut out by the holes on the circle of radius rho; None if the circle is fully inside one"""
    removed = []
    for p, radius in holes:
        offset = p - coords.center
        d = abs(offset)
        if rho <= radius - d:
            return None
        if not abs(d - radius) < rho < d + radius:
            continue
        cos_beta = (rho * rho + d * d - radius * radius) / (2.0 * rho * d)
        beta = math.acos(min(1.0, max(-1.0, cos_beta)))
        start = coords.inner[0]
        psi = start + (math.atan2(offset.imag, offset.real) - start) % TWO_PI
        for k in (-1, 0, 1):
            removed.append((psi - beta + k * TWO_PI, psi + beta + k * TWO_PI))
    return removed


def _cartesian_removed(x: float, holes: Sequence[Hole]) -> List[Tuple[float, float]]:
    removed = []
    for p, radius in holes:
        dx = x - p.real
        if abs(dx) < radius:
            half = math.sqrt(radius * radius - dx * dx)
            removed.append((p.imag - half, p.imag + half))
    return removed


def _ray_crossings(coords: Coordinates, p: complex, radius: float, angle: float) -> List[float]:
    """Distances along the ray from the center at `angle` where it meets |z - p| = radius"""
    offset = p - coords.center
    along = (offset * cmath.exp(-1j * angle)).real
    disc = along * along - (abs(offset) ** 2 - radius * radius)
    if disc < 0:
        return []
    root = math.sqrt(disc)
    return [along - root, along + root]


def _outer_breakpoints(coords: Coordinates, holes: Sequence[Hole]) -> List[float]:
    """Outer values where the inner spans change: hole extremes and hole crossings of the inner edges"""
    lo, hi = coords.outer
    points = []
    for p, radius in holes:
        if coords.system == "polar":
            d = abs(p - coords.center)
            points.extend([abs(d - radius), d + radius])
            for angle in coords.inner:
                points.extend(_ray_crossings(coords, p, radius, angle))
        else:
            points.extend([p.real - radius, p.real + radius])
            for y in coords.inner:
                dy = y - p.imag
                if abs(dy) < radius:
                    half = math.sqrt(radius * radius - dy * dy)
                    points.extend([p.real - half, p.real + half])
    return sorted({x for x in points if lo < x < hi})


def _spans(coords: Coordinates, holes: Sequence[Hole], u: float) -> List[Tuple[float, float]]:
    """Inner ranges left at outer value u once the holes are cut out"""
    if coords.system == "polar":
        removed = _polar_removed(coords, u, holes)
        if removed is None or u == 0:
            return []
    else:
        removed = _cartesian_removed(u, holes)
    return _subtract(coords.inner, removed)


def _span_edges(coords: Coordinates, holes: Sequence[Hole], u: np.ndarray, j: int) -> Tuple[np.ndarray, np.ndarray]:
    if not holes:
        return np.full(u.shape, coords.inner[0]), np.full(u.shape, coords.inner[1])
    lo = np.zeros(u.shape)
    hi = np.zeros(u.shape)
    for index, x in np.ndenumerate(u):
        spans = _spans(coords, holes, float(x))
        if j < len(spans):
            lo[index], hi[index] = spans[j]
    return lo, hi


def _area_integral(g: Expr, coords: Coordinates, holes: Sequence[Hole], tol: float) -> QuadResult:
    """∬ g dx dy over the coordinate box minus the holes.

    The outer range is cut where the inner spans change; each (outer piece, span) pair is
    mapped onto the unit square and integrated by the batched tensor rule.
    """
    lo, hi = coords.outer
    cuts = [lo, *_outer_breakpoints(coords, holes), hi]
    pieces = [(a, b, j) for a, b in zip(cuts, cuts[1:]) for j in range(len(_spans(coords, holes, 0.5 * (a + b))))]
    polar = coords.system == "polar"

    values = []
    error = 0.0
    evaluations = 0
    converged = True
    for a, b, j in pieces:
        width = b - a

        def integrand(t: np.ndarray, s: np.ndarray, a=a, width=width, j=j) -> np.ndarray:
            # smoothstep map clusters nodes at the piece ends, where hole edges meet
            u = a + width * (3.0 * t * t - 2.0 * t ** 3)
            du = width * (6.0 * t - 6.0 * t * t)
            v_lo, v_hi = _span_edges(coords, holes, u, j)
            v = v_lo[:, :, None] + (v_hi - v_lo)[:, :, None] * s[:, None, :]
            weight = du * (v_hi - v_lo) * (u if polar else 1.0)
            if polar:
                z = coords.center + u[:, :, None] * np.exp(1j * v)
            else:
                z = u[:, :, None] + 1j * v
            return _checked(g, z) * weight[:, :, None]

        result = integrate_unit_square(integrand, tol / len(pieces))
        values.append(result.value)
        error += result.error
        evaluations += result.evaluations
        converged = converged and result.converged

    value = complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))
    return QuadResult(value=value, abs_error_estimate=error, evaluations=max(1, evaluations), converged=converged)


def _checked(g: Expr, z: np.ndarray) -> np.ndarray:
    try:
        return evaluate_array(g, z)
    except EvaluationError as exc:
        raise SingularityInDomainError(exc.position if exc.position is not None else complex(z.flat[0])) from exc


def _scaled(result: QuadResult) -> QuadResult:
    return result.model_copy(update={"value": 2j * result.value, "abs_error_estimate": 2.0 * result.abs_error_estimate})


def integrate_area(g: Expr, dom: BaseDomain, tol: float = AREA_TOL) -> QuadResult:
    """∬ g dz̄dz over the domain, i.e. 2i times the ordinary area integral"""
    result = _scaled(_area_integral(g, dom.coordinates(), [], tol))
    if not result.converged:
        log.warning(f"area integral over {dom.kind} did not reach tol {tol:.1e}")
    return result


def _excision_radius(dom: BaseDomain, points: List[complex]) -> float:
    radius = math.inf
    for i, p in enumerate(points):
        if not dom.contains(p):
            raise GeometryError(f"excision point {p!r} is not inside the {dom.kind} domain", field="points")
        radius = min(radius, 0.5 * dom.distance_to_boundary(p))
        for q in points[i + 1:]:
            radius = min(radius, 0.5 * abs(p - q))
    if not radius > 0:
        raise GeometryError("excision points must be distinct", field="points")
    return radius


def vp_integrate_area(g: Expr, dom: BaseDomain, exc: ExcisionSpec, tol: float = AREA_TOL) -> QuadResult:
    """Principal value of ∬ g dz̄dz: discs of radius eps_m around each point removed, eps_m -> 0.

    The region outside fixed discs of radius rho0 is integrated once; the discs are
    filled in by polar shells eps_{m+1} < |z - p| < eps_m, so every schedule step reuses
    the previous one.
    """
    points = [complex(p) for p in exc.points]
    if not points:
        return integrate_area(g, dom, tol)

    rho0 = _excision_radius(dom, points)
    schedule = exc.capped(rho0)
    radii = schedule.radii()
    log.debug(f"area excision around {len(points)} point(s), rho0={rho0:.3e}, eps0={radii[0]:.3e}")

    outer = _area_integral(g, dom.coordinates(), [(p, rho0) for p in points], tol)
    evaluations = outer.evaluations
    error = outer.abs_error_estimate
    converged = outer.converged

    shell_tol = tol / (len(points) * len(radii))
    running = outer.value
    if radii[0] < rho0:
        for p in points:
            first = _area_integral(g, Annulus(center=p, r=radii[0], R=rho0).coordinates(), [], shell_tol)
            running += first.value
            evaluations += first.evaluations
            error += first.abs_error_estimate
            converged = converged and first.converged

    totals = [running]
    for big, small in zip(radii, radii[1:]):
        for p in points:
            shell = _area_integral(g, Annulus(center=p, r=small, R=big).coordinates(), [], shell_tol)
            running += shell.value
            evaluations += shell.evaluations
            error += shell.abs_error_estimate
            converged = converged and shell.converged
        totals.append(running)

    values = [2j * v for v in totals]
    estimate = extrapolate_limit(radii, values, schedule.q, what="principal value of area integral")
    value = estimate.require("principal value of area integral")
    return QuadResult(
        value=value,
        abs_error_estimate=estimate.error + 2.0 * error,
        evaluations=max(1, evaluations),
        converged=converged,
        table=estimate.table,
    )


def integrate_area_excised(g: Expr, dom: BaseDomain, holes: Sequence[Hole], tol: float = AREA_TOL) -> QuadResult:
    """∬ g dz̄dz over the domain minus fixed discs (center, radius); discs may reach outside it"""
    result = _scaled(_area_integral(g, dom.coordinates(), [(complex(p), float(r)) for p, r in holes], tol))
    if not result.converged:
        log.warning(f"excised area integral over {dom.kind} did not reach tol {tol:.1e}")
    return result


def vp_integrate_area_matched(g: Expr, dom: BaseDomain, exc: ExcisionSpec, tol: float = AREA_TOL) -> QuadResult:
    """Principal value of ∬ g dz̄dz where excision points may also lie on the boundary of the domain.

    Every eps_m gets its own integral over the domain minus the discs of radius eps_m,
    so the disc around a boundary point is cut by the domain edge as it shrinks.
    """
    points = [complex(p) for p in exc.points]
    if not points:
        return integrate_area(g, dom, tol)
    radii = exc.radii()
    values = []
    evaluations = 0
    error = 0.0
    converged = True
    for eps in radii:
        result = integrate_area_excised(g, dom, [(p, eps) for p in points], tol)
        values.append(result.value)
        evaluations += result.evaluations
        error = max(error, result.abs_error_estimate)
        converged = converged and result.converged
    estimate = extrapolate_limit(radii, values, exc.q, what="matched principal value of area integral")
    value = estimate.require("matched principal value of area integral")
    return QuadResult(
        value=value,
        abs_error_estimate=estimate.error + error,
        evaluations=max(1, evaluations),
        converged=converged,
        table=estimate.table,
    )
