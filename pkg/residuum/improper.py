"""Principal, singular and total values of improper integrals of F' over a real segment."""

import logging
from typing import List, Optional, Sequence

from .defaults import EPS0_FRACTION, NOISE_FLOOR, Q, QUAD_TOL, STEPS
from .errors import (
    EndpointSingularError,
    EvaluationError,
    MismatchBeyondToleranceError,
    OverlappingExcisionError,
    ValidationFailure,
)
from .expr import Expr, derivative_along_real_axis, evaluate
from .geometry.paths import Segment
from .models.numbers import ExtendedComplex
from .models.results import ExcisionSpec, ImproperResult, MatchedRadiusRow
from .quad.extrapolation import LimitEstimate, extrapolate_limit
from .quad.path import integrate_path

log = logging.getLogger(__name__)

BRANCH_CONVENTION = "principal log, Im in (-pi, pi]"


def _as_extended(estimate: LimitEstimate, what: str) -> ExtendedComplex:
    if estimate.status == "divergent":
        return ExtendedComplex.infinite(estimate.direction)
    return ExtendedComplex.finite(estimate.require(what))


def _check_points(a: float, b: float, sing: Sequence[float]) -> List[float]:
    points = sorted(float(c) for c in sing)
    if not a < b:
        raise ValidationFailure(f"interval needs a < b, got a={a}, b={b}", field="a")
    if any(not a < c < b for c in points):
        raise ValidationFailure("singular points must lie strictly inside (a, b)", field="sing")
    if len(set(points)) != len(points):
        raise ValidationFailure("singular points must be distinct", field="sing")
    return points


def default_improper_schedule(a: float, b: float, sing: Sequence[float]) -> ExcisionSpec:
    cuts = [a, *sorted(sing), b]
    gap = min(hi - lo for lo, hi in zip(cuts, cuts[1:]))
    return ExcisionSpec(points=[complex(c) for c in sing], eps0=EPS0_FRACTION * gap, q=Q, steps=STEPS)


def _check_disjoint(a: float, b: float, points: List[float], schedule: ExcisionSpec) -> None:
    eps0 = schedule.eps0
    for lo, hi in zip(points, points[1:]):
        if 2 * eps0 >= hi - lo:
            raise OverlappingExcisionError(
                f"excisions of radius {eps0} around {lo} and {hi} overlap", field="schedule")
    if points and (points[0] - eps0 <= a or points[-1] + eps0 >= b):
        raise OverlappingExcisionError(f"excision radius {eps0} reaches an endpoint of [{a}, {b}]", field="schedule")


def _jump(F: Expr, c: float, delta: float) -> complex:
    return evaluate(F, complex(c + delta, 0.0)) - evaluate(F, complex(c - delta, 0.0))


def _excised_integral(integrand: Expr, a: float, b: float, points: List[float], delta: float,
                      tol: float) -> complex:
    edges = [a]
    for c in points:
        edges.extend([c - delta, c + delta])
    edges.append(b)
    pieces = [Segment(a=complex(lo, 0.0), b=complex(hi, 0.0)) for lo, hi in zip(edges[::2], edges[1::2])]
    return integrate_path(integrand, pieces, "dz", tol).value


def jump_term(F: Expr, c: float, schedule: Optional[ExcisionSpec] = None) -> ExtendedComplex:
    """lim F(c + Δ) - F(c - Δ) as Δ -> 0, Infinite with direction when it grows without bound"""
    schedule = schedule or ExcisionSpec(points=[complex(c)], q=Q, steps=STEPS)
    radii = schedule.radii()
    try:
        values = [_jump(F, c, delta) for delta in radii]
    except EvaluationError as exc:
        raise ValidationFailure(f"antiderivative cannot be evaluated next to {c}: {exc.message}", field="F") from exc
    return _as_extended(extrapolate_limit(radii, values, schedule.q, what=f"jump at {c}"), f"jump at {c}")


def vp_1d(F: Expr, a: float, b: float, sing: Sequence[float], schedule: Optional[ExcisionSpec] = None,
          tol: float = QUAD_TOL) -> ExtendedComplex:
    points = _check_points(a, b, sing)
    integrand = derivative_along_real_axis(F)
    if not points:
        return ExtendedComplex.finite(integrate_path(integrand, Segment(a=complex(a), b=complex(b)), "dz", tol).value)
    schedule = schedule or default_improper_schedule(a, b, points)
    _check_disjoint(a, b, points, schedule)
    radii = schedule.radii()
    values = [_excised_integral(integrand, a, b, points, delta, tol) for delta in radii]
    estimate = extrapolate_limit(radii, values, schedule.q, what="principal value")
    return _as_extended(estimate, "principal value")


def _endpoint_value(F: Expr, x: float, name: str) -> complex:
    try:
        return evaluate(F, complex(x, 0.0))
    except EvaluationError as exc:
        raise EndpointSingularError(f"F is not defined at {name}={x}: {exc.message}", field=name) from exc


def vt_1d(
    F: Expr,
    a: float,
    b: float,
    sing: Sequence[float],
    schedule: Optional[ExcisionSpec] = None,
    tol: float = QUAD_TOL,
    match_tol: float = 1e-8,
) -> ImproperResult:
    """Total value F(b) - F(a), with the principal and singular parts and a matched-radius check.

    Each schedule radius Δ gives excised(Δ) + Σ jumps(Δ), which must equal F(b) - F(a)
    at every step; its extrapolated limit is `vt_check`.
    """
    points = _check_points(a, b, sing)
    vt = _endpoint_value(F, b, "b") - _endpoint_value(F, a, "a")
    integrand = derivative_along_real_axis(F)

    if not points:
        excised = integrate_path(integrand, Segment(a=complex(a), b=complex(b)), "dz", tol).value
        agreement = abs(vt - excised)
        if agreement > match_tol * max(1.0, abs(vt)):
            raise MismatchBeyondToleranceError(f"integral {excised!r} differs from F(b) - F(a) = {vt!r}")
        return ImproperResult(vp=ExtendedComplex.finite(excised), vs=ExtendedComplex.finite(0j), vt=vt,
                              vt_check=excised, agreement=agreement, branch_convention=BRANCH_CONVENTION)

    schedule = schedule or default_improper_schedule(a, b, points)
    _check_disjoint(a, b, points, schedule)
    radii = schedule.radii()

    excised_values: List[complex] = []
    jump_values: List[complex] = []
    rows: List[MatchedRadiusRow] = []
    for step, delta in enumerate(radii):
        excised = _excised_integral(integrand, a, b, points, delta, tol)
        jumps = sum((_jump(F, c, delta) for c in points), 0j)
        total = excised + jumps
        excised_values.append(excised)
        jump_values.append(jumps)
        rows.append(MatchedRadiusRow(step=step, delta=delta, excised=excised, jumps=jumps, total=total,
                                     residual=abs(total - vt)))

    vp = _as_extended(extrapolate_limit(radii, excised_values, schedule.q, what="principal value"), "principal value")
    vs = _as_extended(extrapolate_limit(radii, jump_values, schedule.q, what="singular value"), "singular value")
    # the totals carry the rounding of the largest excised integral
    scale = max(1.0, max(abs(row.excised) for row in rows))
    check = extrapolate_limit(radii, [row.total for row in rows], schedule.q,
                              noise=max(NOISE_FLOOR, 1e-12 * scale), what="matched-radius total")
    vt_check = check.require("matched-radius total")
    agreement = abs(vt - vt_check)

    if agreement > match_tol * scale:
        raise MismatchBeyondToleranceError(
            f"matched-radius total {vt_check!r} differs from F(b) - F(a) = {vt!r} by {agreement:.3e}")
    if vp.is_finite and vs.is_finite and abs(vp.value + vs.value - vt) > match_tol * scale:
        log.warning(f"vp + vs = {vp.value + vs.value!r} differs from vt = {vt!r}")
    log.info(f"improper integral on [{a}, {b}]: vt={vt!r}, vp={vp.describe()}, vs={vs.describe()}")
    return ImproperResult(vp=vp, vs=vs, vt=vt, vt_check=vt_check, agreement=agreement,
                          branch_convention=BRANCH_CONVENTION, table=rows)

