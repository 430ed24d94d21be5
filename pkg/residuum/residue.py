"""Classical and conjugate residues: shrinking circles, sector limits and the point at infinity."""

import logging
import math
from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np

from .defaults import (EPS0, EPS0_FRACTION, LARGE_RADIUS, Q, QUAD_TOL, SECTOR_FRACTIONS, SECTOR_RAY_TOL, SECTOR_STEPS,
                       STEPS)
from .errors import EvaluationError, InversionMismatchError, NumericalFailure, SectorNonConvergentError
from .expr import Expr, evaluate_array, invert_about
from .geometry.paths import TWO_PI, FullCircle
from .geometry.sectors import SectorDecomposition
from .models.results import ExcisionSpec, InfinityResiduePair, ResiduePair, SectorLimit, SectorLimits
from .quad.extrapolation import LimitEstimate, extrapolate_limit
from .quad.path import integrate_path

log = logging.getLogger(__name__)

TWO_PI_I = 2j * math.pi


def default_schedule(z_N: complex, others: Sequence[complex] = ()) -> ExcisionSpec:
    """eps0 = 0.1 * distance to the nearest other singularity (0.1 when there is none)"""
    distances = [abs(complex(z_N) - complex(o)) for o in others if complex(o) != complex(z_N)]
    eps0 = EPS0_FRACTION * min(distances) if distances else EPS0
    return ExcisionSpec(points=[z_N], eps0=eps0, q=Q, steps=STEPS)


def _circle_tol(f: Expr, circle: FullCircle, tol: float) -> float:
    """Absolute tolerance scaled to the size of the integrand on the circle"""
    samples = circle.point(np.linspace(0.0, 1.0, 33)[:-1] + 1.0 / 64)
    try:
        peak = float(np.max(np.abs(evaluate_array(f, samples))))
    except EvaluationError:
        peak = 1.0
    return max(tol, 1e-13 * peak * circle.length())


def _circle_pair(f: Expr, center: complex, radius: float, tol: float) -> Tuple[complex, complex, float]:
    circle = FullCircle(center=center, radius=radius)
    local_tol = _circle_tol(f, circle, tol)
    dz = integrate_path(f, circle, "dz", local_tol)
    dzbar = integrate_path(f, circle, "dzbar", local_tol)
    return dz.value, dzbar.value, dz.abs_error_estimate + dzbar.abs_error_estimate


def residue_small_circle(f: Expr, z_N: complex, schedule: Optional[ExcisionSpec] = None,
                         tol: float = QUAD_TOL) -> ResiduePair:
    """res = lim ∮ f dz / 2πi and res_star = lim -∮ f dz̄ / 2πi over |z - z_N| = eps_m"""
    z_N = complex(z_N)
    schedule = schedule or default_schedule(z_N)
    radii = schedule.radii()
    res_values: List[complex] = []
    star_values: List[complex] = []
    quad_error = 0.0
    for eps in radii:
        dz, dzbar, error = _circle_pair(f, z_N, eps, tol)
        res_values.append(dz / TWO_PI_I)
        star_values.append(-dzbar / TWO_PI_I)
        quad_error = max(quad_error, error / TWO_PI)

    res = extrapolate_limit(radii, res_values, schedule.q, what=f"residue at {z_N!r}")
    star = extrapolate_limit(radii, star_values, schedule.q, what=f"conjugate residue at {z_N!r}")
    return ResiduePair(
        res=res.require(f"residue at {z_N!r}"),
        res_star=star.require(f"conjugate residue at {z_N!r}"),
        error_estimate=res.error + star.error + quad_error,
        method="small_circle",
        table=res.table,
    )


def default_sector_schedule(z_N: complex, others: Sequence[complex] = ()) -> ExcisionSpec:
    """default_schedule carried on to SECTOR_STEPS, for slowly vanishing limits such as z log z"""
    return default_schedule(z_N, others).model_copy(update={"steps": SECTOR_STEPS})


def _agreeing(estimates: List[LimitEstimate]) -> Optional[complex]:
    """The bisector value when every ray converged to it, else None"""
    if any(e.status != "converged" for e in estimates):
        return None
    reference = estimates[len(estimates) // 2].value
    spread = max(abs(e.value - reference) for e in estimates)
    allowed = max(SECTOR_RAY_TOL * max(1.0, abs(reference)), 10.0 * max(e.error for e in estimates))
    return reference if spread <= allowed else None


def sector_limits(f: Expr, d: SectorDecomposition, at: Literal["zero", "infinity"] = "zero",
                  radii: Optional[ExcisionSpec] = None, strict: bool = False) -> SectorLimits:
    """Per-sector limits of (z - z_N) f and -conj(z - z_N) f.

    Each sector is sampled on the rays at SECTOR_FRACTIONS of its width; the bisector
    value is kept when all rays agree. At infinity the ray radius is 1/eps_m. A sector
    whose z-limit is missing or ray dependent is flagged, or raises
    SectorNonConvergentError when `strict`; a missing conjugate limit leaves a_zbar None.
    """
    schedule = radii or ExcisionSpec(eps0=EPS0, q=Q, steps=SECTOR_STEPS)
    params = schedule.radii()
    distances = np.array(params if at == "zero" else [1.0 / h for h in params])
    limits: List[SectorLimit] = []
    for k in range(d.count):
        lo, hi = d.bounds(k)
        z_estimates: List[LimitEstimate] = []
        zbar_estimates: List[LimitEstimate] = []
        for angle in d.ray_angles(k, SECTOR_FRACTIONS):
            points = d.center + distances * np.exp(1j * angle)
            offsets = points - d.center
            try:
                values = evaluate_array(f, points)
            except EvaluationError as exc:
                raise SectorNonConvergentError(k, exc.message) from exc
            z_estimates.append(extrapolate_limit(params, (offsets * values).tolist(), schedule.q,
                                                 what=f"sector {k} z-limit"))
            zbar_estimates.append(extrapolate_limit(params, (-np.conj(offsets) * values).tolist(), schedule.q,
                                                    what=f"sector {k} conj-limit"))

        a_z = _agreeing(z_estimates)
        a_zbar = _agreeing(zbar_estimates)
        converged = a_z is not None
        if not converged:
            log.info(f"sector {k} ({lo:.4f}, {hi:.4f}) has no ray-independent limit at {at}")
            if strict:
                raise SectorNonConvergentError(k, f"no ray-independent limit at {at}")
        elif a_zbar is None:
            log.info(f"sector {k} ({lo:.4f}, {hi:.4f}): conjugate limit at {at} depends on the ray")
        bisector = len(SECTOR_FRACTIONS) // 2
        error = float("inf")
        if converged:
            error = z_estimates[bisector].error + (zbar_estimates[bisector].error if a_zbar is not None else 0.0)
        limits.append(
            SectorLimit(
                sector=k,
                angle_lo=lo,
                angle_hi=hi,
                a_z=a_z if converged else z_estimates[bisector].value,
                a_zbar=a_zbar,
                converged=converged,
                error_estimate=error,
            )
        )
    return SectorLimits(center=d.center, at=at, limits=limits)


def _weighted_sum(limits: List[SectorLimit], values: List[complex]) -> complex:
    return complex(math.fsum(limit.width * v.real for limit, v in zip(limits, values)),
                   math.fsum(limit.width * v.imag for limit, v in zip(limits, values)))


def residue_from_sectors(limits: SectorLimits) -> ResiduePair:
    """2π Res = Σ α_k a_k(z) and 2π Res⋆ = -Σ α_k a_k(z̄); both signs flip at infinity.

    Res⋆ is None when any sector lacks a ray-independent conjugate limit.
    """
    for limit in limits.limits:
        if not limit.converged:
            raise SectorNonConvergentError(limit.sector)
    sign = 1.0 if limits.at == "zero" else -1.0
    res = sign * _weighted_sum(limits.limits, [limit.a_z for limit in limits.limits]) / TWO_PI
    res_star = None
    if all(limit.a_zbar is not None for limit in limits.limits):
        res_star = -sign * _weighted_sum(limits.limits, [limit.a_zbar for limit in limits.limits]) / TWO_PI
    error = math.fsum(limit.width * limit.error_estimate for limit in limits.limits) / TWO_PI
    return ResiduePair(
        res=res,
        res_star=res_star,
        error_estimate=error,
        method="sectors" if limits.at == "zero" else "sectors_at_infinity",
    )


def _large_circle(f: Expr, center: complex, radius0: float, schedule: ExcisionSpec,
                  tol: float) -> Tuple[LimitEstimate, LimitEstimate]:
    """Large-circle limits of -∮f dz/2πi and ∮f dz̄/2πi as the radius grows like 1/h_m"""
    params = [h / schedule.eps0 / radius0 for h in schedule.radii()]
    res_values: List[complex] = []
    star_values: List[complex] = []
    for h in params:
        dz, dzbar, _ = _circle_pair(f, center, 1.0 / h, tol)
        res_values.append(-dz / TWO_PI_I)
        star_values.append(dzbar / TWO_PI_I)
    res = extrapolate_limit(params, res_values, schedule.q, what="large-circle residue at infinity")
    star = extrapolate_limit(params, star_values, schedule.q, what="large-circle conjugate residue at infinity")
    return res, star


def _converged(estimate: LimitEstimate) -> Optional[complex]:
    return estimate.value if estimate.status == "converged" else None


def residue_at_infinity(
    f: Expr,
    finite_singularities: Sequence[complex],
    schedules: Optional[Sequence[ExcisionSpec]] = None,
    large: Optional[ExcisionSpec] = None,
    tol: float = QUAD_TOL,
    mismatch_floor: float = 1e-6,
) -> InfinityResiduePair:
    """Res at infinity as minus the sum of the finite residues, checked against a large circle.

    The large circle is centred at the mean of the singular points with radius growing
    as 1/h_m; an inversion w = 1/(z - c) gives a third value. Either large-circle limit
    may fail to exist (∮ z dz̄ grows like R²) and is then left None. A converged
    large-circle component that differs from the finite sum beyond the combined error
    estimates raises InversionMismatchError.
    """
    points = [complex(s) for s in finite_singularities]
    if schedules is None:
        schedules = [default_schedule(p, points) for p in points]
    elif len(schedules) != len(points):
        raise ValueError("one schedule per finite singularity is required")

    residues = [residue_small_circle(f, p, s, tol) for p, s in zip(points, schedules)]
    res = -sum((r.res for r in residues), 0j)
    res_star = -sum((r.res_star for r in residues), 0j)
    error = sum(r.error_estimate for r in residues)

    center = complex(np.mean(points)) if points else 0j
    spread = max((abs(p - center) for p in points), default=0.0)
    radius0 = max(LARGE_RADIUS, 2.0 * spread + 1.0)
    large = large or ExcisionSpec(eps0=1.0, q=Q, steps=4)
    circle_res, circle_star = _large_circle(f, center, radius0, large, tol)
    large_res, large_star = _converged(circle_res), _converged(circle_star)
    if large_res is None or large_star is None:
        log.info("large-circle route at infinity has a component without a limit")

    inversion_res = inversion_star = None
    try:
        inner_schedule = ExcisionSpec(eps0=1.0 / radius0, q=large.q, steps=large.steps)
        inversion_res = -residue_small_circle(invert_about(f, center), 0j, inner_schedule, tol).res
        inversion_star = -residue_small_circle(invert_about(f, center, conjugate_weight=True), 0j,
                                               inner_schedule, tol).res_star
    except NumericalFailure as exc:
        log.info(f"inversion route unavailable: {exc.message}")

    circle_error = sum(e.error for e in (circle_res, circle_star) if e.status == "converged")
    gaps = [abs(a - b) for a, b in ((res, large_res), (res_star, large_star)) if b is not None]
    gap = max(gaps) if gaps else None
    allowed = max(error + circle_error, mismatch_floor)
    if gap is not None and gap > allowed:
        raise InversionMismatchError(
            f"residue at infinity: finite-sum route {res!r} and large-circle route {large_res!r} differ by "
            f"{gap:.3e} > {allowed:.3e}; a finite singularity may be missing"
        )
    gap_text = "n/a" if gap is None else f"{gap:.2e}"
    log.info(f"residue at infinity {res!r} (large circle {large_res!r}, gap {gap_text})")
    return InfinityResiduePair(
        res=res,
        res_star=res_star,
        error_estimate=error,
        method="sum_of_finite",
        table=circle_res.table,
        large_circle_res=large_res,
        large_circle_res_star=large_star,
        large_circle_error=circle_error,
        inversion_res=inversion_res,
        inversion_res_star=inversion_star,
        discrepancy=gap,
    )
