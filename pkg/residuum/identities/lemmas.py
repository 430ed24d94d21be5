"""Arc and wedge lemmas for functions whose weighted limit (z - C) f has per-sector values.

With the plane split at C by two rays into sector 1 = (phi_1, phi_2) and
sector 2 = (phi_2, phi_1 + 2π):

    large circle:  ∫ over the sector-2 arc |z - C| = R -> ∞ of f dz = 2πi Σ Res - α₁ i A∞₁
    small circle:  ∫ over the sector-2 arc |z - z_N| = δ -> 0 of f dz = 2πi Res - α₁ i A₀₁
    wedge:         v.t.∫ along the rays bounding sector 2 - v.p.∬ ∂f/∂z̄ dz̄dz = Σ p Res
                   (and with -f dz̄, ∂f/∂z and Res⋆ when the conj-component limit is 0)

Each check first samples the sector limit along several rays; a missing or
ray-dependent limit makes the report not applicable.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np

from ..defaults import LARGE_RADIUS, LEMMA_TOL, PRECONDITION_FRACTIONS, Q, STEPS
from ..errors import EvaluationError, SectorNonConvergentError, TruncationNonConvergentError, ValidationFailure
from ..expr import Expr, evaluate_array, is_zero, wirtinger_dz, wirtinger_dzbar
from ..geometry.domains import AnnularSector
from ..geometry.paths import TWO_PI, Arc, Segment
from ..geometry.sectors import SectorDecomposition
from ..models.results import ExcisionSpec, VerificationReport
from ..quad.area import integrate_area_excised
from ..quad.extrapolation import extrapolate_limit
from ..quad.path import Measure, integrate_path
from ..residue import residue_at_infinity, residue_small_circle
from .planar import point_residues

log = logging.getLogger(__name__)

TRUNCATION_NOTE = "wedge truncated jointly: R_m = R_0 / q^m and delta_m = delta_0 * q^m"


@dataclass(frozen=True)
class RayLimit:
    """Weighted limits of f sampled along rays spread over one sector"""

    a_z: Optional[complex]
    a_zbar: Optional[complex]
    reason: str = ""

    @property
    def exists(self) -> bool:
        return self.a_z is not None


def _agreeing(values: List[complex], tol: float) -> Optional[complex]:
    reference = values[len(values) // 2]
    spread = max(abs(v - reference) for v in values)
    return reference if spread <= tol * max(1.0, abs(reference)) else None


def sample_sector_limit(
    f: Expr,
    center: complex,
    bounds: Tuple[float, float],
    at: Literal["zero", "infinity"],
    schedule: ExcisionSpec,
    tol: float = LEMMA_TOL,
    fractions: Sequence[float] = PRECONDITION_FRACTIONS,
) -> RayLimit:
    """lim (z - C) f and lim -conj(z - C) f along rays at `fractions` of the sector, edges included"""
    params = schedule.radii()
    distances = np.array(params if at == "zero" else [1.0 / h for h in params])
    lo, hi = bounds
    z_values: List[complex] = []
    zbar_values: List[complex] = []
    zbar_ok = True
    for fraction in fractions:
        angle = lo + fraction * (hi - lo)
        offsets = distances * np.exp(1j * angle)
        try:
            values = evaluate_array(f, center + offsets)
        except EvaluationError as exc:
            return RayLimit(None, None, f"f cannot be evaluated on the ray at angle {angle:.6g}: {exc.message}")
        a_z = extrapolate_limit(params, (offsets * values).tolist(), schedule.q)
        if a_z.status != "converged":
            return RayLimit(None, None, f"no limit at {at} along the ray at angle {angle:.6g} ({a_z.status})")
        z_values.append(a_z.value)
        a_zbar = extrapolate_limit(params, (-np.conj(offsets) * values).tolist(), schedule.q)
        zbar_ok = zbar_ok and a_zbar.status == "converged"
        zbar_values.append(a_zbar.value)

    a_z = _agreeing(z_values, tol)
    if a_z is None:
        return RayLimit(None, None, f"the limit at {at} depends on the ray direction")
    a_zbar = _agreeing(zbar_values, tol) if zbar_ok else None
    return RayLimit(a_z, a_zbar)


def _two_sectors(d: SectorDecomposition) -> None:
    if d.count not in (1, 2):
        raise ValidationFailure(f"the lemmas split the plane into K = 2 sectors, got K = {d.count}", field="sectors")


def _not_applicable(name: str, tol: float, reason: str, strict: bool) -> VerificationReport:
    if strict:
        raise SectorNonConvergentError(0, reason)
    log.info(f"{name}: not applicable ({reason})")
    return VerificationReport.not_applicable(name, tol, reason)


def _arc_limit(f: Expr, center: complex, radii: Sequence[float], params: Sequence[float], q: float,
               lo: float, hi: float, what: str) -> Tuple[complex, complex]:
    """Limits of ∫ f dz and -∫ f dz̄ over arcs of the given radii spanning (lo, hi)"""
    dz_values: List[complex] = []
    dzbar_values: List[complex] = []
    for radius in radii:
        arc = Arc(center=center, radius=radius, theta_start=lo, theta_end=hi)
        dz_values.append(integrate_path(f, arc, "dz").value)
        dzbar_values.append(-integrate_path(f, arc, "dzbar").value)
    dz = extrapolate_limit(params, dz_values, q, what=what).require(what)
    dzbar = extrapolate_limit(params, dzbar_values, q, what=what).require(what)
    return dz, dzbar


def _build(name: str, lhs: complex, rhs: complex, lhs_star: complex, rhs_star: Optional[complex], tol: float,
           details: Dict[str, complex], notes: List[str]) -> VerificationReport:
    companions = []
    if rhs_star is None:
        notes.append("conjugate form not checked: the conj-component limit depends on the ray")
    else:
        details["lhs_star"] = lhs_star
        details["rhs_star"] = rhs_star
        companions.append((lhs_star, rhs_star))
    report = VerificationReport.build(name, lhs, rhs, tol, details, notes, companions)
    log.info(f"{name}: gap {report.abs_gap:.3e} ({report.status})")
    return report


def _default_radius(C: complex, sing: Sequence[complex]) -> float:
    spread = max((abs(complex(s) - C) for s in sing), default=0.0)
    return max(LARGE_RADIUS, 2.0 * spread + 1.0)


def check_lemma_large_circle(
    f: Expr,
    C: complex,
    d: SectorDecomposition,
    sing: Sequence[complex],
    R_schedule: Optional[ExcisionSpec] = None,
    tol: float = LEMMA_TOL,
    strict: bool = False,
    name: str = "lemma_large_circle",
) -> VerificationReport:
    """The arc of radius R over sector 2 against 2πi Σ Res - α₁ i A∞₁.

    `R_schedule` holds h_m = 1/R_m. The finite residue sum comes from the residue at
    infinity, so a singular point missing from `sing` surfaces as InversionMismatchError.
    """
    _two_sectors(d)
    C = complex(C)
    d = d.model_copy(update={"center": C})
    schedule = R_schedule or ExcisionSpec(eps0=1.0 / _default_radius(C, sing), q=Q, steps=STEPS)
    sector_1 = d.bounds(0)
    alpha_1 = sector_1[1] - sector_1[0]

    limit = sample_sector_limit(f, C, sector_1, "infinity", schedule, tol)
    if not limit.exists:
        return _not_applicable(name, tol, f"sector 1: {limit.reason}", strict)

    at_infinity = residue_at_infinity(f, sing)
    sum_res = -at_infinity.res
    sum_res_star = -at_infinity.res_star

    if d.count == 1:
        lhs = lhs_star = 0j
    else:
        params = schedule.radii()
        lhs, lhs_star = _arc_limit(f, C, [1.0 / h for h in params], params, schedule.q,
                                   sector_1[1], sector_1[0] + TWO_PI, "sector-2 arc at infinity")

    rhs = 2j * math.pi * sum_res - alpha_1 * 1j * limit.a_z
    rhs_star = None
    if limit.a_zbar is not None:
        rhs_star = 2j * math.pi * sum_res_star + alpha_1 * 1j * limit.a_zbar
    details = {
        "sector_2_arc_dz": lhs,
        "sum_res": sum_res,
        "sum_res_star": sum_res_star,
        "alpha_1": complex(alpha_1),
        "A_inf_1": limit.a_z,
    }
    if limit.a_zbar is not None:
        details["A_inf_1_conj"] = limit.a_zbar
    return _build(name, lhs, rhs, lhs_star, rhs_star, tol, details, [])


def check_lemma_small_circle(
    f: Expr,
    z_N: complex,
    d: SectorDecomposition,
    delta_schedule: Optional[ExcisionSpec] = None,
    tol: float = LEMMA_TOL,
    strict: bool = False,
    name: str = "lemma_small_circle",
) -> VerificationReport:
    """The arc of radius δ over sector 2 against 2πi Res - α₁ i A₀₁.

    With a single sector (K = 1) there is no sector-2 arc and the check reduces to
    Res f = A₀₁, the defining relation of the residue as a sector limit.
    """
    _two_sectors(d)
    z_N = complex(z_N)
    d = d.model_copy(update={"center": z_N})
    schedule = delta_schedule or ExcisionSpec(points=[z_N], q=Q, steps=STEPS)
    sector_1 = d.bounds(0)
    alpha_1 = sector_1[1] - sector_1[0]

    limit = sample_sector_limit(f, z_N, sector_1, "zero", schedule, tol)
    if not limit.exists:
        return _not_applicable(name, tol, f"sector 1: {limit.reason}", strict)

    pair = residue_small_circle(f, z_N, schedule.with_points([z_N]))
    if d.count == 1:
        lhs = lhs_star = 0j
    else:
        params = schedule.radii()
        lhs, lhs_star = _arc_limit(f, z_N, params, params, schedule.q,
                                   sector_1[1], sector_1[0] + TWO_PI, "sector-2 arc at zero")

    rhs = 2j * math.pi * pair.res - alpha_1 * 1j * limit.a_z
    rhs_star = None
    if limit.a_zbar is not None:
        rhs_star = 2j * math.pi * pair.res_star + alpha_1 * 1j * limit.a_zbar
    details = {
        "sector_2_arc_dz": lhs,
        "res": pair.res,
        "res_star": pair.res_star,
        "alpha_1": complex(alpha_1),
        "A_0_1": limit.a_z,
    }
    if limit.a_zbar is not None:
        details["A_0_1_conj"] = limit.a_zbar
    return _build(name, lhs, rhs, lhs_star, rhs_star, tol, details, [])


@dataclass(frozen=True)
class WedgePoint:
    point: complex
    potential: complex
    where: Literal["interior", "ray", "vertex"]


def _place_in_wedge(C: complex, lo: float, hi: float, sing: Sequence[complex], scale: float) -> List[WedgePoint]:
    placed = []
    guard = 1e-9 * max(1.0, scale)
    for s in sing:
        s = complex(s)
        offset = s - C
        if abs(offset) <= guard:
            placed.append(WedgePoint(s, 1j * (hi - lo), "vertex"))
            continue
        angle = lo + (cmath.phase(offset) - lo) % TWO_PI
        if abs(angle - lo) * abs(offset) <= guard or abs(angle - hi) * abs(offset) <= guard or \
                abs(angle - TWO_PI - lo) * abs(offset) <= guard:
            placed.append(WedgePoint(s, 1j * math.pi, "ray"))
        elif lo < angle < hi:
            placed.append(WedgePoint(s, 2j * math.pi, "interior"))
    return placed


def _excised_ray(f: Expr, ray: Segment, points: Sequence[complex], delta: float, measure: Measure = "dz") -> complex:
    """∫ f dz (or dz̄) along the ray with arclength-δ pieces removed around points lying on it"""
    length = ray.length()
    cuts = []
    for p in points:
        distance, t = ray.nearest(p)
        if distance <= 1e-9 * max(1.0, length):
            reach = delta / length
            cuts.append((max(0.0, t - reach), min(1.0, t + reach)))
    pieces = []
    cursor = 0.0
    for lo, hi in sorted(cuts):
        if lo > cursor:
            pieces.append(Segment(a=complex(ray.point(np.array([cursor]))[0]), b=complex(ray.point(np.array([lo]))[0])))
        cursor = max(cursor, hi)
    if cursor < 1.0:
        pieces.append(Segment(a=complex(ray.point(np.array([cursor]))[0]), b=ray.b))
    if not pieces:
        return 0j
    return integrate_path(f, pieces, measure).value


def _wedge_area(g: Expr, wedge: AnnularSector, holes: List[Tuple[complex, float]]) -> complex:
    if is_zero(g):
        return 0j
    return integrate_area_excised(g, wedge, holes).value


def check_lemma_vt_sector(
    f: Expr,
    C: complex,
    d: SectorDecomposition,
    R_schedule: Optional[ExcisionSpec] = None,
    delta_schedule: Optional[ExcisionSpec] = None,
    sing: Sequence[complex] = (),
    tol: float = LEMMA_TOL,
    strict: bool = False,
    name: str = "lemma_vt_sector",
) -> VerificationReport:
    """Rays bounding sector 2, truncated at R, minus the area term over the truncated wedge,
    against Σ p Res over the closed wedge (2πi inside, iπ on a ray, i α₂ at the vertex).

    R and the on-ray excision radius δ shrink together on one geometric schedule;
    the closing arc at R is integrated alongside and must vanish. When the conjugate
    limit of sector 2 at infinity is 0 as well, -v.t.∫ f dz̄ along the rays minus the
    area term of ∂f/∂z is checked against Σ p Res⋆ in the same run.
    """
    _two_sectors(d)
    if d.count != 2:
        raise ValidationFailure("the wedge lemma needs two sectors", field="sectors")
    C = complex(C)
    d = d.model_copy(update={"center": C})
    lo, hi = d.bounds(1)
    points = [complex(s) for s in sing]

    R_schedule = R_schedule or ExcisionSpec(eps0=1.0 / _default_radius(C, points), q=Q, steps=STEPS)
    placed = _place_in_wedge(C, lo, hi, points, 1.0 / R_schedule.eps0)
    gaps = [abs(a.point - b.point) for i, a in enumerate(placed) for b in placed[i + 1:]]
    gaps += [abs(w.point - C) for w in placed if w.where != "vertex"]
    delta_schedule = delta_schedule or ExcisionSpec(eps0=0.1 * min(gaps, default=1.0), q=R_schedule.q,
                                                    steps=R_schedule.steps)
    if delta_schedule.q != R_schedule.q or delta_schedule.steps != R_schedule.steps:
        raise ValidationFailure("joint truncation needs R and delta schedules with the same q and steps",
                                field="schedule")

    limit = sample_sector_limit(f, C, (lo, hi), "infinity", R_schedule, tol)
    if not limit.exists:
        return _not_applicable(name, tol, f"sector 2: {limit.reason}", strict)
    if abs(limit.a_z) > tol:
        return _not_applicable(name, tol, f"sector 2 limit at infinity is {limit.a_z!r}, not 0", strict)
    conjugate = limit.a_zbar is not None and abs(limit.a_zbar) <= tol

    on_rays = [w.point for w in placed if w.where != "interior"]
    g = wirtinger_dzbar(f)
    g_star = wirtinger_dz(f)
    params = R_schedule.radii()
    totals: List[complex] = []
    arcs: List[complex] = []
    totals_star: List[complex] = []
    arcs_star: List[complex] = []
    for h, delta in zip(params, delta_schedule.radii()):
        R = 1.0 / h
        ray_out = Segment(a=C, b=C + R * cmath.exp(1j * lo))
        ray_in = Segment(a=C + R * cmath.exp(1j * hi), b=C)
        wedge = AnnularSector(center=C, r=0.0, R=R, phi_lo=lo, phi_hi=hi)
        holes = [(w.point, delta) for w in placed]
        arc = Arc(center=C, radius=R, theta_start=lo, theta_end=hi)
        rays = _excised_ray(f, ray_out, on_rays, delta) + _excised_ray(f, ray_in, on_rays, delta)
        totals.append(rays - _wedge_area(g, wedge, holes))
        arcs.append(integrate_path(f, arc, "dz").value)
        if conjugate:
            rays_star = -(_excised_ray(f, ray_out, on_rays, delta, "dzbar")
                          + _excised_ray(f, ray_in, on_rays, delta, "dzbar"))
            totals_star.append(rays_star - _wedge_area(g_star, wedge, holes))
            arcs_star.append(-integrate_path(f, arc, "dzbar").value)

    estimate = extrapolate_limit(params, totals, R_schedule.q, what="truncated wedge integral")
    if estimate.status != "converged":
        raise TruncationNonConvergentError(f"truncated wedge integral is {estimate.status} as R grows")
    closing = extrapolate_limit(params, arcs, R_schedule.q, what="closing arc")
    closing_arc = closing.value if closing.status == "converged" else arcs[-1]

    residues = point_residues(f, [w.point for w in placed])
    details: Dict[str, complex] = {"vt_rays_minus_area": estimate.value, "closing_arc": closing_arc}
    terms = []
    star_terms = []
    for j, (w, pair) in enumerate(zip(placed, residues)):
        details[f"potential_{j}"] = w.potential
        details[f"res_{j}"] = pair.res
        details[f"res_star_{j}"] = pair.res_star
        terms.append(w.potential * pair.res)
        star_terms.append(w.potential * pair.res_star)
    rhs = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))

    notes = [TRUNCATION_NOTE]
    companions = [(closing_arc, 0j)]
    if conjugate:
        estimate_star = extrapolate_limit(params, totals_star, R_schedule.q, what="truncated conjugate wedge integral")
        if estimate_star.status != "converged":
            raise TruncationNonConvergentError(f"truncated conjugate wedge integral is {estimate_star.status}")
        closing_star = extrapolate_limit(params, arcs_star, R_schedule.q, what="closing arc in dz̄")
        closing_arc_star = closing_star.value if closing_star.status == "converged" else arcs_star[-1]
        rhs_star = complex(math.fsum(t.real for t in star_terms), math.fsum(t.imag for t in star_terms))
        details.update({"lhs_star": estimate_star.value, "rhs_star": rhs_star, "closing_arc_star": closing_arc_star})
        companions += [(estimate_star.value, rhs_star), (closing_arc_star, 0j)]
    else:
        notes.append("conjugate form not checked: the conj-component limit of sector 2 at infinity is not 0")

    report = VerificationReport.build(name, estimate.value, rhs, tol, details, notes=notes, companions=companions)
    log.info(f"{name}: gap {report.abs_gap:.3e} ({report.status})")
    return report
