"""The planar residue identity for functions of z and conj(z):

    ∮ f dz - v.p.∬ ∂f/∂z̄ dz̄dz = Σ p(z_j) Res f(z_j)
   -∮ f dz̄ - v.p.∬ ∂f/∂z dz̄dz = Σ p(z_j) Res⋆ f(z_j)

with p the potential of each singular point with respect to the boundary.
"""

import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

from ..defaults import Q, STEPS, VERIFY_TOL
from ..errors import GeometryError
from ..expr import Expr, is_zero, wirtinger_dz, wirtinger_dzbar
from ..geometry.contour import Contour, locate_point
from ..geometry.domains import BaseDomain
from ..models.results import ExcisionSpec, ResiduePair, VerificationReport
from ..potential import Loops, as_loops, potential_2d
from ..quad.area import vp_integrate_area, vp_integrate_area_matched
from ..quad.path import integrate_path, vp_integrate_path
from ..residue import default_schedule, residue_small_circle

log = logging.getLogger(__name__)


def _fsum(values: Sequence[complex]) -> complex:
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def point_residues(f: Expr, points: Sequence[complex], dom: Optional[BaseDomain] = None) -> List[ResiduePair]:
    """Small-circle residues with circles kept inside `dom` and away from the other points"""
    residues = []
    for p in points:
        schedule = default_schedule(p, points)
        if dom is not None and dom.contains(p):
            schedule = schedule.capped(0.5 * dom.distance_to_boundary(p))
        residues.append(residue_small_circle(f, p, schedule))
    return residues


def _area_term(g: Expr, dom: BaseDomain, points: Sequence[complex]) -> complex:
    if is_zero(g):
        return 0j
    return vp_integrate_area(g, dom, ExcisionSpec(points=list(points))).value


def _check_interior(loops: List[Contour], points: Sequence[complex]) -> None:
    for p in points:
        for loop in loops:
            if locate_point(loop, p).tag == "Boundary":
                raise GeometryError(f"singular point {p!r} lies on the contour; use the boundary identity", field="sing")


def check_planar_residue_identity(
    f: Expr,
    c: Loops,
    dom: BaseDomain,
    sing: Sequence[complex],
    tol: float = VERIFY_TOL,
    name: str = "planar_residue_identity",
    doubled: bool = False,
) -> VerificationReport:
    """Both component forms of the planar residue identity; the reported gap is the larger one.

    With `doubled` every potential and residue contribution is taken in its spatial
    (doubled) form, and so is every other term.
    """
    loops = as_loops(c)
    points = [complex(p) for p in sing]
    _check_interior(loops, points)
    factor = 2.0 if doubled else 1.0

    boundary_dz = factor * _fsum([integrate_path(f, loop, "dz").value for loop in loops])
    boundary_dzbar = factor * -_fsum([integrate_path(f, loop, "dzbar").value for loop in loops])
    area_dzbar = factor * _area_term(wirtinger_dzbar(f), dom, points)
    area_dz = factor * _area_term(wirtinger_dz(f), dom, points)

    details: Dict[str, complex] = {
        "boundary_dz": boundary_dz,
        "vp_area_dzbar_derivative": area_dzbar,
        "boundary_dzbar": boundary_dzbar,
        "vp_area_dz_derivative": area_dz,
    }
    rhs_terms: List[complex] = []
    star_terms: List[complex] = []
    for j, (p, pair) in enumerate(zip(points, point_residues(f, points, dom))):
        potential = factor * potential_2d(loops, p).value
        details[f"potential_{j}"] = potential
        details[f"res_{j}"] = pair.res
        details[f"res_star_{j}"] = pair.res_star
        rhs_terms.append(potential * pair.res)
        star_terms.append(potential * pair.res_star)

    lhs = boundary_dz - area_dzbar
    rhs = _fsum(rhs_terms)
    lhs_star = boundary_dzbar - area_dz
    rhs_star = _fsum(star_terms)
    details["lhs_star"] = lhs_star
    details["rhs_star"] = rhs_star

    report = VerificationReport.build(name, lhs, rhs, factor * tol, details, companions=[(lhs_star, rhs_star)])
    log.info(f"{name}: gap {report.abs_gap:.3e} ({report.status})")
    return report


def _loop_of(loops: List[Contour], p: complex) -> Tuple[int, float]:
    for index, loop in enumerate(loops):
        location = locate_point(loop, p)
        if location.tag == "Boundary":
            return index, location.interior_angle
    raise GeometryError(f"boundary singular point {p!r} is not on the contour", field="boundary_sing")


def _matched_schedule(dom: BaseDomain, interior: Sequence[complex], on_contour: Sequence[complex]) -> ExcisionSpec:
    """Excision radii small against the point spacing and, for interior points, against the boundary"""
    everything = list(interior) + list(on_contour)
    eps0 = min(default_schedule(p, everything).eps0 for p in everything)
    for p in interior:
        eps0 = min(eps0, 0.5 * dom.distance_to_boundary(p))
    return ExcisionSpec(points=everything, eps0=eps0, q=Q, steps=STEPS)


def check_boundary_singularity_identity(
    f: Expr,
    c: Loops,
    dom: BaseDomain,
    interior_sing: Sequence[complex],
    boundary_sing: Sequence[complex],
    tol: float = VERIFY_TOL,
    name: str = "boundary_singularity_identity",
) -> VerificationReport:
    """v.p.∮ f dz - v.p.∬ ∂f/∂z̄ dz̄dz = Σ p Res f with p = iα for points on the contour.

    The conjugate form -v.p.∮ f dz̄ - v.p.∬ ∂f/∂z dz̄dz = Σ p Res⋆ f is checked beside
    it; its area term cuts discs around the contour points too, shrinking on one
    schedule. The indented total values are reported as well: an arc through the
    domain gives v.p. - iα Res, an arc outside gives v.p. + i(2π - α) Res, and each
    must match the residue sum of the points it encloses.
    """
    interior = [complex(p) for p in interior_sing]
    on_contour = [complex(p) for p in boundary_sing]
    if not on_contour:
        return check_planar_residue_identity(f, c, dom, interior, tol, name=name)

    loops = as_loops(c)
    _check_interior(loops, interior)
    placed = [(p, *_loop_of(loops, p)) for p in on_contour]

    boundary_values = []
    boundary_star_values = []
    for index, loop in enumerate(loops):
        here = [p for p, k, _ in placed if k == index]
        boundary_values.append(vp_integrate_path(f, loop, here, "dz").value)
        boundary_star_values.append(-vp_integrate_path(f, loop, here, "dzbar").value)
    boundary_vp = _fsum(boundary_values)
    boundary_star = _fsum(boundary_star_values)
    # the dz̄-derivative area term excises interior points only
    area_dzbar = _area_term(wirtinger_dzbar(f), dom, interior)
    g_star = wirtinger_dz(f)
    area_dz = 0j
    if not is_zero(g_star):
        area_dz = vp_integrate_area_matched(g_star, dom, _matched_schedule(dom, interior, on_contour)).value

    everything = interior + on_contour
    residues = dict(zip(everything, point_residues(f, everything, dom)))
    details: Dict[str, complex] = {
        "vp_boundary_dz": boundary_vp,
        "vp_area_dzbar_derivative": area_dzbar,
        "vp_boundary_dzbar": boundary_star,
        "vp_area_dz_derivative": area_dz,
    }

    interior_terms = []
    star_terms = []
    for j, p in enumerate(interior):
        potential = potential_2d(loops, p).value
        details[f"potential_interior_{j}"] = potential
        details[f"res_interior_{j}"] = residues[p].res
        details[f"res_star_interior_{j}"] = residues[p].res_star
        interior_terms.append(potential * residues[p].res)
        star_terms.append(potential * residues[p].res_star)

    boundary_terms = []
    inside_arc = []
    outside_arc = []
    for j, (p, _, alpha) in enumerate(placed):
        res = residues[p].res
        details[f"potential_boundary_{j}"] = 1j * alpha
        details[f"res_boundary_{j}"] = res
        details[f"res_star_boundary_{j}"] = residues[p].res_star
        boundary_terms.append(1j * alpha * res)
        star_terms.append(1j * alpha * residues[p].res_star)
        inside_arc.append(-1j * alpha * res)
        outside_arc.append(1j * (2.0 * math.pi - alpha) * res)

    lhs = boundary_vp - area_dzbar
    rhs = _fsum(interior_terms + boundary_terms)
    lhs_star = boundary_star - area_dz
    rhs_star = _fsum(star_terms)
    vt_interior_arc = lhs + _fsum(inside_arc)
    vt_exterior_arc = lhs + _fsum(outside_arc)
    enclosed_without = _fsum(interior_terms)
    enclosed_with = enclosed_without + _fsum([2j * math.pi * residues[p].res for p in on_contour])
    details.update({
        "lhs_star": lhs_star,
        "rhs_star": rhs_star,
        "vt_interior_arc": vt_interior_arc,
        "rhs_interior_arc": enclosed_without,
        "vt_exterior_arc": vt_exterior_arc,
        "rhs_exterior_arc": enclosed_with,
    })

    report = VerificationReport.build(
        name,
        lhs,
        rhs,
        tol,
        details,
        notes=["boundary points are excised from the ∂f/∂z area term only"],
        companions=[(lhs_star, rhs_star), (vt_interior_arc, enclosed_without), (vt_exterior_arc, enclosed_with)],
    )
    log.info(f"{name}: gap {report.abs_gap:.3e} ({report.status})")
    return report
