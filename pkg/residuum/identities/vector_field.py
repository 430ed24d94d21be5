"""Residues of a planar field F = P + iQ built from the partial residues of its components."""

import logging
import math
from typing import List, Optional

from ..defaults import QUAD_TOL, VERIFY_TOL
from ..expr import Expr, is_zero
from ..geometry.paths import FullCircle
from ..models.results import ExcisionSpec, ResiduePair, VerificationReport
from ..quad.extrapolation import extrapolate_limit
from ..quad.path import integrate_path
from ..residue import default_schedule, residue_small_circle

log = logging.getLogger(__name__)

TWO_PI_I = 2j * math.pi


def _component(g: Expr, z_N: complex, schedule: ExcisionSpec) -> ResiduePair:
    if is_zero(g):
        return ResiduePair(res=0j, res_star=0j, method="zero")
    return residue_small_circle(g, z_N, schedule)


def _contour_forms(P: Expr, Q: Expr, z_N: complex, schedule: ExcisionSpec):
    """Flux ∮ (P dz - Q dz̄) / 2πi and circulation ∮ (P dz̄ + Q dz) / 2πi on each circle"""
    flux: List[complex] = []
    circulation: List[complex] = []
    for eps in schedule.radii():
        circle = FullCircle(center=z_N, radius=eps)
        p_dz = integrate_path(P, circle, "dz", QUAD_TOL).value
        p_dzbar = integrate_path(P, circle, "dzbar", QUAD_TOL).value
        q_dz = integrate_path(Q, circle, "dz", QUAD_TOL).value
        q_dzbar = integrate_path(Q, circle, "dzbar", QUAD_TOL).value
        flux.append((p_dz - q_dzbar) / TWO_PI_I)
        circulation.append((p_dzbar + q_dz) / TWO_PI_I)
    return flux, circulation


def check_vector_field_residues(
    P: Expr,
    Q: Expr,
    z_N: complex,
    schedules: Optional[ExcisionSpec] = None,
    tol: float = VERIFY_TOL,
    name: str = "vector_field_residues",
) -> VerificationReport:
    """Res F = Res P + Res⋆ Q and Res⋆ F = Res Q - Res⋆ P, checked against the flux and
    circulation integrals over shrinking circles around z_N."""
    z_N = complex(z_N)
    schedule = schedules or default_schedule(z_N)
    p_pair = _component(P, z_N, schedule)
    q_pair = _component(Q, z_N, schedule)
    res_f = p_pair.res + q_pair.res_star
    res_star_f = q_pair.res - p_pair.res_star

    flux_values, circulation_values = _contour_forms(P, Q, z_N, schedule)
    radii = schedule.radii()
    flux = extrapolate_limit(radii, flux_values, schedule.q, what="flux").require("flux")
    circulation = extrapolate_limit(radii, circulation_values, schedule.q, what="circulation").require("circulation")

    details = {
        "res_P": p_pair.res,
        "res_star_P": p_pair.res_star,
        "res_Q": q_pair.res,
        "res_star_Q": q_pair.res_star,
        "res_F": res_f,
        "res_star_F": res_star_f,
        "flux": flux,
        "circulation": circulation,
    }
    report = VerificationReport.build(name, res_f, flux, tol, details, companions=[(res_star_f, circulation)])
    log.info(f"{name}: Res F={res_f!r}, Res* F={res_star_f!r}, gap {report.abs_gap:.3e}")
    return report
