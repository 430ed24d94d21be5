"""The logarithm on an annulus and on the slit annulus around a branch cut along the negative axis.

log z = (log(z conj(z)) + log(z / conj(z))) / 2: the first part is single valued on
the annulus, the second jumps across the cut, and log z itself obeys a Cauchy-type
identity with the two banks of the cut as part of the boundary.
"""

import logging
import math
from typing import List

from ..defaults import VERIFY_TOL
from ..expr import parse, wirtinger_dz, wirtinger_dzbar
from ..geometry.contour import make_keyhole
from ..geometry.domains import AnnularSector, Annulus
from ..geometry.paths import FullCircle
from ..models.results import ExcisionSpec, VerificationReport
from ..quad.area import integrate_area
from ..quad.extrapolation import extrapolate_limit
from ..quad.path import integrate_path

log = logging.getLogger(__name__)

CUT_ANGLE = math.pi
CIRCLE_TOL = 1e-8


def _modulus_reports(a: float, delta: float, tol: float) -> List[VerificationReport]:
    f = parse("log(z*conj(z))")
    outer = FullCircle(center=0j, radius=a)
    inner = FullCircle(center=0j, radius=delta)
    ring = Annulus(center=0j, r=delta, R=a)

    outer_dz = integrate_path(f, outer, "dz").value
    inner_dz = integrate_path(f, inner, "dz").value
    area_dzbar = integrate_area(wirtinger_dzbar(f), ring).value
    dz_report = VerificationReport.build(
        "keyhole_log_modulus_dz",
        outer_dz - inner_dz,
        area_dzbar,
        tol,
        {"outer_dz": outer_dz, "inner_dz": inner_dz, "area_dzbar_derivative": area_dzbar},
    )

    outer_dzbar = integrate_path(f, outer, "dzbar").value
    inner_dzbar = integrate_path(f, inner, "dzbar").value
    area_dz = integrate_area(wirtinger_dz(f), ring).value
    dzbar_report = VerificationReport.build(
        "keyhole_log_modulus_dzbar",
        -outer_dzbar + inner_dzbar,
        area_dz,
        tol,
        {"outer_dzbar": outer_dzbar, "inner_dzbar": inner_dzbar, "area_dz_derivative": area_dz},
    )
    return [dz_report, dzbar_report]


def _ratio_reports(a: float, delta: float, gap: float, tol: float) -> List[VerificationReport]:
    f = parse("log(z)-log(conj(z))")
    keyhole = make_keyhole(0j, a, delta, CUT_ANGLE, gap)
    slit = AnnularSector(center=0j, r=delta, R=a, phi_lo=CUT_ANGLE + gap, phi_hi=CUT_ANGLE + 2.0 * math.pi - gap)

    boundary_dz = integrate_path(f, keyhole, "dz").value
    area_dzbar = integrate_area(wirtinger_dzbar(f), slit).value
    boundary_dzbar = integrate_path(f, keyhole, "dzbar").value
    area_dz = integrate_area(wirtinger_dz(f), slit).value
    return [
        VerificationReport.build("keyhole_log_ratio_dz", boundary_dz, area_dzbar, tol,
                                 {"keyhole_dz": boundary_dz, "area_dzbar_derivative": area_dzbar}),
        VerificationReport.build("keyhole_log_ratio_dzbar", boundary_dzbar, -area_dz, tol,
                                 {"keyhole_dzbar": boundary_dzbar, "area_dz_derivative": area_dz}),
    ]


def _log_limit_reports(a: float, gap: float, schedule: ExcisionSpec, tol: float) -> List[VerificationReport]:
    """Outer circle plus both banks of the cut against the vanishing inner circle, as delta -> 0"""
    f = parse("log(z)")
    g = wirtinger_dz(f)
    lhs_dz: List[complex] = []
    rhs_dz: List[complex] = []
    lhs_dzbar: List[complex] = []
    rhs_dzbar: List[complex] = []
    for delta in schedule.radii():
        outer, inward, inner, outward = make_keyhole(0j, a, delta, CUT_ANGLE, gap).segments
        slit = AnnularSector(center=0j, r=delta, R=a, phi_lo=CUT_ANGLE + gap,
                             phi_hi=CUT_ANGLE + 2.0 * math.pi - gap)
        banks = [inward, outward]
        lhs_dz.append(integrate_path(f, outer, "dz").value + integrate_path(f, banks, "dz").value)
        rhs_dz.append(-integrate_path(f, inner, "dz").value)
        area = integrate_area(g, slit).value
        lhs_dzbar.append(-integrate_path(f, outer, "dzbar").value - area
                         - integrate_path(f, banks, "dzbar").value)
        rhs_dzbar.append(integrate_path(f, inner, "dzbar").value)

    radii = schedule.radii()
    reports = []
    for name, lhs_values, rhs_values in (
        ("keyhole_log_dz", lhs_dz, rhs_dz),
        ("keyhole_log_dzbar", lhs_dzbar, rhs_dzbar),
    ):
        lhs = extrapolate_limit(radii, lhs_values, schedule.q, what=name).require(name)
        rhs = extrapolate_limit(radii, rhs_values, schedule.q, what=name).require(name)
        reports.append(VerificationReport.build(
            name, lhs, rhs, tol,
            {"outer_and_banks_last": lhs_values[-1], "inner_circle_last": rhs_values[-1],
             "outer_and_banks_limit": lhs, "inner_circle_limit": rhs},
            notes=[f"cut gap {gap:g}; delta from {radii[0]:g} to {radii[-1]:g}"],
        ))
    return reports


def check_unit_circle_log(tol: float = CIRCLE_TOL) -> VerificationReport:
    """∮ log z dz over the unit circle is -2πi"""
    value = integrate_path(parse("log(z)"), FullCircle(center=0j, radius=1.0), "dz").value
    return VerificationReport.build("unit_circle_log_dz", value, -2j * math.pi, tol, {"circle_dz": value})


def check_keyhole_log_example(
    a: float = 1.0,
    schedule: ExcisionSpec = ExcisionSpec(eps0=0.2, q=0.5, steps=5),
    gap: float = 1e-6,
    tol: float = VERIFY_TOL,
) -> List[VerificationReport]:
    """Six identities of the logarithm on the keyhole plus the unit-circle check.

    The annulus and slit-annulus identities use the first radius of `schedule`; the
    log z identities are taken in the limit along the whole schedule.
    """
    delta = schedule.radii()[0]
    reports = _modulus_reports(a, delta, tol)
    reports += _ratio_reports(a, delta, gap, tol)
    reports += _log_limit_reports(a, gap, schedule, tol)
    reports.append(check_unit_circle_log())
    for report in reports:
        log.info(f"{report.name}: gap {report.abs_gap:.3e} ({report.status})")
    return reports
