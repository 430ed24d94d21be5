"""Named verification checks and the suites that group them."""

import asyncio
import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

from ..defaults import VERIFY_TOL
from ..errors import ConfigError
from ..expr import parse
from ..geometry.sectors import SectorDecomposition
from ..improper import vt_1d
from ..models.results import ExcisionSpec, VerificationReport
from ..residue import (default_schedule, default_sector_schedule, residue_at_infinity, residue_from_sectors,
                       residue_small_circle, sector_limits)
from .catalog import CATALOG, UNIT_DISC, CatalogEntry
from .keyhole import check_keyhole_log_example
from .lemmas import check_lemma_large_circle, check_lemma_small_circle, check_lemma_vt_sector
from .planar import check_boundary_singularity_identity, check_planar_residue_identity
from .vector_field import check_vector_field_residues

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class NamedCheck:
    name: str
    suite: str
    run: Callable[[], List[VerificationReport]]


def _single(check: Callable[[], VerificationReport]) -> Callable[[], List[VerificationReport]]:
    return lambda: [check()]


def _planar(entry: CatalogEntry) -> Callable[[], List[VerificationReport]]:
    return _single(lambda: check_planar_residue_identity(
        entry.parsed(), entry.loops(), entry.domain, entry.singular_points, VERIFY_TOL, name=f"planar:{entry.name}"))


def _boundary(expression: str, interior: Sequence[complex], on_contour: Sequence[complex], label: str):
    return _single(lambda: check_boundary_singularity_identity(
        parse(expression), UNIT_DISC.boundary(), UNIT_DISC, interior, on_contour, VERIFY_TOL, name=f"boundary:{label}"))


def _at(z: complex) -> str:
    return f"{z.real:g},{z.imag:g}"


def sector_residue_report(expression: str, z_N: complex, k: int, others: Sequence[complex] = (),
                          tol: float = VERIFY_TOL) -> VerificationReport:
    """Residue from K uniform sector limits against the small-circle residue"""
    f = parse(expression)
    d = SectorDecomposition.uniform(k, center=z_N, start=0.3)
    sectors = residue_from_sectors(sector_limits(f, d, radii=default_sector_schedule(z_N, others), strict=True))
    circle = residue_small_circle(f, z_N, default_schedule(z_N, others))
    details = {"circle_res_star": circle.res_star}
    notes, companions = [], []
    if sectors.res_star is None:
        notes.append("conjugate sector limits depend on the ray; Res* compared on circles only")
    else:
        details["sector_res_star"] = sectors.res_star
        companions.append((sectors.res_star, circle.res_star))
    return VerificationReport.build(f"sectors:{expression}@{_at(z_N)}:K={k}", sectors.res, circle.res, tol,
                                    details, notes=notes, companions=companions)


def _sectors(expression: str, z_N: complex, k: int, others: Sequence[complex] = ()):
    return _single(lambda: sector_residue_report(expression, z_N, k, others))


def infinity_report(entry: CatalogEntry, tol: float = VERIFY_TOL) -> VerificationReport:
    """Finite-sum residue at infinity against the large circle, or the inversion when the circle has no limit"""
    name = f"infinity:{entry.name}"
    pair = residue_at_infinity(entry.parsed(), entry.singular_points)
    details = {"res_star": pair.res_star}
    if pair.inversion_res is not None:
        details["inversion_res"] = pair.inversion_res
    notes, companions = [], []
    if pair.large_circle_res_star is not None:
        details["large_circle_res_star"] = pair.large_circle_res_star
        companions.append((pair.res_star, pair.large_circle_res_star))
    else:
        notes.append("large-circle conjugate residue has no limit")
    reference = pair.large_circle_res
    if reference is None:
        notes.append("large-circle residue has no limit; compared with the inversion")
        reference = pair.inversion_res
    if reference is None:
        return VerificationReport.not_applicable(name, tol, "neither the large circle nor the inversion converged",
                                                 details)
    return VerificationReport.build(name, pair.res, reference, tol, details, notes=notes, companions=companions)


def improper_report(kind: str, a: float, b: float, tol: float = 1e-8) -> VerificationReport:
    """vt of the logarithm (ln(b/a) - iπ) or of 1/z ((a + b)/(ab)) over [-a, b]"""
    if kind == "log":
        result = vt_1d(parse("log(z)"), -a, b, [0.0])
        expected = complex(math.log(b / a), -math.pi)
        details = {"vp": result.vp.value}
        companions = [(result.vp.value, complex(math.log(b / a)))]
    else:
        result = vt_1d(parse("1/z"), -a, b, [0.0])
        expected = complex((a + b) / (a * b))
        details = {"vp_direction": result.vp.direction, "vs_direction": result.vs.direction,
                   "integral_of_inverse_square": -result.vt}
        companions = [(result.vp.direction, -1 + 0j), (result.vs.direction, 1 + 0j)]
    details["vt_check"] = result.vt_check
    return VerificationReport.build(f"improper:{kind}:a={a:g},b={b:g}", result.vt, expected, tol, details,
                                    companions=companions)


def _improper(kind: str, a: float, b: float):
    return _single(lambda: improper_report(kind, a, b))


HALF_PLANE = SectorDecomposition(center=0j, angles=[-math.pi, 0.0])
LOG_SCHEDULE = ExcisionSpec(eps0=0.1, q=0.1, steps=12)
IMPROPER_INTERVALS = [(1.0, 1.0), (1.0, 2.0), (3.0, 0.5)]

CHECKS: List[NamedCheck] = (
    [NamedCheck(f"planar:{entry.name}", "planar", _planar(entry)) for entry in CATALOG]
    + [
        NamedCheck("boundary:simple_pole", "boundary", _boundary("1/(z-1)", [], [1.0], "simple_pole")),
        NamedCheck("boundary:partial_fractions", "boundary",
                   _boundary("1/((z-1)*(z+2))", [], [1.0], "partial_fractions")),
        NamedCheck("boundary:interior_only", "boundary", _boundary("1/z", [0j], [], "interior_only")),
    ]
    + [
        NamedCheck(f"sectors:{expression}@{_at(z_N)}:K={k}", "sectors", _sectors(expression, z_N, k, others))
        for expression, z_N, others in (
            ("1/z", 0j, ()),
            ("exp(z)/z", 0j, ()),
            ("(z+1)/(z*(z-0.5))", 0j, (0.5,)),
            ("(z+1)/(z*(z-0.5))", 0.5 + 0j, (0j,)),
            ("conj(z)^2/z", 0j, ()),
        )
        for k in (1, 2, 4)
    ]
    + [
        NamedCheck(f"infinity:{entry.name}", "infinity", _single(lambda entry=entry: infinity_report(entry)))
        for entry in CATALOG
        if entry.name in ("pole_at_origin", "shifted_pole", "two_poles", "three_poles")
    ]
    + [
        NamedCheck("vector_field:holomorphic_component", "vector_field",
                   _single(lambda: check_vector_field_residues(parse("1/z"), parse("0"), 0j,
                                                               name="vector_field:holomorphic_component"))),
        NamedCheck("vector_field:conjugate_component", "vector_field",
                   _single(lambda: check_vector_field_residues(parse("0"), parse("1/conj(z)"), 0j,
                                                               name="vector_field:conjugate_component"))),
        NamedCheck("vector_field:both_components", "vector_field",
                   _single(lambda: check_vector_field_residues(parse("1/z"), parse("1/z"), 0j,
                                                               name="vector_field:both_components"))),
    ]
    + [
        NamedCheck("lemma_large_circle:simple_pole", "lemmas", _single(lambda: check_lemma_large_circle(
            parse("1/(z-(0.5+0.5*i))"), 0.5 + 0.5j, SectorDecomposition(angles=[0.3, 2.0]), [0.5 + 0.5j],
            name="lemma_large_circle:simple_pole"))),
        NamedCheck("lemma_large_circle:exp_right_half_plane", "lemmas", _single(lambda: check_lemma_large_circle(
            parse("exp(-z)/z"), 0j, SectorDecomposition(angles=[-math.pi / 2, math.pi / 2]), [0j],
            name="lemma_large_circle:exp_right_half_plane"))),
        NamedCheck("lemma_large_circle:double_pole", "lemmas", _single(lambda: check_lemma_large_circle(
            parse("1/z^2"), 0j, SectorDecomposition(angles=[0.0, math.pi]), [0j],
            name="lemma_large_circle:double_pole"))),
        NamedCheck("lemma_small_circle:simple_pole", "lemmas", _single(lambda: check_lemma_small_circle(
            parse("1/z"), 0j, SectorDecomposition(angles=[0.0, math.pi]), name="lemma_small_circle:simple_pole"))),
        NamedCheck("lemma_small_circle:regular_point", "lemmas", _single(lambda: check_lemma_small_circle(
            parse("z"), 0j, SectorDecomposition(angles=[0.0, math.pi]), name="lemma_small_circle:regular_point"))),
        NamedCheck("lemma_small_circle:log_branch_point", "lemmas", _single(lambda: check_lemma_small_circle(
            parse("log(z)"), 0j, SectorDecomposition(angles=[math.pi / 2, 3 * math.pi / 2]), LOG_SCHEDULE,
            name="lemma_small_circle:log_branch_point"))),
        NamedCheck("lemma_vt_sector:half_plane", "lemmas", _single(lambda: check_lemma_vt_sector(
            parse("1/(z^2+1)"), 0j, HALF_PLANE, sing=[1j, -1j], name="lemma_vt_sector:half_plane"))),
        NamedCheck("lemma_vt_sector:partial_fractions", "lemmas", _single(lambda: check_lemma_vt_sector(
            parse("1/((z-i)*(z+2*i))"), 0j, HALF_PLANE, sing=[1j, -2j], name="lemma_vt_sector:partial_fractions"))),
        NamedCheck("lemma_vt_sector:growing", "lemmas", _single(lambda: check_lemma_vt_sector(
            parse("z"), 0j, HALF_PLANE, name="lemma_vt_sector:growing"))),
    ]
    + [NamedCheck("keyhole:log", "keyhole", check_keyhole_log_example)]
    + [
        NamedCheck(f"improper:{kind}:a={a:g},b={b:g}", "improper", _improper(kind, a, b))
        for kind in ("log", "inverse")
        for a, b in IMPROPER_INTERVALS
    ]
)

SUITES = ("all", "planar", "boundary", "sectors", "infinity", "vector_field", "lemmas", "keyhole", "improper")


def select_checks(suite: str = "all", names: Optional[Sequence[str]] = None) -> List[NamedCheck]:
    if names:
        known = {check.name: check for check in CHECKS}
        missing = [name for name in names if name not in known]
        if missing:
            raise ConfigError(f"unknown check(s): {', '.join(missing)}", field="checks")
        return [known[name] for name in names]
    if suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; choose one of {', '.join(SUITES)}", field="suite")
    return [check for check in CHECKS if suite == "all" or check.suite == suite]


async def _run_check(check: NamedCheck) -> List[VerificationReport]:
    reports = await asyncio.to_thread(check.run)
    for report in reports:
        log.info(f"[{check.name}] {report.name}: {report.status.upper()} (gap {report.abs_gap:.3e})")
    return reports


async def run_suite(suite: str = "all", names: Optional[Sequence[str]] = None) -> List[VerificationReport]:
    """Run the selected checks concurrently; reports keep the declaration order"""
    checks = select_checks(suite, names)
    log.info(f"running {len(checks)} check(s) from suite {suite!r}")
    results = await asyncio.gather(*(_run_check(check) for check in checks))
    return [report for reports in results for report in reports]


def run_checks(suite: str = "all", names: Optional[Sequence[str]] = None) -> List[VerificationReport]:
    return asyncio.run(run_suite(suite, names))

