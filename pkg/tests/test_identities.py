import math
import time

import pytest

from residuum.errors import ConfigError, GeometryError, ValidationFailure
from residuum.expr import parse
from residuum.geometry import SectorDecomposition
from residuum.identities import (
    CATALOG,
    CHECKS,
    check_boundary_singularity_identity,
    check_keyhole_log_example,
    check_lemma_large_circle,
    check_lemma_small_circle,
    check_lemma_vt_sector,
    check_planar_residue_identity,
    check_unit_circle_log,
    check_vector_field_residues,
    classify_analyticity,
    run_checks,
    select_checks,
)
from residuum.identities.catalog import UNIT_DISC, catalog_entry
from residuum.identities.suite import HALF_PLANE, improper_report

TOL = 1e-6


def test_catalog_is_fixed():
    assert len(CATALOG) == 12
    assert len({entry.name for entry in CATALOG}) == 12
    assert sum(entry.zbar_dependent for entry in CATALOG) >= 3
    with pytest.raises(KeyError):
        catalog_entry("missing")


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.name)
def test_planar_identity_over_catalog(entry):
    report = check_planar_residue_identity(entry.parsed(), entry.loops(), entry.domain, entry.singular_points, TOL)
    assert report.status == "pass", report.model_dump()
    assert report.abs_gap <= TOL


def test_planar_identity_values():
    report = check_planar_residue_identity(parse("1/z"), UNIT_DISC.boundary(), UNIT_DISC, [0j])
    assert abs(report.lhs - 2j * math.pi) <= TOL
    assert abs(report.rhs - 2j * math.pi) <= TOL
    assert report.detail("potential_0") == pytest.approx(2j * math.pi)


def test_planar_identity_doubled_form():
    entry = catalog_entry("two_poles")
    single = check_planar_residue_identity(entry.parsed(), entry.loops(), entry.domain, entry.singular_points)
    doubled = check_planar_residue_identity(entry.parsed(), entry.loops(), entry.domain, entry.singular_points,
                                            doubled=True)
    assert doubled.passed
    assert abs(doubled.lhs - 2 * single.lhs) <= 1e-9
    assert abs(doubled.rhs - 2 * single.rhs) <= 1e-9
    assert doubled.tolerance == pytest.approx(2 * single.tolerance)


def test_planar_identity_rejects_points_on_the_contour():
    with pytest.raises(GeometryError):
        check_planar_residue_identity(parse("1/(z-1)"), UNIT_DISC.boundary(), UNIT_DISC, [1.0])


@pytest.mark.parametrize(
    "source, expected",
    [("1/(z-1)", 1j * math.pi), ("1/((z-1)*(z+2))", 1j * math.pi / 3)],
)
def test_boundary_singularity_identity(source, expected):
    report = check_boundary_singularity_identity(parse(source), UNIT_DISC.boundary(), UNIT_DISC, [], [1.0])
    assert report.passed, report.model_dump()
    assert abs(report.rhs - expected) <= TOL
    assert report.detail("potential_boundary_0") == pytest.approx(1j * math.pi)
    assert abs(report.detail("vt_interior_arc")) <= TOL
    # holomorphic f: no conjugate residues, and -v.p.∮ f dz̄ cancels the ∂f/∂z area term
    assert abs(report.detail("rhs_star")) <= TOL
    assert abs(report.detail("lhs_star")) <= TOL
    assert abs(report.detail("vp_area_dz_derivative") - report.detail("vp_boundary_dzbar")) <= TOL


def test_boundary_point_must_lie_on_the_contour():
    with pytest.raises(GeometryError):
        check_boundary_singularity_identity(parse("1/(z-3)"), UNIT_DISC.boundary(), UNIT_DISC, [], [3.0])


@pytest.mark.parametrize(
    "name, kind, vanishing",
    [
        ("square", "RegularAnalytic", "dzbar"),
        ("pole_at_origin", "SingularAnalytic", "dzbar"),
        ("conjugate", "RegularAnalytic", "dz"),
        ("modulus_squared", "NonAnalytic", None),
    ],
)
def test_classify_analyticity(name, kind, vanishing):
    entry = catalog_entry(name)
    report = classify_analyticity(entry.parsed(), entry.domain, singular_points=entry.singular_points)
    assert report.kind == kind
    assert report.vanishing_derivative == vanishing
    if kind == "NonAnalytic":
        assert len(report.witness_points) == 3
        assert report.max_abs_dzbar > 0.1


def test_classify_needs_a_fine_grid():
    with pytest.raises(ValidationFailure):
        classify_analyticity(parse("z"), UNIT_DISC, grid_n=8)


@pytest.mark.parametrize(
    "P, Q, res_f, res_star_f",
    [("1/z", "0", 1, 0), ("0", "1/conj(z)", 1, 0), ("1/z", "1/z", 1, 1)],
)
def test_vector_field_residues(P, Q, res_f, res_star_f):
    report = check_vector_field_residues(parse(P), parse(Q), 0j)
    assert report.passed, report.model_dump()
    assert abs(report.detail("res_F") - res_f) <= TOL
    assert abs(report.detail("res_star_F") - res_star_f) <= TOL


def test_lemma_large_circle():
    report = check_lemma_large_circle(parse("1/(z-(0.5+0.5*i))"), 0.5 + 0.5j, SectorDecomposition(angles=[0.3, 2.0]),
                                      [0.5 + 0.5j])
    assert report.passed, report.model_dump()
    assert report.detail("A_inf_1") == pytest.approx(1.0)


def test_lemma_small_circle_single_sector():
    report = check_lemma_small_circle(parse("exp(z)/z"), 0j, SectorDecomposition.whole_plane())
    assert report.passed, report.model_dump()
    assert abs(report.lhs) == 0


def test_lemma_small_circle_not_applicable_without_a_limit():
    report = check_lemma_small_circle(parse("1/z^2"), 0j, SectorDecomposition(angles=[0.0, math.pi]))
    assert report.status == "not_applicable"
    assert not report.passed
    assert report.notes


def test_lemmas_reject_more_than_two_sectors():
    with pytest.raises(ValidationFailure):
        check_lemma_small_circle(parse("1/z"), 0j, SectorDecomposition.uniform(3))


def test_wedge_lemma_on_the_half_plane():
    report = check_lemma_vt_sector(parse("1/(z^2+1)"), 0j, HALF_PLANE, sing=[1j, -1j])
    assert report.passed, report.model_dump()
    assert abs(report.rhs - math.pi) <= 1e-6
    assert abs(report.detail("closing_arc")) <= 1e-5
    assert abs(report.detail("lhs_star") - report.detail("rhs_star")) <= 1e-6
    assert abs(report.detail("rhs_star")) <= 1e-6
    assert abs(report.detail("closing_arc_star")) <= 1e-5


def test_keyhole_log_example():
    reports = check_keyhole_log_example()
    assert len(reports) == 7
    for report in reports:
        assert report.passed, report.model_dump()


def test_unit_circle_log():
    report = check_unit_circle_log()
    assert abs(report.lhs + 2j * math.pi) <= 1e-8
    assert report.passed


def test_improper_reports():
    assert improper_report("log", 1.0, 2.0).passed
    report = improper_report("inverse", 3.0, 0.5)
    assert report.passed
    assert abs(report.detail("integral_of_inverse_square") + (3.5 / 1.5)) <= 1e-8


def test_check_names_are_unique():
    names = [check.name for check in CHECKS]
    assert len(names) == len(set(names))


def test_select_checks():
    assert [c.suite for c in select_checks("boundary")] == ["boundary"] * 3
    picked = select_checks(names=["keyhole:log", "boundary:simple_pole"])
    assert [c.name for c in picked] == ["keyhole:log", "boundary:simple_pole"]
    with pytest.raises(ConfigError):
        select_checks(names=["no_such_check"])
    with pytest.raises(ConfigError):
        select_checks("nonsense")


def test_run_checks_keeps_declaration_order():
    reports = run_checks("improper")
    assert [r.name for r in reports] == [c.name for c in select_checks("improper")]
    assert all(r.status == "pass" for r in reports)


def test_planar_catalog_runs_within_budget():
    start = time.perf_counter()
    reports = run_checks("planar")
    elapsed = time.perf_counter() - start
    assert len(reports) == len(CATALOG)
    assert all(r.status == "pass" for r in reports), [r.name for r in reports if r.status != "pass"]
    assert elapsed < 60.0


@pytest.mark.parametrize("suite", ["sectors", "infinity"])
def test_residue_suites_pass(suite):
    reports = run_checks(suite)
    assert reports
    assert all(r.status != "fail" for r in reports), [r.model_dump() for r in reports if r.status == "fail"]
