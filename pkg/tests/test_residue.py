import math

import pytest

from residuum.errors import InversionMismatchError, SectorNonConvergentError
from residuum.expr import parse, translate
from residuum.geometry import SectorDecomposition
from residuum.residue import (
    default_schedule,
    residue_at_infinity,
    residue_from_sectors,
    residue_small_circle,
    sector_limits,
)

TOL = 1e-8


@pytest.mark.parametrize(
    "source, res, res_star",
    [
        ("1/z", 1, 0),
        ("exp(z)/z", 1, 0),
        ("1/conj(z)", 0, 1),
        ("conj(z)^2/z", 0, 0),
        ("(z+1)/(z*(z-0.5))", -2, 0),
        ("z^2", 0, 0),
    ],
)
def test_small_circle_residue_pairs(source, res, res_star):
    pair = residue_small_circle(parse(source), 0j, default_schedule(0j, [0.5]))
    assert abs(pair.res - res) <= 1e-6
    assert abs(pair.res_star - res_star) <= 1e-6
    assert pair.method == "small_circle"


def test_default_schedule_scales_with_neighbours():
    assert default_schedule(0j).eps0 == pytest.approx(0.1)
    assert default_schedule(0j, [0.5, 2.0]).eps0 == pytest.approx(0.05)
    assert default_schedule(0j, [0j]).eps0 == pytest.approx(0.1)


def test_residue_is_linear():
    f = residue_small_circle(parse("1/z"), 0j).res
    g = residue_small_circle(parse("exp(z)/z^2"), 0j).res
    combined = residue_small_circle(parse("2/z + 3*exp(z)/z^2"), 0j).res
    assert abs(combined - (2 * f + 3 * g)) <= TOL
    assert abs(combined - 5) <= TOL


def test_residue_is_translation_covariant():
    shift = 0.3 + 0.2j
    base = residue_small_circle(parse("exp(z)/z"), 0j)
    moved = residue_small_circle(translate(parse("exp(z)/z"), shift), shift)
    assert abs(moved.res - base.res) <= TOL
    assert abs(moved.res_star - base.res_star) <= TOL


@pytest.mark.parametrize("k", [1, 2, 4])
def test_sector_residue_agrees_with_small_circle(k):
    f = parse("exp(z)/z")
    limits = sector_limits(f, SectorDecomposition.uniform(k, start=0.3), strict=True)
    assert limits.all_converged()
    assert len(limits.limits) == k
    pair = residue_from_sectors(limits)
    assert abs(pair.res - residue_small_circle(f, 0j).res) <= 1e-6
    assert pair.method == "sectors"
    # -conj(z) exp(z) / z turns with the ray
    assert pair.res_star is None
    assert all(limit.a_zbar is None for limit in limits.limits)


@pytest.mark.parametrize("k", [1, 2, 4])
def test_sector_conjugate_residue_agrees_with_small_circle(k):
    f = parse("conj(z)^2/z")
    pair = residue_from_sectors(sector_limits(f, SectorDecomposition.uniform(k, start=0.3), strict=True))
    circle = residue_small_circle(f, 0j)
    assert pair.res_star is not None
    assert abs(pair.res_star - circle.res_star) <= 1e-6
    assert abs(pair.res_star) <= 1e-6
    assert abs(pair.res - circle.res) <= 1e-6


def test_ray_dependent_conjugate_limit_is_not_reported():
    d = SectorDecomposition(angles=[0.0, math.pi])
    limits = sector_limits(parse("1/z"), d, strict=True)
    assert limits.all_converged()
    assert [limit.a_zbar for limit in limits.limits] == [None, None]
    pair = residue_from_sectors(limits)
    assert pair.res == pytest.approx(1)
    assert pair.res_star is None


def test_slowly_vanishing_sector_limit():
    limits = sector_limits(parse("log(z)"), SectorDecomposition.whole_plane(), strict=True)
    (limit,) = limits.limits
    assert abs(limit.a_z) <= 1e-9
    assert limit.error_estimate <= 1e-9
    pair = residue_from_sectors(limits)
    assert abs(pair.res) <= 1e-9


def test_sector_limits_off_the_origin():
    d = SectorDecomposition.uniform(4, center=0.5 + 0j, start=0.3)
    pair = residue_from_sectors(sector_limits(parse("(z+1)/(z*(z-0.5))"), d, strict=True))
    assert abs(pair.res - 3) <= 1e-6


def test_sector_limits_at_infinity():
    limits = sector_limits(parse("1/z"), SectorDecomposition.whole_plane(), at="infinity")
    pair = residue_from_sectors(limits)
    assert pair.res == pytest.approx(-1)
    assert pair.method == "sectors_at_infinity"


def test_sector_without_limit():
    d = SectorDecomposition.uniform(2)
    with pytest.raises(SectorNonConvergentError):
        sector_limits(parse("1/z^2"), d, strict=True)
    relaxed = sector_limits(parse("1/z^2"), d)
    assert not relaxed.all_converged()
    with pytest.raises(SectorNonConvergentError):
        residue_from_sectors(relaxed)


@pytest.mark.parametrize(
    "source, points, expected",
    [
        ("1/(z-0.3)", [0.3], -1),
        ("(z+1)/(z*(z-0.5))", [0, 0.5], -1),
        ("1/((z-0.5)*(z+0.5*i)*(z+0.4))", [0.5, -0.5j, -0.4], 0),
    ],
)
def test_residue_at_infinity_routes_agree(source, points, expected):
    pair = residue_at_infinity(parse(source), points)
    assert abs(pair.res - expected) <= 1e-6
    assert abs(pair.large_circle_res - pair.res) <= 1e-6
    assert pair.discrepancy <= 1e-6
    assert pair.inversion_res is not None
    assert abs(pair.inversion_res - pair.res) <= 1e-6


def test_missing_singularity_is_detected():
    with pytest.raises(InversionMismatchError):
        residue_at_infinity(parse("1/((z-0.3)*(z+0.4))"), [0.3])


def test_large_circle_without_conjugate_limit():
    # ∮ z dz̄ = -2πi R² has no limit, the classical route still does
    pair = residue_at_infinity(parse("z"), [])
    assert pair.res == 0
    assert pair.res_star == 0
    assert pair.large_circle_res is not None
    assert abs(pair.large_circle_res) <= 1e-6
    assert pair.large_circle_res_star is None
    assert pair.discrepancy <= 1e-6


def test_residue_at_infinity_of_conjugate_pole_pair():
    pair = residue_at_infinity(parse("1/(z^2+1)"), [1j, -1j])
    assert abs(pair.res) <= 1e-6
    assert abs(pair.res_star) <= 1e-6
    assert abs(pair.large_circle_res) <= 1e-6
    assert abs(pair.large_circle_res_star) <= 1e-6
