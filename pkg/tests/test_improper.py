import math

import pytest

from residuum.errors import EndpointSingularError, OverlappingExcisionError, ValidationFailure
from residuum.expr import parse
from residuum.improper import jump_term, vp_1d, vt_1d
from residuum.models import ExcisionSpec

INTERVALS = [(1.0, 1.0), (1.0, 2.0), (3.0, 0.5)]


@pytest.mark.parametrize("a, b", INTERVALS)
def test_total_value_of_the_logarithm(a, b):
    result = vt_1d(parse("log(z)"), -a, b, [0.0])
    assert abs(result.vt - complex(math.log(b / a), -math.pi)) <= 1e-8
    assert result.vp.is_finite
    assert abs(result.vp.value - math.log(b / a)) <= 1e-8
    assert result.vs.is_finite
    assert abs(result.vs.value + 1j * math.pi) <= 1e-8
    assert abs(result.vt_check - result.vt) <= 1e-8


@pytest.mark.parametrize("a, b", INTERVALS)
def test_total_value_of_the_inverse(a, b):
    result = vt_1d(parse("1/z"), -a, b, [0.0])
    assert abs(result.vt - (a + b) / (a * b)) <= 1e-8
    # the integral of x^-2 over [-a, b] is the negative of this total value
    assert abs(-result.vt + (a + b) / (a * b)) <= 1e-8
    assert not result.vp.is_finite
    assert result.vp.direction == -1
    assert not result.vs.is_finite
    assert result.vs.direction == 1


def test_matched_radius_identity_holds_at_every_step():
    result = vt_1d(parse("1/z"), -1.0, 2.0, [0.0])
    assert len(result.table) == 9
    scale = max(abs(row.excised) for row in result.table)
    for row in result.table:
        assert row.residual <= 1e-8 * scale


def test_regular_integrand():
    result = vt_1d(parse("z^3"), 0.0, 2.0, [])
    assert result.vt == pytest.approx(8.0)
    assert result.vp.value == pytest.approx(8.0)
    assert result.vs.value == 0
    assert vp_1d(parse("z^3"), 0.0, 2.0, []).value == pytest.approx(8.0)


def test_two_singular_points():
    F = parse("log(z) + log(z - 1)")
    result = vt_1d(F, -1.0, 2.0, [0.0, 1.0])
    assert abs(result.vt + 2j * math.pi) <= 1e-8
    assert abs(result.vp.value) <= 1e-8
    assert abs(result.vs.value + 2j * math.pi) <= 1e-8


def test_jump_terms():
    assert abs(jump_term(parse("log(z)"), 0.0).value + 1j * math.pi) <= 1e-10
    divergent = jump_term(parse("1/z"), 0.0)
    assert not divergent.is_finite
    assert divergent.direction == 1


def test_principal_value_of_the_logarithm():
    assert abs(vp_1d(parse("log(z)"), -1.0, 2.0, [0.0]).value - math.log(2)) <= 1e-8


def test_input_validation():
    with pytest.raises(ValidationFailure):
        vt_1d(parse("log(z)"), 1.0, -1.0, [0.0])
    with pytest.raises(ValidationFailure):
        vt_1d(parse("log(z)"), -1.0, 1.0, [3.0])
    with pytest.raises(EndpointSingularError):
        vt_1d(parse("1/z"), 0.0, 1.0, [])
    with pytest.raises(OverlappingExcisionError):
        vt_1d(parse("log(z)"), -1.0, 1.0, [0.0], ExcisionSpec(eps0=2.0, q=0.5, steps=4))
