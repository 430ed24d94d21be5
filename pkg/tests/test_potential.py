import cmath
import math

import numpy as np
import pytest

from residuum.errors import OpenContourError
from residuum.geometry import Annulus, Arc, Contour, FullCircle, Segment, polygon_contour
from residuum.potential import potential_2d, potential_3d

GRID = np.linspace(-2.0, 2.0, 41)
POINTS = [complex(x, y) for x in GRID for y in GRID]
EXACT = 1e-10


def _check_dichotomy(contour, classify):
    for p in POINTS:
        potential = potential_2d(contour, p)
        expected_kind = classify(p)
        if potential.kind == "BoundaryInteriorArc":
            assert expected_kind == "Boundary", p
            continue
        assert potential.kind == expected_kind, p
        expected = 2j * math.pi if expected_kind == "Interior" else 0j
        assert abs(potential.value - expected) <= EXACT


def test_circle_dichotomy(unit_circle):
    def classify(p):
        if abs(abs(p) - 1) < 1e-8:
            return "Boundary"
        return "Interior" if abs(p) < 1 else "Exterior"

    _check_dichotomy(unit_circle, classify)


def test_square_dichotomy(unit_square):
    def classify(p):
        size = max(abs(p.real), abs(p.imag))
        if abs(size - 1) < 1e-8:
            return "Boundary"
        return "Interior" if size < 1 else "Exterior"

    _check_dichotomy(unit_square, classify)


def test_keyhole_dichotomy(keyhole):
    def classify(p):
        r = abs(p)
        away_from_cut = math.pi - abs(cmath.phase(p)) > 0.05 if p != 0 else False
        if away_from_cut and (abs(r - 1) < 1e-8 or abs(r - 0.2) < 1e-8):
            return "Boundary"
        return "Interior" if away_from_cut and 0.2 < r < 1 else "Exterior"

    _check_dichotomy(keyhole, classify)


def test_boundary_values(unit_circle, unit_square):
    assert potential_2d(unit_circle, 1).value == pytest.approx(1j * math.pi)
    corner = potential_2d(unit_square, 1 + 1j)
    assert corner.value == pytest.approx(0.5j * math.pi)
    assert corner.interior_angle == pytest.approx(0.5 * math.pi)
    exterior = potential_2d(unit_square, 1 + 1j, convention="exterior")
    assert exterior.kind == "BoundaryExteriorArc"
    assert exterior.value == pytest.approx(1.5j * math.pi)


def test_multiply_connected_domain():
    loops = Annulus(r=0.2, R=1).boundary()
    assert potential_2d(loops, 0.5).value == pytest.approx(2j * math.pi)
    assert potential_2d(loops, 0.1).kind == "Exterior"
    assert potential_2d(loops, 0.2j).value == pytest.approx(1j * math.pi)


def test_winding_outside_simple_scope():
    twice = Contour(segments=[FullCircle(center=0, radius=1), FullCircle(center=0, radius=1)])
    potential = potential_2d(twice, 0.3)
    assert potential.winding == 2
    assert potential.outside_simple_scope
    assert potential.value == pytest.approx(4j * math.pi)


def test_doubled_potential(unit_circle):
    assert potential_3d(unit_circle, 0) == pytest.approx(4j * math.pi)
    assert potential_3d(unit_circle, -1) == pytest.approx(2j * math.pi)


def test_open_contour_is_rejected():
    path = Contour(segments=[Segment(a=0, b=1)], closed=False)
    with pytest.raises(OpenContourError):
        potential_2d(path, 0.5j)


@pytest.mark.parametrize("p", [0j, 0.3 - 0.2j, 2 + 1j, -1.5j])
def test_reversal_negates_the_potential(unit_square, p):
    forward = potential_2d(unit_square, p)
    backward = potential_2d(unit_square.reversed(), p)
    assert backward.value == -forward.value
    assert backward.winding == -forward.winding


def test_potential_ignores_subdivision(unit_square, unit_circle):
    corners = [-1 - 1j, 1 - 1j, 1 + 1j, -1 + 1j]
    halves = []
    for a, b in zip(corners, corners[1:] + corners[:1]):
        halves.extend([a, 0.5 * (a + b)])
    split_square = polygon_contour(halves)
    quarters = Contour(segments=[Arc(center=0, radius=1, theta_start=k * math.pi / 2, theta_end=(k + 1) * math.pi / 2)
                                 for k in range(4)])
    for whole, split in ((unit_square, split_square), (unit_circle, quarters)):
        for p in [0j, 0.3 + 0.4j, -0.9 + 0.1j, 1.5 - 0.2j, 3j, -2 - 2j]:
            assert abs(potential_2d(split, p).value - potential_2d(whole, p).value) <= EXACT, p
