import math

import pytest
from pydantic import ValidationError

from residuum.errors import GeometryError, OpenContourError
from residuum.expr import parse
from residuum.geometry import (
    AnnularSector,
    Annulus,
    Arc,
    Contour,
    Disc,
    FullCircle,
    Rectangle,
    SectorDecomposition,
    Segment,
    locate_point,
    make_keyhole,
    polygon_contour,
    total_width,
)
from residuum.quad import integrate_path


def test_orientation_and_signed_area(unit_circle, unit_square):
    assert unit_circle.orientation == "ccw"
    assert unit_circle.signed_area() == pytest.approx(math.pi)
    assert unit_square.signed_area() == pytest.approx(4.0)
    assert unit_square.reversed().orientation == "cw"


def test_contour_chain_must_connect():
    with pytest.raises(ValidationError):
        Contour(segments=[Segment(a=0, b=1), Segment(a=2, b=3)])
    with pytest.raises(ValidationError):
        Contour(segments=[Segment(a=0, b=1), Segment(a=1, b=1j)])
    open_path = Contour(segments=[Segment(a=0, b=1), Segment(a=1, b=1j)], closed=False)
    with pytest.raises(OpenContourError):
        locate_point(open_path, 0.2)


def test_polygon_needs_three_vertices():
    with pytest.raises(GeometryError):
        polygon_contour([0, 1])


def test_contour_from_json_objects():
    contour = Contour.model_validate(
        {"segments": [{"kind": "circle", "center": {"re": 1, "im": 0}, "radius": 2}]})
    assert isinstance(contour.segments[0], FullCircle)
    assert locate_point(contour, 2.5).tag == "Interior"


def test_locate_interior_exterior_boundary(unit_circle):
    assert locate_point(unit_circle, 0).tag == "Interior"
    assert locate_point(unit_circle, 0).winding == 1
    assert locate_point(unit_circle, 2).tag == "Exterior"
    boundary = locate_point(unit_circle, 1j)
    assert boundary.tag == "Boundary"
    assert boundary.interior_angle == pytest.approx(math.pi)


def test_clockwise_circle_winds_negatively():
    cw = Contour(segments=[FullCircle(center=0, radius=1, orientation="cw")])
    assert locate_point(cw, 0).winding == -1


def test_corner_interior_angle(unit_square):
    corner = locate_point(unit_square, 1 + 1j)
    assert corner.tag == "Boundary"
    assert corner.interior_angle == pytest.approx(math.pi / 2)
    edge = locate_point(unit_square, 1 + 0.3j)
    assert edge.interior_angle == pytest.approx(math.pi)


def test_keyhole_layout(keyhole):
    outer, inward, inner, outward = keyhole.segments
    assert isinstance(outer, Arc) and isinstance(inner, Arc)
    assert isinstance(inward, Segment) and isinstance(outward, Segment)
    assert keyhole.orientation == "ccw"
    assert locate_point(keyhole, 0.5).tag == "Interior"
    assert locate_point(keyhole, 0.1).tag == "Exterior"
    assert locate_point(keyhole, -0.5).tag == "Exterior"
    assert locate_point(keyhole, 0.2j).tag == "Boundary"


def test_keyhole_rejects_bad_radii():
    with pytest.raises(GeometryError):
        make_keyhole(0, 1.0, 1.5, math.pi, 0.05)
    with pytest.raises(GeometryError):
        make_keyhole(0, 1.0, 0.2, math.pi, 1.0)


def test_argument_change_of_pieces():
    circle = FullCircle(center=0, radius=1)
    assert circle.argument_change(0.3) == pytest.approx(2 * math.pi)
    assert circle.argument_change(3) == pytest.approx(0, abs=1e-12)
    half = Arc(center=0, radius=1, theta_start=0, theta_end=math.pi)
    assert half.argument_change(0) == pytest.approx(math.pi)
    assert Segment(a=1, b=1j).argument_change(0) == pytest.approx(math.pi / 2)


def test_domains():
    disc = Disc(center=0.5 + 0.5j, R=1)
    assert disc.contains(0.5)
    assert not disc.contains(2)
    assert disc.distance_to_boundary(0.5 + 0.5j) == pytest.approx(1)

    ring = Annulus(r=0.2, R=1)
    outer, inner = ring.boundary()
    assert outer.orientation == "ccw" and inner.orientation == "cw"
    assert not ring.contains(0.1)
    assert ring.distance_to_boundary(0.5) == pytest.approx(0.3)

    sector = AnnularSector(r=0, R=1, phi_lo=0, phi_hi=math.pi / 2)
    assert sector.contains(0.3 + 0.3j)
    assert not sector.contains(-0.3 + 0.3j)
    assert sector.area() == pytest.approx(math.pi / 4)
    assert sector.boundary()[0].signed_area() == pytest.approx(math.pi / 4)

    rect = Rectangle(x_lo=-1, x_hi=1, y_lo=-1, y_hi=1)
    assert rect.boundary()[0].signed_area() == pytest.approx(rect.area())


@pytest.mark.parametrize(
    "make",
    [
        lambda: Disc(R=0),
        lambda: Annulus(r=1, R=0.5),
        lambda: AnnularSector(r=0, R=1, phi_lo=1, phi_hi=0),
        lambda: Rectangle(x_lo=1, x_hi=0, y_lo=0, y_hi=1),
    ],
)
def test_invalid_domains(make):
    with pytest.raises(ValidationError):
        make()


def test_sector_decomposition():
    d = SectorDecomposition.uniform(4, center=1j, start=0.3)
    assert d.count == 4
    assert d.bounds(3) == pytest.approx((0.3 + 1.5 * math.pi, 0.3 + 2 * math.pi))
    assert total_width(d) == pytest.approx(2 * math.pi)
    assert d.sector_of(1j + 1j) == 0
    assert d.sector_of(1j - 1) == 1
    assert d.translated(-1j).center == 0
    assert SectorDecomposition.whole_plane().widths() == pytest.approx([2 * math.pi])


def test_sector_angles_must_increase_within_a_turn():
    with pytest.raises(ValidationError):
        SectorDecomposition(angles=[1.0, 0.5])
    with pytest.raises(ValidationError):
        SectorDecomposition(angles=[0.0, 7.0])


@pytest.mark.parametrize("shift", [0.3 - 1.7j, 5 + 2j, -1e3 + 0j])
def test_locate_point_is_translation_invariant(keyhole, unit_square, shift):
    cases = [(keyhole, [0.5, 0.1, -0.5, 0.2j, 0.7 - 0.3j]), (unit_square, [0, 1 + 1j, 1 + 0.3j, 2j, -0.99 + 0.5j])]
    for contour, points in cases:
        moved = contour.translated(shift)
        for p in points:
            here = locate_point(contour, p)
            there = locate_point(moved, p + shift)
            assert there.tag == here.tag, p
            assert there.winding == here.winding, p
            if here.tag == "Boundary":
                assert there.interior_angle == pytest.approx(here.interior_angle), p


def test_keyhole_rays_cancel_as_the_gap_closes():
    f = parse("z^2")
    sums = []
    for gap in (0.1, 0.01, 0.001):
        _, inward, _, outward = make_keyhole(0j, 1.0, 0.2, math.pi, gap).segments
        total = integrate_path(f, inward).value + integrate_path(f, outward).value
        assert abs(total) <= 2.5 * gap
        sums.append(abs(total))
    assert sums[0] > sums[1] > sums[2]
