import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from diskcover.exceptions import DomainError, InvalidPolygonError
from diskcover.geom import (
    ConvexPolygon,
    Covering,
    Disk,
    Point,
    Rect,
    central_angle,
    chord_triangle_area,
    point_in_disk,
    polygon_area,
    regular_polygon_area,
    shared_chord,
)


def hexagon():
    t = np.arange(6) * math.pi / 3
    return np.column_stack([np.cos(t), np.sin(t)])


@pytest.mark.parametrize(
    "verts, expected",
    [
        ([(0, 0), (1, 0), (1, 1), (0, 1)], 1.0),
        ([(0, 0), (2, 0), (0, 2)], 2.0),
        (hexagon(), 3 * math.sqrt(3) / 2),
    ],
)
def test_polygon_area(verts, expected):
    assert polygon_area(ConvexPolygon(verts)) == pytest.approx(expected, abs=1e-12)


def test_polygon_rejects_clockwise():
    with pytest.raises(InvalidPolygonError):
        ConvexPolygon([(0, 0), (0, 1), (1, 1), (1, 0)])


def test_regular_polygon_area(mp_consts):
    assert regular_polygon_area(4) == pytest.approx(2.0, abs=1e-15)
    assert regular_polygon_area(6) == pytest.approx(float(mp_consts["K6"]), abs=1e-15)
    assert regular_polygon_area(5) == pytest.approx(float(mp_consts["K5"]), abs=1e-15)
    with pytest.raises(DomainError):
        regular_polygon_area(2)


def test_chord_triangle_area():
    assert chord_triangle_area(2.0) == 0.0
    assert chord_triangle_area(math.sqrt(2)) == pytest.approx(0.5, abs=1e-15)
    assert chord_triangle_area(1.0) == pytest.approx(math.sqrt(3) / 4, abs=1e-15)
    with pytest.raises(DomainError):
        chord_triangle_area(0.0)
    with pytest.raises(DomainError):
        chord_triangle_area(2.5)


def test_central_angle():
    assert central_angle(2.0) == pytest.approx(math.pi, abs=1e-15)
    assert central_angle(math.sqrt(2)) == pytest.approx(math.pi / 2, abs=1e-15)
    assert central_angle(1.0) == pytest.approx(math.pi / 3, abs=1e-15)
    assert central_angle(0.0) == 0.0


def test_shared_chord():
    assert shared_chord(2.0, 2.0) == pytest.approx(0.0, abs=1e-12)
    assert shared_chord(math.sqrt(3), math.sqrt(3)) == pytest.approx(1.0, abs=1e-12)
    assert shared_chord(math.sqrt(2), math.sqrt(2)) == pytest.approx(math.sqrt(2), abs=1e-12)


def test_point_in_disk():
    d = Disk(Point(0.0, 0.0))
    assert point_in_disk((0.0, 0.0), d)
    assert point_in_disk((1.0, 0.0), d)
    assert not point_in_disk((0.8, 0.8), d)


@given(st.floats(0.01, 2.0))
def test_chord_triangle_is_half_base_times_height(ell):
    height = math.sqrt(max(0.0, 1 - ell * ell / 4))
    assert chord_triangle_area(ell) == pytest.approx(ell * height / 2, abs=1e-12)


@given(st.floats(0.01, 2.0), st.floats(0.01, 2.0))
def test_shared_chord_is_symmetric(a, b):
    assert shared_chord(a, b) == pytest.approx(shared_chord(b, a), abs=1e-12)


def test_rect_and_covering_validation():
    with pytest.raises(DomainError):
        Rect(0.0, 1.0)
    with pytest.raises(DomainError):
        Covering(Rect(1, 1), np.zeros((2, 3)))


def test_scaled_keeps_center():
    c = Covering(Rect(2.0, 1.0), [[1.0, 0.5]])
    s = c.scaled(0.5)
    assert s.rect == Rect(1.0, 0.5)
    np.testing.assert_allclose(s.centers, [[0.5, 0.25]])
    w = c.with_dims(4.0, 1.0)
    np.testing.assert_allclose(w.centers, [[2.0, 0.5]])
