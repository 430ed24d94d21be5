import random

import pytest

from residuum.geometry import circle_contour, make_keyhole, square_contour


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def unit_circle():
    return circle_contour(0j, 1.0)


@pytest.fixture
def unit_square():
    return square_contour(0j, 2.0)


@pytest.fixture
def keyhole():
    return make_keyhole(0j, 1.0, 0.2, 3.141592653589793, 0.05)
