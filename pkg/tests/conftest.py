import numpy as np
import pytest

from twistedtori import circle, offset_circle, radial_cosine


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def origin_circle():
    return circle(1.0)


@pytest.fixture
def chekanov():
    return offset_circle(2.0, 1.0)


@pytest.fixture
def half_offset():
    return offset_circle(0.5, 1.0)


@pytest.fixture
def star():
    return radial_cosine(0.2)
