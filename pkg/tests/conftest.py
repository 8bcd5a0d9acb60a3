import math

import pytest

from fractorus import frac_order_new

ALPHAS = [math.pi / 6, math.pi / 3, 2 * math.pi / 5, -math.pi / 4]


@pytest.fixture(params=ALPHAS, ids=["pi6", "pi3", "2pi5", "-pi4"])
def order(request):
    return frac_order_new(request.param)


@pytest.fixture
def order_pi6():
    return frac_order_new(math.pi / 6)


@pytest.fixture
def order_pi2():
    return frac_order_new(math.pi / 2)
