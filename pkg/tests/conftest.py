import math

import pytest

from gmink.geometry import build_grid
from gmink.isotropic import solve_constant_roots

# 2 pi * 0.04: constant level of f = 0.04 on S^1
DISK_LEVEL = 2.0 * math.pi * 0.04


@pytest.fixture(scope="session")
def circle():
    return build_grid(2, 256)


@pytest.fixture(scope="session")
def coarse_circle():
    return build_grid(2, 64)


@pytest.fixture(scope="session")
def sphere():
    return build_grid(3, (16, 32))


@pytest.fixture(scope="session")
def fine_sphere():
    return build_grid(3, (32, 64))


@pytest.fixture(scope="session")
def disk_roots():
    return solve_constant_roots(2, 1.0, DISK_LEVEL)
