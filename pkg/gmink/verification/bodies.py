"""
Seeded generators of o-symmetric convex bodies and even densities.
"""
import logging
import typing

import numpy as np
from scipy.special import factorial
from scipy.special import lpmv

from gmink.constants import REJECTION_CAP
from gmink.exceptions import DomainError
from gmink.exceptions import RejectionCapExceeded
from gmink.geometry import convexity_check
from gmink.geometry import default_grid
from gmink.geometry import support_field
from gmink.geometry import symmetrize_even
from gmink.types import DirectionGrid
from gmink.types import MeasureDensity
from gmink.types import SupportField

logger = logging.getLogger(__name__)

EVEN_DEGREES = (2, 4, 6)
RADIUS_RANGE = (0.5, 2.5)


def even_harmonic_basis(
    grid: DirectionGrid, degrees: typing.Sequence[int] = EVEN_DEGREES
) -> typing.Tuple[np.ndarray, np.ndarray]:
    """
    Real harmonics of the given even degrees sampled on the grid.

    S^1: cos(k theta), sin(k theta). S^2: Schmidt semi-normalized
    P_l^m(cos theta) cos(m phi) and sin(m phi), m = 0..l.

    :return: basis of shape (M, K) and the degree of each column
    """
    if any(d % 2 for d in degrees):
        raise DomainError(f"degrees must be even, got {tuple(degrees)}")
    columns, column_degrees = [], []
    if grid.dim == 2:
        for k in degrees:
            columns += [np.cos(k * grid.theta), np.sin(k * grid.theta)]
            column_degrees += [k, k]
    else:
        x = np.cos(grid.theta)
        for l in degrees:
            for m in range(l + 1):
                norm = np.sqrt(
                    (1.0 if m == 0 else 2.0)
                    * factorial(l - m)
                    / factorial(l + m)
                )
                legendre = norm * lpmv(m, l, x)
                columns.append(legendre * np.cos(m * grid.phi))
                column_degrees.append(l)
                if m:
                    columns.append(legendre * np.sin(m * grid.phi))
                    column_degrees.append(l)
    return np.stack(columns, axis=1), np.array(column_degrees)


def even_perturbation(
    grid: DirectionGrid, rng: np.random.Generator
) -> np.ndarray:
    """
    Random even field sum_j c_j Y_j / (l_j (l_j + n - 2)), c_j ~ N(0, 1).

    The decay keeps Hess h + h I of order one for unit amplitudes.
    """
    basis, degrees = even_harmonic_basis(grid)
    n = grid.dim
    coefficients = rng.standard_normal(degrees.size)
    scale = 1.0 / (degrees * (degrees + n - 2))
    return symmetrize_even(basis @ (coefficients * scale), grid)


def random_even_body(
    n: int,
    seed: int,
    amplitude: float = 0.1,
    grid: DirectionGrid = None,
    p: float = 1.0,
) -> SupportField:
    """
    h = r0 (1 + amplitude * even low-degree perturbation), r0 ~ U[0.5, 2.5],
    redrawn until strictly convex.

    :param n: ambient dimension
    :param seed: same seed, same body
    :param amplitude: 0 gives the ball of radius r0
    :param grid: defaults to the standard grid of dimension n
    :param p: carried on the returned field
    :raises RejectionCapExceeded: no convex draw in 1000 attempts
    """
    grid = grid or default_grid(n)
    if grid.dim != n:
        raise DomainError(f"grid lives on S^{grid.dim - 1}, not S^{n - 1}")
    if amplitude < 0:
        raise DomainError(f"amplitude must be non-negative, got {amplitude!r}")
    rng = np.random.default_rng(seed)
    r0 = rng.uniform(*RADIUS_RANGE)
    if amplitude == 0:
        return support_field(grid, r0, p)

    for attempt in range(REJECTION_CAP):
        values = r0 * (1.0 + amplitude * even_perturbation(grid, rng))
        if np.all(values > 0.0):
            h = support_field(grid, values, p)
            if convexity_check(h).is_convex:
                if attempt:
                    logger.debug(
                        f"Seed {seed}: convex after {attempt + 1} draws"
                    )
                return h
    raise RejectionCapExceeded(
        f"no convex body after {REJECTION_CAP} draws "
        f"(seed={seed}, amplitude={amplitude})"
    )


def random_even_density(
    grid: DirectionGrid, seed: int, mass: float, amplitude: float = 0.5
) -> MeasureDensity:
    """
    Positive even density with total mass `mass`:
    proportional to 1 + amplitude * q with q even and max |q| = 1.

    :param amplitude: in [0, 1)
    """
    if mass <= 0:
        raise DomainError(f"mass must be positive, got {mass!r}")
    if not 0.0 <= amplitude < 1.0:
        raise DomainError(f"amplitude must lie in [0, 1), got {amplitude!r}")
    rng = np.random.default_rng(seed)
    q = even_perturbation(grid, rng)
    shape = 1.0 + amplitude * q / np.max(np.abs(q))
    values = mass * shape / grid.integrate(shape)
    return MeasureDensity.from_values(grid, values)
