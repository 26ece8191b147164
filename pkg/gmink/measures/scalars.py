"""
Scalar Gaussian functions: phi, the normal CDF Gamma and its inverse,
and the radial incomplete integral g_n(rho) = int_0^rho e^{-r^2/2} r^{n-1} dr.
"""
import math
import typing

import numpy as np
from scipy import special

from gmink.constants import SQRT_2PI
from gmink.exceptions import DomainError

ArrayLike = typing.Union[float, np.ndarray]


def phi(t: ArrayLike) -> ArrayLike:
    return np.exp(-0.5 * np.square(t)) / SQRT_2PI


def gamma_cdf(x: ArrayLike) -> ArrayLike:
    return special.ndtr(x)


def gamma_inv(y: float) -> float:
    """
    Inverse of the standard normal CDF, polished by one Newton step.
    :param y: probability in (0, 1)
    :return:
    """
    if not 0.0 < y < 1.0:
        raise DomainError(f"gamma_inv needs y in (0, 1), got {y!r}")
    x = float(special.ndtri(y))
    density = float(phi(x))
    if density > 0.0:
        x -= (float(special.ndtr(x)) - y) / density
    return x


def sphere_area(n: int) -> float:
    """
    Surface measure of S^{n-1}.
    """
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def radial_integral(n: int, rho: ArrayLike) -> ArrayLike:
    """
    g_n(rho); g_2 = 1 - e^{-rho^2/2},
    g_3 = sqrt(pi/2) erf(rho/sqrt 2) - rho e^{-rho^2/2}.
    """
    rho = np.asarray(rho, dtype=float)
    if n == 2:
        return -np.expm1(-0.5 * rho ** 2)
    scale = 2.0 ** (n / 2.0 - 1.0) * math.gamma(n / 2.0)
    return scale * special.gammainc(n / 2.0, 0.5 * rho ** 2)


def gaussian_ball_volume(n: int, radius: float) -> float:
    """
    gamma_n of the centred ball of the given radius.
    """
    return float(special.gammainc(n / 2.0, 0.5 * radius ** 2))


def ball_radius_for_volume(n: int, gamma: float) -> float:
    """
    Radius r with gamma_n(rB) = gamma.
    """
    if not 0.0 < gamma < 1.0:
        raise DomainError(f"Gaussian volume must lie in (0, 1), got {gamma!r}")
    return math.sqrt(2.0 * float(special.gammaincinv(n / 2.0, gamma)))
