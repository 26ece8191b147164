import logging
import math
import typing

import numpy as np

from .scalars import ball_radius_for_volume
from .scalars import gamma_inv
from .scalars import phi
from gmink.constants import SQRT_2PI
from gmink.exceptions import DomainError
from gmink.geometry import radial_at_nodes
from gmink.geometry import require_convex
from gmink.types import MeasureDensity
from gmink.types import SupportField

logger = logging.getLogger(__name__)

TestFunction = typing.Callable[[np.ndarray], np.ndarray]


def surface_measure_density(h: SupportField) -> MeasureDensity:
    """
    Density of S_{p, gamma_n, K}:
    (2 pi)^{-n/2} h^{1-p} exp(-(h^2 + |grad h|^2)/2) det(Hess h + h I).
    """
    geometry = require_convex(h, "surface_measure_density")
    values = h.values
    n = h.grid.dim
    density = (
        values ** (1.0 - h.p)
        * np.exp(-0.5 * (values ** 2 + geometry.gradient_sq))
        * geometry.gauss_map_dets
        / SQRT_2PI ** n
    )
    return MeasureDensity.from_values(h.grid, density)


def surface_measure_total(d: MeasureDensity) -> float:
    return d.grid.integrate(d.values)


def integrate_against(d: MeasureDensity, g: TestFunction) -> float:
    """
    Pairing of a test function g(u) with the measure f dv.
    """
    return d.grid.integrate(g(d.grid.nodes) * d.values)


def integrate_against_radial(h: SupportField, g: TestFunction) -> float:
    """
    Pairing of g with S_{p, gamma_n, K} through the radial change of variables:
    (2 pi)^{-n/2} sum_i w_i g(alpha) h(alpha)^{1-p} e^{-rho^2/2}
    rho^{n-1} / (u . alpha),
    where alpha(u) is the outer normal at the radial point rho(u) u.
    """
    require_convex(h, "surface_measure_total_radial")
    grid = h.grid
    n = grid.dim
    rho, alpha = radial_at_nodes(h)
    cos_angle = np.sum(grid.nodes * alpha, axis=1)
    support_at_alpha = rho * cos_angle  # h(alpha) = rho(u) u . alpha
    integrand = (
        g(alpha)
        * support_at_alpha ** (1.0 - h.p)
        * np.exp(-0.5 * rho ** 2)
        * rho ** (n - 1)
        / cos_angle
    )
    return grid.integrate(integrand) / SQRT_2PI ** n


def surface_measure_total_radial(h: SupportField) -> float:
    return integrate_against_radial(h, lambda u: np.ones(u.shape[0]))


def isoperimetric_lower_bound(gamma: float, n: int, p: float) -> float:
    """
    n gamma (phi(Gamma^{-1}(gamma)) / (n gamma))^p.
    """
    if p < 1.0:
        raise DomainError(f"the isoperimetric bound needs p >= 1, got {p!r}")
    if n < 2:
        raise DomainError(f"dimension must be at least 2, got {n!r}")
    if not 0.0 < gamma < 1.0:
        raise DomainError(f"Gaussian volume must lie in (0, 1), got {gamma!r}")
    scale = n * gamma
    return scale * (float(phi(gamma_inv(gamma))) / scale) ** p


def small_branch_mass_threshold(n: int, p: float) -> float:
    """
    (1 / sqrt(2 pi))^p (n / 2)^{1-p}: data below it admit an even solution
    with gamma_n < 1/2.
    """
    return (1.0 / SQRT_2PI) ** p * (n / 2.0) ** (1.0 - p)


def large_branch_mass_threshold(n: int, p: float) -> float:
    """
    sqrt(2/pi) r^{-p} a e^{-a^2/2} with gamma_n(rB) = 1/2 and the strip
    {|x_1| <= a} of Gaussian volume 1/2; below it the gamma_n > 1/2 solution
    is unique.
    """
    r = ball_radius_for_volume(n, 0.5)
    a = gamma_inv(0.75)
    return math.sqrt(2.0 / math.pi) * r ** (-p) * a * math.exp(-0.5 * a * a)
