import logging
import typing

import numpy as np

from .operators import operators_for
from gmink.exceptions import DomainError
from gmink.types import SupportField

logger = logging.getLogger(__name__)

_CHUNK_ROWS = 4096


def _arc_peak(d_minus, d_plus, t_minus, t_plus):
    """
    Maximum of d(t) = a (cos t - 1) + b sin t through (t-, d-), (0, 0),
    (t+, d+). Second order in t like a parabola, and exact for a ball
    along great circles and latitude circles, so balls get zero gain.

    Returns (offset, gain); zero where d is not concave at 0.
    """
    c_minus, c_plus = np.cos(t_minus) - 1.0, np.cos(t_plus) - 1.0
    s_minus, s_plus = np.sin(t_minus), np.sin(t_plus)
    det = c_minus * s_plus - c_plus * s_minus
    a = (d_minus * s_plus - d_plus * s_minus) / det
    b = (c_minus * d_plus - c_plus * d_minus) / det
    concave = a > 0
    safe_a = np.where(concave, a, 1.0)
    offset = np.where(concave, np.arctan2(b, safe_a), 0.0)
    offset = np.clip(offset, t_minus, t_plus)
    curve = a * (np.cos(offset) - 1.0) + b * np.sin(offset)
    gain = np.where(concave, curve, 0.0)
    return offset, np.maximum(gain, 0.0)


def support_ratio_peak(
    h: SupportField, directions: np.ndarray
) -> typing.Tuple[np.ndarray, np.ndarray]:
    """
    max over v of (u . v) / h(v) for each direction u, refined by a local
    second-order fit around the best node, and the refined maximizer
    alpha(u).

    :param h:
    :param directions: (K, n) unit vectors
    :return: (peak values (K,), maximizers (K, n))
    """
    grid = h.grid
    ops = operators_for(grid)
    nodes = grid.nodes
    inv_h = 1.0 / h.values
    directions = np.atleast_2d(np.asarray(directions, dtype=float))

    peaks = np.empty(directions.shape[0])
    alphas = np.empty_like(directions)
    frame = grid.tangent_frame()
    for start in range(0, directions.shape[0], _CHUNK_ROWS):
        u = directions[start:start + _CHUNK_ROWS]
        dots = u @ nodes.T
        if np.any(np.max(dots, axis=1) <= 0.0):
            raise DomainError("direction has no grid node in its hemisphere")
        ratios = np.where(dots > 0.0, dots * inv_h[None, :], -np.inf)
        best = np.argmax(ratios, axis=1)
        rows = np.arange(u.shape[0])
        q0 = ratios[rows, best]

        peak = q0.copy()
        alpha = nodes[best].copy()
        for direction, nbr in enumerate(ops.neighbors):
            j_minus, j_plus = nbr.minus[best], nbr.plus[best]
            d_minus = dots[rows, j_minus] * inv_h[j_minus] - q0
            d_plus = dots[rows, j_plus] * inv_h[j_plus] - q0
            offset, gain = _arc_peak(
                d_minus, d_plus, nbr.t_minus[best], nbr.t_plus[best]
            )
            peak += gain
            shift = (offset * nbr.scale[best])[:, None]
            alpha += shift * frame[direction][best]
        alpha /= np.linalg.norm(alpha, axis=1)[:, None]

        peaks[start:start + _CHUNK_ROWS] = peak
        alphas[start:start + _CHUNK_ROWS] = alpha
    return peaks, alphas


def radial_from_support(
    h: SupportField, u: np.ndarray
) -> typing.Union[float, np.ndarray]:
    """
    rho(u) = 1 / sup_v (u . v) / h(v).

    :param h: convex positive support field
    :param u: a unit vector (n,) or a stack of them (K, n)
    :return: scalar for a single direction, array otherwise
    """
    u = np.asarray(u, dtype=float)
    peaks, _ = support_ratio_peak(h, u)
    rho = 1.0 / peaks
    if u.ndim == 1:
        return float(rho[0])
    return rho


def radial_at_nodes(h: SupportField) -> typing.Tuple[np.ndarray, np.ndarray]:
    """
    Radial samples rho(u_i) and outer normals alpha(u_i) at the grid nodes.
    Exactly even when h is.
    """
    peaks, alphas = support_ratio_peak(h, h.grid.nodes)
    rho = 1.0 / peaks
    antipode = h.grid.antipode
    rho = 0.5 * (rho + rho[antipode])
    return rho, alphas
