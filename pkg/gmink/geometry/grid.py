import functools
import logging
import typing

import numpy as np
from scipy.special import roots_legendre

from gmink.constants import DEFAULT_GRID_S1
from gmink.constants import DEFAULT_GRID_S2
from gmink.constants import MIN_RESOLUTION
from gmink.constants import SUPPORTED_DIMS
from gmink.exceptions import GridError
from gmink.types import DirectionGrid

logger = logging.getLogger(__name__)

Resolution = typing.Union[int, typing.Sequence[int]]


def _normalize_resolution(
    dim: int, resolution: Resolution
) -> typing.Tuple[int, ...]:
    if isinstance(resolution, (int, np.integer)):
        resolution = (int(resolution),)
    resolution = tuple(int(r) for r in resolution)
    expected = dim - 1
    if len(resolution) != expected:
        raise GridError(
            f"S^{dim - 1} needs {expected} resolution parameter(s), "
            f"got {resolution}"
        )
    for r in resolution:
        if r < MIN_RESOLUTION:
            raise GridError(
                f"resolution {r} is below the minimum of {MIN_RESOLUTION}"
            )
        if r % 2:
            raise GridError(
                f"resolution {r} is odd; antipodal closure needs even counts"
            )
    return resolution


def build_grid(dim: int, resolution: Resolution) -> DirectionGrid:
    """
    Quadrature grid on S^{dim-1}.

    S^1: uniform angles 2 pi j / N with weights 2 pi / N.
    S^2: Gauss-Legendre colatitudes times uniform longitudes, poles excluded.

    :param dim: ambient dimension, 2 or 3
    :param resolution: N for S^1, (n_lat, n_lon) for S^2
    :return:
    """
    if dim not in SUPPORTED_DIMS:
        raise GridError(f"dimension {dim} is not supported (use 2 or 3)")
    return _build_grid(dim, _normalize_resolution(dim, resolution))


@functools.lru_cache(maxsize=16)
def _build_grid(dim: int, resolution: typing.Tuple[int, ...]) -> DirectionGrid:
    logger.debug(f"Building grid on S^{dim - 1} with resolution {resolution}")
    if dim == 2:
        (n,) = resolution
        theta = 2.0 * np.pi * np.arange(n) / n
        nodes = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        weights = np.full(n, 2.0 * np.pi / n)
        antipode = (np.arange(n) + n // 2) % n
        return DirectionGrid(
            dim=dim,
            resolution=resolution,
            nodes=nodes,
            weights=weights,
            antipode=antipode,
            theta=theta,
        )

    n_lat, n_lon = resolution
    x, w = roots_legendre(n_lat)
    # x ascending means colatitude descending; flip so colatitude increases
    x, w = x[::-1], w[::-1]
    x = 0.5 * (x - x[::-1])  # exact mirror symmetry for antipodal pairs
    w = 0.5 * (w + w[::-1])
    colat = np.arccos(x)
    lon = 2.0 * np.pi * np.arange(n_lon) / n_lon

    theta = np.repeat(colat, n_lon)
    phi = np.tile(lon, n_lat)
    sin_t = np.sin(theta)
    nodes = np.stack(
        [sin_t * np.cos(phi), sin_t * np.sin(phi), np.cos(theta)], axis=1
    )
    weights = np.repeat(w, n_lon) * (2.0 * np.pi / n_lon)

    i_lat = np.arange(n_lat).repeat(n_lon)
    i_lon = np.tile(np.arange(n_lon), n_lat)
    antipode = (n_lat - 1 - i_lat) * n_lon + (i_lon + n_lon // 2) % n_lon
    return DirectionGrid(
        dim=dim,
        resolution=resolution,
        nodes=nodes,
        weights=weights,
        antipode=antipode,
        theta=theta,
        phi=phi,
    )


def default_grid(dim: int) -> DirectionGrid:
    """
    N=256 on S^1, 32x64 on S^2.
    """
    if dim not in SUPPORTED_DIMS:
        raise GridError(f"dimension {dim} is not supported (use 2 or 3)")
    return build_grid(dim, DEFAULT_GRID_S1 if dim == 2 else DEFAULT_GRID_S2)
