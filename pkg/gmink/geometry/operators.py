"""
Linear differentiation operators on a DirectionGrid.

S^1: trigonometric (spectral) differentiation matrices of the periodic
sample vector. S^2: 4th-order centered finite differences in
(colatitude, longitude); longitude wraps periodically and the colatitude
stencil continues across each pole onto the opposite meridian.
"""
import logging
import threading
import typing

import numpy as np
from scipy import sparse

from gmink.types import DirectionGrid

logger = logging.getLogger(__name__)

_STENCIL = np.arange(-2, 3)
_UNIFORM_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_UNIFORM_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0


def fornberg_weights(x0: float, x: np.ndarray, m: int) -> np.ndarray:
    """
    Finite difference weights for derivatives 0..m at x0 on arbitrary nodes x.
    :return: array of shape (m + 1, len(x))
    """
    n = len(x)
    c = np.zeros((m + 1, n))
    c1 = 1.0
    c4 = x[0] - x0
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - x0
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[k, i] = (
                        c1 * (k * c[k - 1, i - 1] - c5 * c[k, i - 1]) / c2
                    )
                c[0, i] = -c1 * c5 * c[0, i - 1] / c2
            for k in range(mn, 0, -1):
                c[k, j] = (c4 * c[k, j] - k * c[k - 1, j]) / c3
            c[0, j] = c4 * c[0, j] / c3
        c1 = c2
    return c


class Neighbors(typing.NamedTuple):
    """
    Nearest nodes along one tangent direction, for local quadratic fits.

    `t_minus`/`t_plus` are signed coordinate offsets; `scale` turns a
    coordinate offset into arc length along the matching frame vector.
    """

    minus: np.ndarray
    plus: np.ndarray
    t_minus: np.ndarray
    t_plus: np.ndarray
    scale: np.ndarray


class DifferentialOperators:
    """
    gradient[a] maps samples of h to the a-th frame component of grad h;
    hessian[a][b] to the (a, b) frame component of the covariant Hessian.
    """

    def __init__(
        self,
        grid: DirectionGrid,
        gradient: typing.List[sparse.csr_matrix],
        hessian: typing.List[typing.List[sparse.csr_matrix]],
        neighbors: typing.List[Neighbors],
        raw: typing.Dict[str, sparse.csr_matrix],
    ):
        self.grid = grid
        self.gradient = gradient
        self.hessian = hessian
        self.neighbors = neighbors
        self.raw = raw

    @property
    def tangent_dim(self) -> int:
        return self.grid.dim - 1


_CACHE: typing.Dict[typing.Any, DifferentialOperators] = {}
_CACHE_LOCK = threading.Lock()


def operators_for(grid: DirectionGrid) -> DifferentialOperators:
    """
    Operators of `grid`, assembled once per (dim, resolution).
    :param grid:
    :return:
    """
    with _CACHE_LOCK:
        operators = _CACHE.get(grid.key)
        if operators is None:
            logger.debug(
                f"Assembling differentiation operators for grid {grid.key}"
            )
            if grid.dim == 2:
                operators = _circle_operators(grid)
            else:
                operators = _sphere_operators(grid)
            _CACHE[grid.key] = operators
    return operators


def _circle_operators(grid: DirectionGrid) -> DifferentialOperators:
    (n,) = grid.resolution
    k = np.fft.fftfreq(n, d=1.0 / n)
    ik = 1j * k
    ik[n // 2] = 0.0  # Nyquist mode has no well-defined odd derivative
    spectrum = np.fft.fft(np.eye(n), axis=0)
    d1 = np.fft.ifft(ik[:, None] * spectrum, axis=0).real
    d2 = np.fft.ifft(-(k ** 2)[:, None] * spectrum, axis=0).real
    d1 = sparse.csr_matrix(d1)
    d2 = sparse.csr_matrix(d2)

    index = np.arange(n)
    step = 2.0 * np.pi / n
    neighbors = Neighbors(
        minus=(index - 1) % n,
        plus=(index + 1) % n,
        t_minus=np.full(n, -step),
        t_plus=np.full(n, step),
        scale=np.ones(n),
    )
    return DifferentialOperators(
        grid,
        gradient=[d1],
        hessian=[[d2]],
        neighbors=[neighbors],
        raw={"d_theta": d1, "d_theta2": d2},
    )


def _meridian_stencil(grid: DirectionGrid):
    """
    Node indices and colatitude coordinates of the 5-point stencil along the
    great circle through each node and the poles.
    """
    n_lat, n_lon = grid.resolution
    colat = grid.theta[::n_lon]
    i_lat = np.arange(grid.size) // n_lon
    i_lon = np.arange(grid.size) % n_lon

    cols = np.empty((grid.size, _STENCIL.size), dtype=np.intp)
    coords = np.empty((grid.size, _STENCIL.size))
    for j, offset in enumerate(_STENCIL):
        e = i_lat + offset
        shift = np.zeros(grid.size)
        shift[e < 0] = -2.0 * np.pi
        e = e % (2 * n_lat)
        on_far_side = e >= n_lat
        lat = np.where(on_far_side, 2 * n_lat - 1 - e, e)
        lon = np.where(on_far_side, (i_lon + n_lon // 2) % n_lon, i_lon)
        s = np.where(on_far_side, 2.0 * np.pi - colat[lat], colat[lat])
        cols[:, j] = lat * n_lon + lon
        coords[:, j] = s + shift
    return cols, coords


def _sphere_operators(grid: DirectionGrid) -> DifferentialOperators:
    n_lat, n_lon = grid.resolution
    size = grid.size
    rows = np.repeat(np.arange(size), _STENCIL.size)

    cols, coords = _meridian_stencil(grid)
    w1 = np.empty_like(coords)
    w2 = np.empty_like(coords)
    for i in range(size):
        weights = fornberg_weights(grid.theta[i], coords[i], 2)
        w1[i], w2[i] = weights[1], weights[2]
    d_t = sparse.csr_matrix(
        (w1.ravel(), (rows, cols.ravel())), shape=(size, size)
    )
    d_tt = sparse.csr_matrix(
        (w2.ravel(), (rows, cols.ravel())), shape=(size, size)
    )

    step = 2.0 * np.pi / n_lon
    i_lat = np.arange(size) // n_lon
    i_lon = np.arange(size) % n_lon
    lon_cols = (
        i_lat[:, None] * n_lon + (i_lon[:, None] + _STENCIL[None, :]) % n_lon
    )
    d_p = sparse.csr_matrix(
        (np.tile(_UNIFORM_D1 / step, size), (rows, lon_cols.ravel())),
        shape=(size, size),
    )
    d_pp = sparse.csr_matrix(
        (np.tile(_UNIFORM_D2 / step ** 2, size), (rows, lon_cols.ravel())),
        shape=(size, size),
    )
    d_tp = (d_t @ d_p).tocsr()

    sin_t = np.sin(grid.theta)
    cot_t = np.cos(grid.theta) / sin_t
    inv_sin = sparse.diags(1.0 / sin_t)
    cot = sparse.diags(cot_t)

    h_tt = d_tt
    h_pp = (sparse.diags(1.0 / sin_t ** 2) @ d_pp + cot @ d_t).tocsr()
    h_tp = (inv_sin @ (d_tp - cot @ d_p)).tocsr()
    g_p = (inv_sin @ d_p).tocsr()

    centre = _STENCIL.size // 2
    neighbors = [
        Neighbors(
            minus=cols[:, centre - 1],
            plus=cols[:, centre + 1],
            t_minus=coords[:, centre - 1] - grid.theta,
            t_plus=coords[:, centre + 1] - grid.theta,
            scale=np.ones(size),
        ),
        Neighbors(
            minus=lon_cols[:, centre - 1],
            plus=lon_cols[:, centre + 1],
            t_minus=np.full(size, -step),
            t_plus=np.full(size, step),
            scale=sin_t,
        ),
    ]
    return DifferentialOperators(
        grid,
        gradient=[d_t, g_p],
        hessian=[[h_tt, h_tp], [h_tp, h_pp]],
        neighbors=neighbors,
        raw={
            "d_theta": d_t,
            "d_theta2": d_tt,
            "d_phi": d_p,
            "d_phi2": d_pp,
            "d_theta_phi": d_tp,
        },
    )
