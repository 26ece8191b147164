import logging

import numpy as np

from .operators import operators_for
from gmink.types import BodyGeometry
from gmink.types import SupportField

logger = logging.getLogger(__name__)


def hessian_plus_identity(
    hessian: np.ndarray, values: np.ndarray
) -> np.ndarray:
    """
    Per-node matrix Hess h + h I.
    :param hessian: (M, n-1, n-1)
    :param values: (M,)
    :return:
    """
    eye = np.eye(hessian.shape[-1])
    return hessian + values[:, None, None] * eye[None, :, :]


def _determinant(matrices: np.ndarray) -> np.ndarray:
    if matrices.shape[-1] == 1:
        return matrices[:, 0, 0].copy()
    a, b, c = matrices[:, 0, 0], matrices[:, 0, 1], matrices[:, 1, 1]
    return a * c - b * b


def differentiate(h: SupportField, with_radial: bool = False) -> BodyGeometry:
    """
    Gradient, covariant Hessian, boundary points and Gauss map determinants.

    Non-convex fields are differentiated like any other; their
    determinants simply come out non-positive somewhere.

    :param h: sampled support function
    :param with_radial: also fill radial samples at the grid nodes
    :return:
    """
    grid = h.grid
    ops = operators_for(grid)
    values = h.values
    m = ops.tangent_dim

    gradient = np.stack([g @ values for g in ops.gradient], axis=1)
    hessian = np.empty((grid.size, m, m))
    for a in range(m):
        for b in range(a, m):
            component = ops.hessian[a][b] @ values
            hessian[:, a, b] = component
            hessian[:, b, a] = component

    frame = grid.tangent_frame()
    boundary = values[:, None] * grid.nodes
    for a in range(m):
        boundary = boundary + gradient[:, a, None] * frame[a]

    radial = None
    if with_radial:
        from .radial import radial_at_nodes

        radial = radial_at_nodes(h)[0]

    return BodyGeometry(
        gradient=gradient,
        hessian=hessian,
        boundary_points=boundary,
        gauss_map_dets=_determinant(hessian_plus_identity(hessian, values)),
        radial=radial,
    )
