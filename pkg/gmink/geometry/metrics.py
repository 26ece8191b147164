import logging

import numpy as np

from .calculus import differentiate
from .calculus import hessian_plus_identity
from gmink.exceptions import GridMismatchError
from gmink.exceptions import NonConvexBodyError
from gmink.types import BodyGeometry
from gmink.types import ConvexityReport
from gmink.types import DirectionGrid
from gmink.types import SupportField
from gmink.types.fields import even_part

logger = logging.getLogger(__name__)


def hessian_eigenvalues(h: SupportField, geometry: BodyGeometry) -> np.ndarray:
    """
    Eigenvalues of Hess h + h I per node, ascending; shape (M, n-1).
    """
    matrices = hessian_plus_identity(geometry.hessian, h.values)
    if matrices.shape[-1] == 1:
        return matrices[:, :, 0]
    a, b, c = matrices[:, 0, 0], matrices[:, 0, 1], matrices[:, 1, 1]
    mid = 0.5 * (a + c)
    radius = np.hypot(0.5 * (a - c), b)
    return np.stack([mid - radius, mid + radius], axis=1)


def convexity_check(
    h: SupportField, geometry: BodyGeometry = None
) -> ConvexityReport:
    """
    :param h:
    :param geometry: reuse an existing differentiation of h
    :return: smallest eigenvalue of Hess h + h I over the nodes
    """
    if geometry is None:
        geometry = differentiate(h)
    min_eigenvalue = float(hessian_eigenvalues(h, geometry).min())
    return ConvexityReport(
        min_eigenvalue=min_eigenvalue, is_convex=min_eigenvalue > 0.0
    )


def require_convex(h: SupportField, operation: str) -> BodyGeometry:
    """
    Differentiate h, raising NonConvexBodyError when it leaves the convex cone.
    """
    geometry = differentiate(h)
    report = convexity_check(h, geometry)
    if not report.is_convex:
        raise NonConvexBodyError(report.min_eigenvalue, operation)
    return geometry


def hausdorff_distance(h1: SupportField, h2: SupportField) -> float:
    if not h1.grid.same_as(h2.grid):
        raise GridMismatchError(
            f"fields live on different grids: {h1.grid.key} vs {h2.grid.key}"
        )
    return float(np.max(np.abs(h1.values - h2.values)))


def symmetrize_even(values: np.ndarray, grid: DirectionGrid) -> np.ndarray:
    """
    Replace each antipodal pair of samples by its mean.
    """
    values = np.asarray(values, dtype=float)
    if values.shape != (grid.size,):
        raise GridMismatchError(
            f"{values.size} samples do not fit a grid of {grid.size} nodes"
        )
    return even_part(values, grid)


def euclidean_volume(h: SupportField, geometry: BodyGeometry = None) -> float:
    """
    Lebesgue volume of the body, (1/n) * integral of h det(Hess h + h I).
    """
    if geometry is None:
        geometry = differentiate(h)
    integrand = h.values * geometry.gauss_map_dets
    return h.grid.integrate(integrand) / h.grid.dim
