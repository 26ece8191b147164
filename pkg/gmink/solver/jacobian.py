"""
Linearization of the residual F(h) = det(Hess h + h I) - E(h) f.
"""
import logging

import numpy as np
from scipy import sparse

from .residual import check_same_grid
from .residual import measure_factor
from gmink.geometry import operators_for
from gmink.geometry import require_convex
from gmink.geometry.calculus import hessian_plus_identity
from gmink.types import MeasureDensity
from gmink.types import SupportField

logger = logging.getLogger(__name__)


def assemble_jacobian(h: SupportField, f: MeasureDensity) -> np.ndarray:
    """
    Dense matrix of dF_i / dh_j built from the same stencils as differentiate.

    The determinant part is the adjugate of Hess h + h I contracted with the
    discrete operators M_ab = Hess_ab + delta_ab I; the measure part is
    -diag(E f) (sum_a diag(h_a) G_a + diag(h + (p - 1) / h)).

    :param h: strictly convex support field
    :param f: density on the same grid
    :return: (M, M) array
    """
    check_same_grid(h, f)
    geometry = require_convex(h, "assemble_jacobian")
    ops = operators_for(h.grid)
    values = h.values
    size = h.grid.size
    eye = sparse.identity(size, format="csr")
    m = ops.tangent_dim

    def shifted(a, b):
        return ops.hessian[a][b] + eye if a == b else ops.hessian[a][b]

    if m == 1:
        det_part = shifted(0, 0)
    else:
        matrices = hessian_plus_identity(geometry.hessian, values)
        a11, a12, a22 = matrices[:, 0, 0], matrices[:, 0, 1], matrices[:, 1, 1]
        det_part = (
            sparse.diags(a22) @ shifted(0, 0)
            + sparse.diags(a11) @ shifted(1, 1)
            - 2.0 * sparse.diags(a12) @ shifted(0, 1)
        )

    chain = sparse.diags(values + (h.p - 1.0) / values)
    for a in range(m):
        chain = chain + sparse.diags(geometry.gradient[:, a]) @ ops.gradient[a]
    weight = measure_factor(h, geometry) * f.values

    jacobian = (det_part - sparse.diags(weight) @ chain).toarray()
    logger.debug(f"Assembled {size}x{size} Jacobian on grid {h.grid.key}")
    return jacobian
