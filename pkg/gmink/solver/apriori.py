import logging

import numpy as np

from .residual import check_same_grid
from gmink.constants import NEAR_DEGENERATE_EIGENVALUE
from gmink.geometry import differentiate
from gmink.geometry import euclidean_volume
from gmink.geometry import hessian_eigenvalues
from gmink.types import AprioriReport
from gmink.types import MeasureDensity
from gmink.types import SolveReport

logger = logging.getLogger(__name__)


def apriori_check(report: SolveReport, f: MeasureDensity) -> AprioriReport:
    """
    Ranges of h, sqrt(|grad h|^2 + h^2) and the eigenvalues of Hess h + h I
    on a solution: the quantities any solution keeps bounded away from
    zero and infinity.

    Diagnostic only; nothing here raises on a bad range.
    """
    h = report.solution
    check_same_grid(h, f)
    geometry = differentiate(h)
    support_norm = np.sqrt(geometry.gradient_sq + h.values ** 2)
    eigenvalues = hessian_eigenvalues(h, geometry)

    ranges = np.array(
        [
            h.values.min(),
            h.values.max(),
            support_norm.min(),
            support_norm.max(),
            eigenvalues.min(),
            eigenvalues.max(),
        ]
    )
    positive_and_finite = bool(
        np.all(np.isfinite(ranges)) and np.all(ranges > 0.0)
    )
    near_degenerate = bool(eigenvalues.min() < NEAR_DEGENERATE_EIGENVALUE)
    if near_degenerate:
        logger.warning(
            f"Solution is nearly degenerate: smallest eigenvalue of "
            f"Hess h + h I is {eigenvalues.min():.3e}"
        )
    return AprioriReport(
        h_min=float(ranges[0]),
        h_max=float(ranges[1]),
        support_norm_min=float(ranges[2]),
        support_norm_max=float(ranges[3]),
        eigenvalue_min=float(ranges[4]),
        eigenvalue_max=float(ranges[5]),
        euclidean_volume=euclidean_volume(h, geometry),
        positive_and_finite=positive_and_finite,
        near_degenerate=near_degenerate,
    )
