import logging

import numpy as np

from gmink.geometry import hausdorff_distance
from gmink.types import BranchOrdering
from gmink.types import SolveReport

logger = logging.getLogger(__name__)


def branch_ordering(small: SolveReport, large: SolveReport) -> BranchOrdering:
    """
    Order the two branch solutions of the same density.

    :param small: report of the small branch
    :param large: report of the large branch
    :return:
    """
    distance = hausdorff_distance(small.solution, large.solution)
    gap = large.solution.values - small.solution.values

    start_ordered = True
    if small.start_radius is not None and large.start_radius is not None:
        start_ordered = small.start_radius < large.start_radius
    if small.homotopy_trace and large.homotopy_trace:
        start_ordered = start_ordered and (
            small.homotopy_trace[0].gamma_n < large.homotopy_trace[0].gamma_n
        )
    if not start_ordered:
        logger.warning("Branch starts are not ordered at t = 0")

    ordering = BranchOrdering(
        start_ordered=start_ordered,
        gamma_ordered=small.gamma_n < large.gamma_n,
        pointwise_ordered=bool(np.all(gap > 0.0)),
        min_gap=float(np.min(gap)),
        hausdorff_distance=distance,
    )
    logger.info(
        f"Branch ordering: gamma {ordering.gamma_ordered}, "
        f"pointwise {ordering.pointwise_ordered}"
    )
    return ordering
