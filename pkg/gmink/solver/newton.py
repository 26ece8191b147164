import logging
import typing

import numpy as np
from scipy import linalg

from .jacobian import assemble_jacobian
from .residual import residual
from .residual import trial_field
from gmink.exceptions import InvalidInputError
from gmink.exceptions import NewtonFailure
from gmink.geometry import convexity_check
from gmink.geometry import symmetrize_even
from gmink.measures import gaussian_volume
from gmink.types import MeasureDensity
from gmink.types import SolveConfig
from gmink.types import SolveReport
from gmink.types import SupportField

logger = logging.getLogger(__name__)

ARMIJO_SLOPE = 1e-4


def _sup(values: np.ndarray) -> float:
    return float(np.max(np.abs(values)))


def _admissible(h: SupportField, cfg: SolveConfig) -> bool:
    return not cfg.convexity_guard or convexity_check(h).is_convex


def _line_search(
    h: SupportField,
    direction: np.ndarray,
    f: MeasureDensity,
    norm: float,
    cfg: SolveConfig,
) -> typing.Tuple[typing.Optional[SupportField], float, str]:
    """
    Backtrack from the full Newton step until the sup-norm of F drops
    sufficiently, keeping the iterate positive, even and convex.
    :return: accepted field (or None), its residual norm, failure reason
    """
    step = 1.0
    reason = NewtonFailure.STALL
    while step >= cfg.min_step:
        values = symmetrize_even(h.values + step * direction, h.grid)
        try:
            trial = trial_field(h, values)
        except InvalidInputError:
            step *= cfg.backtracking_factor
            continue
        if not _admissible(trial, cfg):
            reason = NewtonFailure.CONVEXITY_LOSS
            step *= cfg.backtracking_factor
            continue
        trial_norm = _sup(residual(trial, f))
        accepted = trial_norm <= (1.0 - ARMIJO_SLOPE * step) * norm
        if accepted or trial_norm <= cfg.newton_tol:
            logger.debug(f"Accepted step {step:g}, |F| = {trial_norm:.3e}")
            return trial, trial_norm, reason
        reason = NewtonFailure.STALL
        step *= cfg.backtracking_factor
    return None, norm, reason


def newton_solve(
    h0: SupportField, f: MeasureDensity, cfg: SolveConfig = None
) -> SolveReport:
    """
    Damped Newton iteration on F(h) = 0 from h0.

    :param h0: strictly convex start; made exactly even first
    :param f: target density
    :param cfg:
    :return: report with the per-step residual history
    :raises NewtonFailure: stall, iteration cap, convexity loss or a
        singular Jacobian; `last_iterate` holds the last accepted field
    """
    cfg = cfg or SolveConfig()
    h = h0.with_values(symmetrize_even(h0.values, h0.grid))
    if not _admissible(h, cfg):
        raise NewtonFailure(NewtonFailure.CONVEXITY_LOSS, last_iterate=h)

    history: typing.List[float] = []
    norm = _sup(residual(h, f))
    history.append(norm)
    iteration = 0
    while norm > cfg.newton_tol:
        if iteration >= cfg.max_newton_iters:
            raise NewtonFailure(
                NewtonFailure.ITERATION_CAP, history=history, last_iterate=h
            )
        iteration += 1
        jacobian = assemble_jacobian(h, f)
        try:
            direction = linalg.solve(jacobian, -residual(h, f))
        except (linalg.LinAlgError, ValueError):
            raise NewtonFailure(
                NewtonFailure.SINGULAR, history=history, last_iterate=h
            )
        if not np.all(np.isfinite(direction)):
            raise NewtonFailure(
                NewtonFailure.SINGULAR, history=history, last_iterate=h
            )

        trial, norm, reason = _line_search(h, direction, f, norm, cfg)
        if trial is None:
            logger.debug(f"Newton failed after {iteration} steps: {reason}")
            raise NewtonFailure(reason, history=history, last_iterate=h)
        h = trial
        history.append(norm)
        logger.debug(f"Newton step {iteration}: |F| = {norm:.3e}")

    return SolveReport(
        solution=h,
        gamma_n=gaussian_volume(h),
        residual_sup=norm,
        newton_history=history,
    )
