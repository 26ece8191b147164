"""
Continuation from an isotropic problem f_0 = c0 to the target density:
f_t = (1 - t) c0 + t f, each t solved by Newton from the previous solution.
"""
import logging
import typing

from .apriori import apriori_check
from .newton import newton_solve
from .residual import residual_sup
from gmink.constants import DEGENERATE_START_PERTURBATION
from gmink.constants import SQRT_2PI
from gmink.exceptions import ContinuationCollapse
from gmink.exceptions import DegenerateStartError
from gmink.exceptions import NewtonFailure
from gmink.geometry import ball
from gmink.isotropic import count_constant_solutions
from gmink.isotropic import linearized_spectrum
from gmink.isotropic import solve_constant_roots
from gmink.measures import gaussian_volume
from gmink.measures import small_branch_mass_threshold
from gmink.types import Branch
from gmink.types import HomotopyDensity
from gmink.types import HomotopyPoint
from gmink.types import MeasureDensity
from gmink.types import SolveConfig
from gmink.types import SolveReport
from gmink.utils import time_logging

logger = logging.getLogger(__name__)


def isotropic_start(
    n: int, p: float, c0: float, branch: Branch
) -> typing.Tuple[float, float]:
    """
    Pick the start level c0 and the constant solution r0 on `branch`.

    c0 is nudged by -1% then +1% when the linearization at r0 is singular.
    :return: (c0, r0)
    :raises DegenerateStartError: no admissible level
    """
    branch = Branch(branch)
    for factor in (1.0,) + tuple(
        1.0 + s * DEGENERATE_START_PERTURBATION for s in (-1.0, 1.0)
    ):
        level = c0 * factor
        C = SQRT_2PI ** n * level
        if count_constant_solutions(n, p, C) == 0:
            continue
        roots = solve_constant_roots(n, p, C)
        r0 = roots[0] if branch == Branch.SMALL else roots[-1]
        if linearized_spectrum(n, p, r0).invertible:
            if factor != 1.0:
                logger.warning(
                    f"Linearization singular at c0={c0!r}, "
                    f"starting from c0={level!r} instead"
                )
            return level, r0
    raise DegenerateStartError(
        f"no admissible isotropic start near c0={c0!r} for n={n}, p={p}"
    )


@time_logging(logger)
def homotopy_solve(
    f: MeasureDensity,
    branch: Branch,
    cfg: SolveConfig = None,
    p: float = 1.0,
) -> SolveReport:
    """
    Solve det(Hess h + h I) = (2 pi)^{n/2} e^{(|grad h|^2 + h^2)/2} h^{p-1} f
    on the requested branch.

    :param f: target density
    :param branch: small starts from the smaller constant root, large from
        the larger one
    :param cfg:
    :param p: L_p parameter of the problem
    :return: report with the (t, gamma_n, residual_sup) trace
    :raises ContinuationCollapse: the step in t shrank below cfg.min_dt
    :raises DegenerateStartError:
    """
    cfg = cfg or SolveConfig()
    branch = Branch(branch)
    grid = f.grid
    n = grid.dim

    mass_threshold = small_branch_mass_threshold(n, p)
    if f.l1_norm >= mass_threshold:
        logger.warning(
            f"|f|_1 = {f.l1_norm:.6g} is not below {mass_threshold:.6g}; "
            f"a small-volume solution is not guaranteed"
        )

    c0, r0 = isotropic_start(n, p, f.mean, branch)
    path = HomotopyDensity(c0=c0, f_target=f, t=0.0)
    logger.debug(f"Homotopy on the {branch.value} branch from h = {r0!r}")

    h = ball(grid, r0, p)
    trace: typing.List[HomotopyPoint] = []
    try:
        report = newton_solve(h, path.density(), cfg)
    except NewtonFailure as e:
        raise DegenerateStartError(
            f"isotropic start failed: {e.reason}", history=e.history
        )
    h = report.solution
    trace.append(
        HomotopyPoint(
            t=0.0,
            gamma_n=report.gamma_n,
            residual_sup=report.residual_sup,
        )
    )

    t, dt = 0.0, cfg.initial_dt
    while t < 1.0:
        t_next = min(1.0, t + dt)
        try:
            report = newton_solve(h, path.at(t_next).density(), cfg)
        except NewtonFailure as e:
            dt *= 0.5
            logger.debug(
                f"Newton failed at t={t_next:.6g} ({e.reason}), dt -> {dt:g}"
            )
            if dt < cfg.min_dt:
                raise ContinuationCollapse(
                    f"continuation stalled at t={t!r}",
                    history=e.history,
                    trace=trace,
                    last_iterate=h,
                )
            continue
        t, h = t_next, report.solution
        trace.append(
            HomotopyPoint(
                t=t, gamma_n=report.gamma_n, residual_sup=report.residual_sup
            )
        )
        logger.debug(f"t={t:.6g}: gamma_n={report.gamma_n:.6g}")
        dt = min(2.0 * dt, cfg.initial_dt)

    final_residual = residual_sup(h, f)
    gamma_crossing = branch == Branch.SMALL and any(
        point.gamma_n >= 0.5 for point in trace
    )
    if gamma_crossing:
        logger.warning("The small-branch path crossed gamma_n = 1/2")

    solved = SolveReport(
        solution=h,
        branch=branch,
        gamma_n=gaussian_volume(h),
        residual_sup=final_residual,
        newton_history=report.newton_history,
        homotopy_trace=trace,
        gamma_crossing=gamma_crossing,
        start_radius=r0,
    )
    solved = solved.model_copy(update={"apriori": apriori_check(solved, f)})
    logger.info(
        f"Solved on the {branch.value} branch: gamma_n={solved.gamma_n:.6g}, "
        f"|F|={final_residual:.3e}"
    )
    return solved
