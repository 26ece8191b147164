"""
Property suites. Each returns a PropertyRunRecord and is deterministic
given its seeds: trial i of a run seeded s uses seed s + i.
"""
import logging
import typing

import numpy as np

from .bodies import even_perturbation
from .bodies import random_even_body
from gmink.background import run_in_background
from gmink.constants import SQRT_2PI
from gmink.exceptions import NewtonFailure
from gmink.exceptions import NonConvexBodyError
from gmink.geometry import ball
from gmink.geometry import convexity_check
from gmink.geometry import default_grid
from gmink.isotropic import count_constant_solutions
from gmink.isotropic import solve_constant_roots
from gmink.measures import gaussian_volume
from gmink.measures import integrate_against
from gmink.measures import isoperimetric_lower_bound
from gmink.measures import surface_measure_density
from gmink.measures import surface_measure_total
from gmink.solver import newton_solve
from gmink.types import DirectionGrid
from gmink.types import MeasureDensity
from gmink.types import PropertyRunRecord
from gmink.types import SolveConfig
from gmink.types import SupportField
from gmink.utils import time_logging

logger = logging.getLogger(__name__)

ISOPERIMETRIC_TOL = 1e-6
WEAK_FINAL_GAP = 1e-6
GAP_FLOOR = 1e-14
CONSTANCY_TOL = 1e-8
MAX_SHRINKS = 30


def _isoperimetric_margin(
    n: int, p: float, seed: int, amplitude: float, grid: DirectionGrid
) -> float:
    h = random_even_body(n, seed, amplitude, grid, p)
    gamma = gaussian_volume(h)
    total = surface_measure_total(surface_measure_density(h))
    return total - isoperimetric_lower_bound(gamma, n, p)


@time_logging(logger)
def check_isoperimetric(
    trials: int,
    n: int,
    p: float,
    seed: int,
    amplitude: float = 0.1,
    grid: DirectionGrid = None,
    workers: int = 1,
) -> PropertyRunRecord:
    """
    Total L_p Gaussian surface measure against the isoperimetric lower bound
    n gamma (phi(Gamma^{-1}(gamma)) / (n gamma))^p on random even bodies.
    """
    grid = grid or default_grid(n)
    seeds = [seed + i for i in range(trials)]
    margins = run_in_background(
        [
            lambda s=s: _isoperimetric_margin(n, p, s, amplitude, grid)
            for s in seeds
        ],
        workers=workers,
    )
    failures = sum(m < -ISOPERIMETRIC_TOL for m in margins)
    for s, m in zip(seeds, margins):
        if m < -ISOPERIMETRIC_TOL:
            logger.warning(f"Isoperimetric violation for seed {s}: {m:.3e}")
    return PropertyRunRecord(
        name=f"isoperimetric(n={n}, p={p})",
        trials=trials,
        failures=failures,
        worst_margin=min(margins) if margins else None,
        seeds=seeds,
    )


TEST_FUNCTIONS: typing.List[typing.Callable[[np.ndarray], np.ndarray]] = [
    lambda u: np.ones(u.shape[0]),
    lambda u: u[:, 0] ** 2,
    lambda u: u[:, 1] ** 2,
]


def weak_convergence_gaps(
    target: SupportField,
    rate_points: int = 24,
    seed: int = 0,
    amplitude: float = 0.1,
) -> np.ndarray:
    """
    |int g dS_i - int g dS_0| for h_i = h (1 + eps_i amplitude q),
    eps_i = 2^{-i}, i = 1..rate_points, and q = 1 + (even field) / 2.

    The whole sequence is rescaled by 1/2 until every h_i is convex.
    :return: array of shape (rate_points, 3), one column per test function
    """
    grid = target.grid
    reference = surface_measure_density(target)
    functions = TEST_FUNCTIONS
    exact = np.array([integrate_against(reference, g) for g in functions])

    rng = np.random.default_rng(seed)
    harmonic = even_perturbation(grid, rng)
    q = 1.0 + 0.5 * harmonic / max(np.max(np.abs(harmonic)), 1e-300)
    scale = amplitude
    for _ in range(MAX_SHRINKS):
        bodies = [
            target.with_values(target.values * (1.0 + 2.0 ** -i * scale * q))
            for i in range(1, rate_points + 1)
        ]
        if all(convexity_check(h).is_convex for h in bodies):
            break
        scale *= 0.5
        logger.debug(f"Perturbed body left the convex cone, scale -> {scale}")
    else:
        raise NonConvexBodyError(
            convexity_check(bodies[0]).min_eigenvalue, "weak_convergence_gaps"
        )

    gaps = np.empty((rate_points, len(functions)))
    for i, h in enumerate(bodies):
        density = surface_measure_density(h)
        values = [integrate_against(density, g) for g in functions]
        gaps[i] = np.abs(np.array(values) - exact)
    return gaps


def _decreasing(column: np.ndarray) -> bool:
    """
    Strictly decreasing until the gaps reach round-off level.
    """
    for a, b in zip(column, column[1:]):
        if a <= GAP_FLOOR and b <= GAP_FLOOR:
            continue
        if not b < a:
            return False
    return True


@time_logging(logger)
def check_weak_convergence(
    target: SupportField,
    rate_points: int = 24,
    seed: int = 0,
    amplitude: float = 0.1,
) -> PropertyRunRecord:
    """
    Integrals of 1, (u . e1)^2, (u . e2)^2 against S_{p, gamma_n, K_i} must
    approach those of the target as K_i -> K.

    One trial per test function. The first gap may sit outside the
    linear regime, so monotonicity is required from the second on.
    """
    gaps = weak_convergence_gaps(target, rate_points, seed, amplitude)
    failures = 0
    for j in range(gaps.shape[1]):
        column = gaps[1:, j] if rate_points > 1 else gaps[:, j]
        if not _decreasing(column) or gaps[-1, j] >= WEAK_FINAL_GAP:
            failures += 1
            logger.warning(f"Weak convergence failed for test function {j}")
    return PropertyRunRecord(
        name="weak_convergence",
        trials=gaps.shape[1],
        failures=failures,
        worst_margin=float(WEAK_FINAL_GAP - gaps[-1].max()),
        seeds=[seed],
    )


@time_logging(logger)
def probe_isotropic_constancy(
    n: int,
    p: float,
    C: float,
    perturbation_seeds: int,
    amplitude: float = 0.05,
    grid: DirectionGrid = None,
    cfg: SolveConfig = None,
) -> PropertyRunRecord:
    """
    Newton on the isotropic density f = C / (2 pi)^{n/2} from non-constant
    even starts; every converged run must be a constant root.

    Starts alternate between the constant roots (sqrt(n - p) when there
    is none). Runs that fail to converge are counted, not failed.
    """
    grid = grid or default_grid(n)
    cfg = cfg or SolveConfig()
    f = MeasureDensity.from_values(grid, C / SQRT_2PI ** n)
    roots = (
        solve_constant_roots(n, p, C)
        if count_constant_solutions(n, p, C)
        else []
    )
    centres = roots or [np.sqrt(n - p)]

    seeds = list(range(perturbation_seeds))
    failures = non_converged = 0
    margins = []
    for s in seeds:
        rng = np.random.default_rng(s)
        r = centres[s % len(centres)]
        values = r * (1.0 + amplitude * even_perturbation(grid, rng))
        h0 = ball(grid, r, p).with_values(values)
        try:
            report = newton_solve(h0, f, cfg)
        except (NewtonFailure, NonConvexBodyError) as e:
            logger.debug(f"Seed {s}: no convergence ({e})")
            non_converged += 1
            continue
        h = report.solution.values
        spread = float(h.max() - h.min())
        if not roots:
            failures += 1
            logger.warning(f"Seed {s}: converged although no solution exists")
            continue
        distance = min(abs(float(h.mean()) - root) for root in roots)
        margin = CONSTANCY_TOL - max(spread, distance)
        margins.append(margin)
        if margin <= 0:
            failures += 1
            logger.warning(
                f"Seed {s}: converged to a non-constant or unknown solution "
                f"(spread {spread:.3e}, distance {distance:.3e})"
            )
    return PropertyRunRecord(
        name=f"isotropic_constancy(n={n}, p={p}, C={C})",
        trials=perturbation_seeds,
        failures=failures,
        worst_margin=min(margins) if margins else None,
        seeds=seeds,
        non_converged=non_converged,
    )
