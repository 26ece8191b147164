import logging
import math

import numpy as np

from .scalars import radial_integral
from gmink.background import run_in_background
from gmink.constants import MC_CHUNK_SIZE
from gmink.constants import SQRT_2PI
from gmink.exceptions import DomainError
from gmink.geometry import radial_at_nodes
from gmink.geometry import require_convex
from gmink.geometry import support_ratio_peak
from gmink.types import SupportField
from gmink.types import VolumeEstimate
from gmink.utils import time_logging

logger = logging.getLogger(__name__)

MIN_MC_SAMPLES = 10 ** 4


def gaussian_volume(h: SupportField) -> float:
    """
    gamma_n(K) by the polar formula (2 pi)^{-n/2} sum_i w_i g_n(rho(u_i)).
    :param h: convex positive support field
    :return:
    """
    require_convex(h, "gaussian_volume")
    rho, _ = radial_at_nodes(h)
    n = h.grid.dim
    return h.grid.integrate(radial_integral(n, rho)) / SQRT_2PI ** n


def _count_inside(h: SupportField, seed: int, chunk: int, count: int) -> int:
    rng = np.random.default_rng([seed, chunk])
    x = rng.standard_normal((count, h.grid.dim))
    r = np.linalg.norm(x, axis=1)
    r = np.where(r > 0.0, r, np.finfo(float).tiny)
    peaks, _ = support_ratio_peak(h, x / r[:, None])
    # x lies in K iff x . v <= h(v) for every normal v
    return int(np.count_nonzero(r * peaks <= 1.0))


@time_logging(logger)
def gaussian_volume_mc(
    h: SupportField, samples: int, seed: int, workers: int = 1
) -> VolumeEstimate:
    """
    Monte Carlo estimate of gamma_n(K).

    Samples are drawn in fixed-size chunks, chunk i seeded by (seed, i),
    so the estimate does not depend on `workers`.

    :param h:
    :param samples: at least 10^4
    :param seed:
    :param workers: number of chunks evaluated concurrently
    :return:
    """
    if samples < MIN_MC_SAMPLES:
        raise DomainError(
            f"Monte Carlo needs at least {MIN_MC_SAMPLES} samples, "
            f"got {samples}"
        )
    sizes = [MC_CHUNK_SIZE] * (samples // MC_CHUNK_SIZE)
    if samples % MC_CHUNK_SIZE:
        sizes.append(samples % MC_CHUNK_SIZE)
    jobs = [
        (lambda i=i, size=size: _count_inside(h, seed, i, size))
        for i, size in enumerate(sizes)
    ]
    inside = sum(run_in_background(jobs, workers=workers))
    value = inside / samples
    error = math.sqrt(value * (1.0 - value) / samples)
    logger.debug(
        f"Monte Carlo volume {value:.6f} +- {error:.2e} from {samples} samples"
    )
    return VolumeEstimate(
        value=value, standard_error=error, samples=samples, seed=seed
    )
