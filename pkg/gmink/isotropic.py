"""
Constant solutions of the isotropic equation
h^{1-p} e^{-(|grad h|^2 + h^2)/2} det(Hess h + h I) = C,
which for h = r reduces to g(r) = r^{n-p} e^{-r^2/2} = C.
"""
import logging
import math
import typing

import numpy as np
from scipy.optimize import brentq

from gmink.constants import DEGENERATE_SPECTRUM_TOL
from gmink.constants import THRESHOLD_REL_TOL
from gmink.exceptions import DomainError
from gmink.types import IsotropicReport
from gmink.types import LinearizedSpectrum

logger = logging.getLogger(__name__)

ROOT_RESIDUAL_TOL = 1e-14
BRENT_RTOL = 4.0 * float(np.finfo(float).eps)
LOG_TINY = math.log(float(np.finfo(float).tiny))


def _check_domain(n: int, p: float) -> float:
    if n < 2:
        raise DomainError(f"dimension must be at least 2, got {n!r}")
    if not 1.0 <= p < n:
        raise DomainError(f"need 1 <= p < n, got p={p!r}, n={n!r}")
    return n - p


def isotropic_threshold(n: int, p: float) -> float:
    """
    max of g, attained at r* = sqrt(n - p): e^{-(n-p)/2} (n-p)^{(n-p)/2}.
    """
    q = _check_domain(n, p)
    return math.exp(-0.5 * q) * q ** (0.5 * q)


def count_constant_solutions(n: int, p: float, C: float) -> int:
    threshold = isotropic_threshold(n, p)
    if C <= 0:
        raise DomainError(f"C must be positive, got {C!r}")
    if abs(C - threshold) <= THRESHOLD_REL_TOL * threshold:
        return 1
    return 2 if C < threshold else 0


def _polish(r: float, q: float, log_c: float) -> float:
    """
    Newton on (n - p) log r - r^2/2 - log C.
    """
    for _ in range(8):
        value = q * math.log(r) - 0.5 * r * r - log_c
        slope = q / r - r
        if slope == 0.0:
            break
        step = value / slope
        r -= step
        if abs(value) <= ROOT_RESIDUAL_TOL or abs(step) <= 1e-16 * r:
            break
    return r


def _log_equation(s: float, q: float, log_c: float) -> float:
    """
    log g(e^s) - log C, i.e. (n - p) s - e^{2s}/2 - log C.
    """
    return q * s - 0.5 * math.exp(2.0 * s) - log_c


def solve_constant_log_roots(
    n: int, p: float, C: float
) -> typing.List[float]:
    """
    Sorted roots s = log r of r^{n-p} e^{-r^2/2} = C.

    Always representable, even when the small root r underflows.
    """
    count = count_constant_solutions(n, p, C)
    q = n - p
    s_star = 0.5 * math.log(q)
    if count == 0:
        raise DomainError(
            f"C={C!r} exceeds the isotropic threshold "
            f"{isotropic_threshold(n, p)!r}: no constant solution"
        )
    if count == 1:
        return [s_star]

    log_c = math.log(C)
    # q s - e^{2s}/2 < q s, so the equation is negative at log C / q - log 2
    lo = log_c / q - math.log(2.0)
    hi = max(s_star + math.log(2.0), 0.0)
    while _log_equation(hi, q, log_c) >= 0.0:
        hi += math.log(2.0)
    args = (q, log_c)
    small = brentq(_log_equation, lo, s_star, args=args, rtol=BRENT_RTOL)
    large = brentq(_log_equation, s_star, hi, args=args, rtol=BRENT_RTOL)
    return [small, large]


def solve_constant_roots(n: int, p: float, C: float) -> typing.List[float]:
    """
    Sorted positive roots of r^{n-p} e^{-r^2/2} = C.
    :return: two roots straddling sqrt(n - p), one at the threshold
    :raises DomainError: no root, or the small root is below the smallest
        positive double (use `solve_constant_log_roots`)
    """
    log_roots = solve_constant_log_roots(n, p, C)
    if len(log_roots) == 1:
        return [math.sqrt(n - p)]
    if log_roots[0] < LOG_TINY:
        raise DomainError(
            f"the small constant root for C={C!r} is exp({log_roots[0]!r}), "
            f"below the double precision range"
        )
    q, log_c = n - p, math.log(C)
    roots = [_polish(math.exp(s), q, log_c) for s in log_roots]
    logger.debug(f"Constant roots for n={n}, p={p}, C={C}: {roots}")
    return roots


def isotropic_report(n: int, p: float, C: float) -> IsotropicReport:
    count = count_constant_solutions(n, p, C)
    roots = solve_constant_roots(n, p, C) if count else []
    return IsotropicReport(
        n=n,
        p=p,
        C=C,
        threshold=isotropic_threshold(n, p),
        root_count=count,
        roots=roots,
    )


def _resonant_degree(n: int, shift: float) -> typing.Optional[int]:
    """
    Integer k >= 0 with k(k + n - 2) == shift, if any (within tolerance).
    """
    if shift < -DEGENERATE_SPECTRUM_TOL:
        return None
    b = n - 2
    k_real = 0.5 * (-b + math.sqrt(b * b + 4.0 * max(shift, 0.0)))
    for k in {math.floor(k_real), math.ceil(k_real)}:
        if k >= 0 and abs(k * (k + b) - shift) <= DEGENERATE_SPECTRUM_TOL:
            return int(k)
    return None


def linearized_spectrum(
    n: int, p: float, r0: float, k_max: int = 4
) -> LinearizedSpectrum:
    """
    lambda_k = ((n - p) - r0^2) - k(k + n - 2), k = 0..k_max, of the operator
    Laplacian + ((n - p) - r0^2) on spherical harmonics of degree k.

    Invertibility is decided over all k >= 0, not only up to k_max.
    """
    if r0 <= 0:
        raise DomainError(f"r0 must be positive, got {r0!r}")
    shift = (n - p) - r0 * r0
    eigenvalues = [shift - k * (k + n - 2) for k in range(k_max + 1)]
    resonant = _resonant_degree(n, shift)
    return LinearizedSpectrum(
        n=n,
        p=p,
        r0=r0,
        eigenvalues=eigenvalues,
        invertible=resonant is None,
        resonant_degree=resonant,
    )
