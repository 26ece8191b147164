import logging
import typing

import numpy as np

from gmink.constants import SQRT_2PI
from gmink.exceptions import GridMismatchError
from gmink.exceptions import InvalidInputError
from gmink.geometry import differentiate
from gmink.types import BodyGeometry
from gmink.types import MeasureDensity
from gmink.types import SupportField

logger = logging.getLogger(__name__)


def check_same_grid(h: SupportField, f: MeasureDensity) -> None:
    if not h.grid.same_as(f.grid):
        raise GridMismatchError(
            f"support field on {h.grid.key}, density on {f.grid.key}"
        )


def measure_factor(h: SupportField, geometry: BodyGeometry) -> np.ndarray:
    """
    E = (2 pi)^{n/2} exp((|grad h|^2 + h^2) / 2) h^{p-1}, so that the
    equation reads det(Hess h + h I) = E f.
    """
    values = h.values
    return (
        SQRT_2PI ** h.dim
        * np.exp(0.5 * (geometry.gradient_sq + values ** 2))
        * values ** (h.p - 1.0)
    )


def residual_with_geometry(
    h: SupportField, f: MeasureDensity
) -> typing.Tuple[np.ndarray, BodyGeometry]:
    check_same_grid(h, f)
    geometry = differentiate(h)
    dets = geometry.gauss_map_dets
    return dets - measure_factor(h, geometry) * f.values, geometry


def residual(h: SupportField, f: MeasureDensity) -> np.ndarray:
    """
    F = det(Hess h + h I) - (2 pi)^{n/2} e^{(|grad h|^2 + h^2)/2} h^{p-1} f.

    h solves the Minkowski problem for f exactly when F vanishes.
    Non-convex h is allowed (line search evaluates such points).
    """
    return residual_with_geometry(h, f)[0]


def residual_sup(h: SupportField, f: MeasureDensity) -> float:
    return float(np.max(np.abs(residual(h, f))))


def trial_field(h: SupportField, values: np.ndarray) -> SupportField:
    """
    Like h.with_values, but reports unusable samples as InvalidInputError
    before pydantic does.
    """
    if not np.all(np.isfinite(values)) or np.any(values <= 0.0):
        raise InvalidInputError("trial support function is not positive")
    return h.with_values(values)
