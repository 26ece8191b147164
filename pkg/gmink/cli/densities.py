"""
Density specifications: explicit samples or a named even family.

    constant:0.04                     f = c
    cosine_even:c=0.04,a1=0.1         f = c (1 + sum_k a_k cos(2 k theta))
    harmonic_even:c=0.04,a2=0.2       f = c (1 + sum_l a_l P_l(u . e_n))

with l even in the harmonic family.

theta is the polar angle on S^1 and the colatitude on S^2.
"""
import logging
import re
import typing

import numpy as np
from scipy.special import eval_legendre

from gmink.exceptions import InvalidInputError
from gmink.types import DensitySpec
from gmink.types import DirectionGrid
from gmink.types import MeasureDensity

logger = logging.getLogger(__name__)

FAMILIES = ("constant", "cosine_even", "harmonic_even")
EVENNESS_TOL = 1e-12

_INDEXED_PARAM = re.compile(r"a(\d+)$")


def parse_density(text: str) -> DensitySpec:
    """
    Parse "name:value" or "name:key=value,key=value".
    """
    name, _, rest = text.strip().partition(":")
    if name not in FAMILIES:
        raise InvalidInputError(
            f"unknown density family {name!r} "
            f"(choose from {', '.join(FAMILIES)})"
        )
    params: typing.Dict[str, float] = {}
    for item in filter(None, (part.strip() for part in rest.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            key, value = "c", item
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise InvalidInputError(
                f"density parameter {item!r} is not a number"
            )
    if "c" not in params:
        raise InvalidInputError(f"density {text!r} needs a level c")
    return DensitySpec(kind="family", name=name, params=params)


def _coefficients(
    spec: DensitySpec, pattern: typing.Pattern, even_only: bool
) -> typing.Dict[int, float]:
    coefficients = {}
    for key, value in spec.params.items():
        if key == "c":
            continue
        match = pattern.match(key)
        if match is None:
            raise InvalidInputError(
                f"unknown parameter {key!r} for density family {spec.name!r}"
            )
        index = int(match.group(1))
        if even_only and index % 2:
            raise InvalidInputError(
                f"{spec.name} takes even degrees only, got {key!r}"
            )
        coefficients[index] = value
    return coefficients


def family_values(spec: DensitySpec, grid: DirectionGrid) -> np.ndarray:
    c = spec.params["c"]
    shape = np.ones(grid.size)
    if spec.name == "cosine_even":
        for k, a in _coefficients(spec, _INDEXED_PARAM, False).items():
            shape = shape + a * np.cos(2 * k * grid.theta)
    elif spec.name == "harmonic_even":
        axis = grid.nodes[:, -1]
        for l, a in _coefficients(spec, _INDEXED_PARAM, True).items():
            shape = shape + a * eval_legendre(l, axis)
    elif spec.name == "constant":
        if len(spec.params) > 1:
            raise InvalidInputError("constant density takes only c")
    else:
        raise InvalidInputError(f"unknown density family {spec.name!r}")
    return c * shape


def expand_density(spec: DensitySpec, grid: DirectionGrid) -> MeasureDensity:
    """
    Samples of the density on `grid`, exactly even.

    :raises InvalidInputError: wrong sample count, non-positive or clearly
        non-even samples
    """
    if spec.kind == "family":
        return MeasureDensity.from_values(grid, family_values(spec, grid))

    values = np.asarray(spec.values, dtype=float)
    if values.shape != (grid.size,):
        raise InvalidInputError(
            f"density has {values.size} samples, grid has {grid.size} nodes"
        )
    asymmetry = np.max(np.abs(values - values[grid.antipode]))
    if asymmetry > EVENNESS_TOL * max(1.0, np.max(np.abs(values))):
        raise InvalidInputError(
            f"density samples are not even "
            f"(antipodal mismatch {asymmetry:.3e})"
        )
    return MeasureDensity.from_values(grid, values)
