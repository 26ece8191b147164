import typing

import numpy as np

from gmink.types import DirectionGrid
from gmink.types import SupportField


def support_field(
    grid: DirectionGrid, values: typing.Any, p: float = 1.0
) -> SupportField:
    """
    Build a SupportField; a scalar becomes the constant field of a ball.
    """
    values = np.asarray(values, dtype=float)
    if values.shape == ():
        values = np.full(grid.size, float(values))
    return SupportField(grid=grid, values=values, p=p)


def ball(grid: DirectionGrid, radius: float, p: float = 1.0) -> SupportField:
    return support_field(grid, radius, p)
