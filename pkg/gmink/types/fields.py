import typing

import numpy as np
from pydantic import field_validator
from pydantic import model_validator

from .base import BaseModel
from .base import readonly_array
from .grid import DirectionGrid
from gmink.exceptions import InvalidInputError

L1_NORM_TOL = 1e-12


def even_part(values: np.ndarray, grid: DirectionGrid) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    return 0.5 * (values + values[grid.antipode])


class SupportField(BaseModel):
    """
    Sampled support function h of an o-symmetric body, with its L_p parameter.

    Positivity and sample count are checked here; convexity is not, so
    Newton can represent trial iterates that leave the convex cone.
    """

    grid: DirectionGrid
    values: np.ndarray
    p: float = 1.0

    @field_validator("values", mode="before")
    @classmethod
    def _freeze(cls, v):
        return readonly_array(v)

    @model_validator(mode="after")
    def _check_samples(self):
        if self.values.shape != (self.grid.size,):
            raise InvalidInputError(
                f"support field has {self.values.size} samples, "
                f"grid has {self.grid.size} nodes"
            )
        if not np.all(np.isfinite(self.values)):
            raise InvalidInputError("support field has non-finite samples")
        if np.any(self.values <= 0.0):
            raise InvalidInputError(
                "support function must be positive (origin in the interior)"
            )
        return self

    @property
    def dim(self) -> int:
        return self.grid.dim

    def with_values(self, values: np.ndarray) -> "SupportField":
        return SupportField(grid=self.grid, values=values, p=self.p)

    def is_even(self) -> bool:
        mirrored = self.values[self.grid.antipode]
        return bool(np.array_equal(self.values, mirrored))


class BodyGeometry(BaseModel):
    """
    Derivative data of a support field.

    gradient and hessian are components in the orthonormal tangent frame
    (e_theta) on S^1, (e_theta, e_phi) on S^2.
    """

    gradient: np.ndarray  # (M, n-1)
    hessian: np.ndarray  # (M, n-1, n-1), covariant Hessian of h
    boundary_points: np.ndarray  # (M, n), x(v) = grad h + h v
    gauss_map_dets: np.ndarray  # (M,), det(Hess h + h I)
    radial: typing.Optional[np.ndarray] = None  # (M,), rho at the nodes

    @field_validator(
        "gradient",
        "hessian",
        "boundary_points",
        "gauss_map_dets",
        "radial",
        mode="before",
    )
    @classmethod
    def _freeze(cls, v):
        if v is None:
            return v
        return readonly_array(v)

    @property
    def gradient_sq(self) -> np.ndarray:
        return np.sum(self.gradient ** 2, axis=1)


class MeasureDensity(BaseModel):
    """
    Density f of an even measure d mu = f dv on the grid.
    """

    grid: DirectionGrid
    values: np.ndarray
    l1_norm: float

    @field_validator("values", mode="before")
    @classmethod
    def _freeze(cls, v):
        return readonly_array(v)

    @model_validator(mode="after")
    def _check_samples(self):
        if self.values.shape != (self.grid.size,):
            raise InvalidInputError(
                f"density has {self.values.size} samples, "
                f"grid has {self.grid.size} nodes"
            )
        if not np.all(np.isfinite(self.values)) or np.any(self.values <= 0):
            raise InvalidInputError("density samples must be positive")
        quadrature = self.grid.integrate(self.values)
        if abs(quadrature - self.l1_norm) > L1_NORM_TOL * max(1.0, quadrature):
            raise InvalidInputError(
                f"l1_norm {self.l1_norm!r} disagrees with quadrature "
                f"{quadrature!r}"
            )
        return self

    @classmethod
    def from_values(
        cls, grid: DirectionGrid, values: typing.Any
    ) -> "MeasureDensity":
        """
        Build an exactly even density, replacing antipodal pairs by their mean.
        :param grid:
        :param values:
        :return:
        """
        values = np.asarray(values, dtype=float)
        if values.shape == ():
            values = np.full(grid.size, float(values))
        if values.shape != (grid.size,):
            raise InvalidInputError(
                f"density has {values.size} samples, "
                f"grid has {grid.size} nodes"
            )
        values = even_part(values, grid)
        return cls(grid=grid, values=values, l1_norm=grid.integrate(values))

    @property
    def mean(self) -> float:
        return self.l1_norm / self.grid.total_measure
