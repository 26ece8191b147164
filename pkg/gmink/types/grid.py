import math
import typing

import numpy as np
from pydantic import field_validator
from pydantic import model_validator

from .base import BaseModel
from .base import readonly_array
from gmink.constants import UNIT_NORM_TOL
from gmink.constants import WEIGHT_SUM_TOL
from gmink.exceptions import GridError


class DirectionGrid(BaseModel):
    """
    Quadrature nodes and weights on S^{n-1}.

    Nodes of S^1 are ordered by angle; nodes of S^2 are latitude-major
    (index = i_lat * n_lon + i_lon) with colatitudes increasing.
    `antipode[i]` is the index of -nodes[i].
    """

    dim: int
    resolution: typing.Tuple[int, ...]
    nodes: np.ndarray
    weights: np.ndarray
    antipode: np.ndarray
    theta: np.ndarray  # angle on S^1, colatitude on S^2 (per node)
    phi: typing.Optional[np.ndarray] = None  # longitude on S^2 (per node)

    @field_validator("nodes", "weights", "theta", "phi", mode="before")
    @classmethod
    def _freeze_float(cls, v):
        if v is None:
            return v
        return readonly_array(v)

    @field_validator("antipode", mode="before")
    @classmethod
    def _freeze_index(cls, v):
        return readonly_array(v, dtype=np.intp)

    @model_validator(mode="after")
    def _check_quadrature(self):
        norms = np.linalg.norm(self.nodes, axis=1)
        if np.max(np.abs(norms - 1.0)) > UNIT_NORM_TOL:
            raise GridError("grid nodes must be unit vectors")
        # |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2)
        area = 2.0 * math.pi ** (0.5 * self.dim) / math.gamma(0.5 * self.dim)
        if abs(float(self.weights.sum()) - area) > WEIGHT_SUM_TOL * area:
            raise GridError(
                f"quadrature weights sum to {self.weights.sum()!r}, "
                f"expected {area!r}"
            )
        return self

    @property
    def key(self) -> typing.Tuple[int, typing.Tuple[int, ...]]:
        """
        Hashable identity of the grid, used to cache operators.
        :return:
        """
        return self.dim, tuple(self.resolution)

    @property
    def size(self) -> int:
        return int(self.weights.shape[0])

    @property
    def total_measure(self) -> float:
        return float(self.weights.sum())

    @property
    def e_theta(self) -> np.ndarray:
        """
        Unit tangent in the direction of increasing theta, per node.
        """
        if self.dim == 2:
            return np.stack([-np.sin(self.theta), np.cos(self.theta)], axis=1)
        return np.stack(
            [
                np.cos(self.theta) * np.cos(self.phi),
                np.cos(self.theta) * np.sin(self.phi),
                -np.sin(self.theta),
            ],
            axis=1,
        )

    @property
    def e_phi(self) -> np.ndarray:
        if self.dim == 2:
            raise AttributeError("S^1 has a one-dimensional tangent frame")
        return np.stack(
            [-np.sin(self.phi), np.cos(self.phi), np.zeros_like(self.phi)],
            axis=1,
        )

    def tangent_frame(self) -> typing.List[np.ndarray]:
        if self.dim == 2:
            return [self.e_theta]
        return [self.e_theta, self.e_phi]

    def integrate(self, values: np.ndarray) -> float:
        return float(np.dot(self.weights, values))

    def same_as(self, other: "DirectionGrid") -> bool:
        return self.key == other.key
