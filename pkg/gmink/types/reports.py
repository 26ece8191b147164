import enum
import typing

import numpy as np
from pydantic import Field
from pydantic import field_validator
from pydantic import model_validator

from .base import BaseModel
from .fields import MeasureDensity
from .fields import SupportField


class Branch(str, enum.Enum):
    SMALL = "small"
    LARGE = "large"


class ConvexityReport(BaseModel):
    min_eigenvalue: float
    is_convex: bool


class VolumeEstimate(BaseModel):
    """
    Monte Carlo estimate of a Gaussian volume with its binomial standard error.
    """

    value: float
    standard_error: float
    samples: int
    seed: int


class IsotropicReport(BaseModel):
    n: int
    p: float
    C: float
    threshold: float
    root_count: int
    roots: typing.List[float] = []

    @model_validator(mode="after")
    def _check_roots(self):
        if self.root_count != len(self.roots):
            raise ValueError("root_count must match the number of roots")
        return self


class LinearizedSpectrum(BaseModel):
    """
    Eigenvalues lambda_k of Laplacian + ((n-p) - r0^2) on spherical harmonics
    of degree k.
    """

    n: int
    p: float
    r0: float
    eigenvalues: typing.List[float]
    invertible: bool
    resonant_degree: typing.Optional[int] = None


class SolveConfig(BaseModel):
    newton_tol: float = 1e-10
    max_newton_iters: int = 50
    backtracking_factor: float = 0.5
    min_step: float = 2.0 ** -20
    initial_dt: float = 0.1
    min_dt: float = 1e-4
    convexity_guard: bool = True

    @field_validator("newton_tol", "min_step", "initial_dt", "min_dt")
    @classmethod
    def _positive(cls, v):
        if not v > 0:
            raise ValueError("tolerances and steps must be positive")
        return v

    @field_validator("max_newton_iters")
    @classmethod
    def _positive_iters(cls, v):
        if v < 1:
            raise ValueError("max_newton_iters must be at least 1")
        return v

    @field_validator("backtracking_factor")
    @classmethod
    def _factor(cls, v):
        if not 0.0 < v < 1.0:
            raise ValueError("backtracking factor must lie in (0, 1)")
        return v

    @model_validator(mode="after")
    def _steps(self):
        if not self.min_dt <= self.initial_dt <= 1.0:
            raise ValueError("need 0 < min_dt <= initial_dt <= 1")
        return self


class HomotopyPoint(BaseModel):
    t: float
    gamma_n: float
    residual_sup: float


class AprioriReport(BaseModel):
    """
    Ranges of the quantities bounded by the a priori estimates.
    """

    h_min: float
    h_max: float
    support_norm_min: float  # sqrt(|grad h|^2 + h^2)
    support_norm_max: float
    eigenvalue_min: float  # of Hess h + h I
    eigenvalue_max: float
    euclidean_volume: float
    positive_and_finite: bool
    near_degenerate: bool


class SolveReport(BaseModel):
    solution: SupportField
    branch: typing.Optional[Branch] = None
    gamma_n: float
    residual_sup: float
    newton_history: typing.List[float] = []
    homotopy_trace: typing.List[HomotopyPoint] = []
    apriori: typing.Optional[AprioriReport] = None
    gamma_crossing: bool = False
    start_radius: typing.Optional[float] = None  # isotropic start h = r0

    @model_validator(mode="after")
    def _check_trace(self):
        ts = [point.t for point in self.homotopy_trace]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("homotopy trace t-values must increase")
        return self


class HomotopyDensity(BaseModel):
    """
    f_t = (1 - t) c0 + t f_target.
    """

    c0: float = Field(gt=0)
    f_target: MeasureDensity
    t: float = Field(ge=0.0, le=1.0)

    @property
    def values(self) -> np.ndarray:
        return (1.0 - self.t) * self.c0 + self.t * self.f_target.values

    def at(self, t: float) -> "HomotopyDensity":
        return HomotopyDensity(c0=self.c0, f_target=self.f_target, t=t)

    def density(self) -> MeasureDensity:
        return MeasureDensity.from_values(self.f_target.grid, self.values)


class PropertyRunRecord(BaseModel):
    name: str
    trials: int = 0
    failures: int = 0
    worst_margin: typing.Optional[float] = None
    seeds: typing.List[int] = []
    non_converged: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def merge(self, other: "PropertyRunRecord") -> "PropertyRunRecord":
        return PropertyRunRecord(
            name=self.name,
            trials=self.trials + other.trials,
            failures=self.failures + other.failures,
            worst_margin=_min_margin(self.worst_margin, other.worst_margin),
            seeds=self.seeds + other.seeds,
            non_converged=self.non_converged + other.non_converged,
        )


def _min_margin(a: typing.Optional[float], b: typing.Optional[float]):
    margins = [m for m in (a, b) if m is not None]
    return min(margins) if margins else None


class BranchOrdering(BaseModel):
    """
    Comparison of the small- and large-branch solutions of one density.

    `start_ordered` and `gamma_ordered` are expected to hold; the final
    pointwise ordering is only reported.
    """

    # h_small < h_large and gamma_small < gamma_large at t=0
    start_ordered: bool
    gamma_ordered: bool  # gamma_n(small) < gamma_n(large) at t=1
    pointwise_ordered: bool  # h_small < h_large at every node at t=1
    min_gap: float  # min over nodes of h_large - h_small
    hausdorff_distance: float
