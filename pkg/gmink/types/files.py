import typing

from pydantic import model_validator

from .base import BaseModel
from gmink.constants import SCHEMA_VERSION


class BodyFile(BaseModel):
    """
    On-disk form of a support field; values in grid node order.
    """

    schema_version: int = SCHEMA_VERSION
    dim: int
    grid: typing.List[int]
    p: float
    values: typing.List[float]


class DensitySpec(BaseModel):
    """
    Either explicit samples or a named family expanded on the target grid.

    Families: constant (c),
    cosine_even (c, a1, a2, ...: c(1 + sum a_k cos 2k theta)),
    harmonic_even (c, a2, a4, a6: c(1 + sum a_l P_l(u . e_n))).
    """

    kind: str
    values: typing.Optional[typing.List[float]] = None
    name: typing.Optional[str] = None
    params: typing.Dict[str, float] = {}

    @model_validator(mode="after")
    def _check_kind(self):
        if self.kind == "samples" and self.values is None:
            raise ValueError("a 'samples' density needs values")
        if self.kind == "family" and self.name is None:
            raise ValueError("a 'family' density needs a name")
        if self.kind not in ("samples", "family"):
            raise ValueError(f"unknown density kind {self.kind!r}")
        return self
