"""
Schema-versioned text artifacts: bodies, densities, reports and traces.
"""
import enum
import logging
import os
import tempfile
import typing

import numpy as np
from pydantic import ValidationError

from gmink.constants import CSV_FLOAT_FORMAT
from gmink.constants import JSON_LIBRARY
from gmink.constants import JSONDecodeError
from gmink.constants import SCHEMA_VERSION
from gmink.constants import TRACE_CSV_HEADER
from gmink.exceptions import BodyFileError
from gmink.exceptions import SchemaVersionError
from gmink.geometry import build_grid
from gmink.types import BaseModel
from gmink.types import BodyFile
from gmink.types import DensitySpec
from gmink.types import HomotopyPoint
from gmink.types import MeasureDensity
from gmink.types import SolveReport
from gmink.types import SupportField

logger = logging.getLogger(__name__)

PathLike = typing.Union[str, os.PathLike]


def atomic_write(path: PathLike, text: str) -> None:
    """
    Write UTF-8 text through a temporary file in the target directory,
    then rename it over `path`.
    """
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".gmink-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as stream:
            stream.write(text)
            stream.flush()
            os.fsync(stream.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    logger.debug(f"Wrote {path}")


def _read_document(path: PathLike) -> dict:
    try:
        with open(path, "rb") as stream:
            raw = stream.read()
    except OSError as e:
        raise BodyFileError(path, f"cannot read file ({e.strerror})")
    try:
        document = JSON_LIBRARY.loads(raw)
    except JSONDecodeError + (UnicodeDecodeError,) as e:
        raise BodyFileError(path, f"malformed document ({e})")
    if not isinstance(document, dict):
        raise BodyFileError(path, "top level must be an object")
    version = document.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(path, version, SCHEMA_VERSION)
    return document


def _plain(value: typing.Any) -> typing.Any:
    """
    Recursively turn numpy scalars/arrays, enums and models into JSON types.
    """
    if isinstance(value, BaseModel):
        return {k: _plain(v) for k, v in value}
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, enum.Enum):
        return value.value
    return value


def body_file(h: SupportField) -> BodyFile:
    return BodyFile(
        schema_version=SCHEMA_VERSION,
        dim=h.grid.dim,
        grid=list(h.grid.resolution),
        p=float(h.p),
        values=[float(v) for v in h.values],
    )


def body_document(h: SupportField) -> dict:
    return body_file(h).model_dump()


def write_body(path: PathLike, h: SupportField) -> None:
    atomic_write(path, JSON_LIBRARY.dumps(body_document(h)))


def read_body(path: PathLike) -> SupportField:
    """
    :raises SchemaVersionError: the file was written by another schema
    :raises BodyFileError: unreadable or malformed file
    :raises InvalidInputError: samples do not fit the grid or are not positive
    """
    document = _read_document(path)
    try:
        record = BodyFile(**document)
    except ValidationError as e:
        raise BodyFileError(
            path, f"invalid body file ({e.error_count()} errors)"
        )
    grid = build_grid(record.dim, record.grid)
    return SupportField(grid=grid, values=record.values, p=record.p)


def density_document(d: MeasureDensity) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "samples",
        "dim": d.grid.dim,
        "grid": list(d.grid.resolution),
        "l1_norm": float(d.l1_norm),
        "values": [float(v) for v in d.values],
    }


def write_density(path: PathLike, d: MeasureDensity) -> None:
    atomic_write(path, JSON_LIBRARY.dumps(density_document(d)))


def read_density_spec(path: PathLike) -> DensitySpec:
    document = _read_document(path)
    try:
        return DensitySpec(
            kind=document.get("kind", "samples"),
            values=document.get("values"),
            name=document.get("name"),
            params=document.get("params") or {},
        )
    except ValidationError as e:
        raise BodyFileError(
            path, f"invalid density file ({e.error_count()} errors)"
        )


def report_document(report: BaseModel) -> dict:
    """
    Plain dict of any report; a SolveReport's solution is stored as a body.
    """
    if isinstance(report, SolveReport):
        document = _plain(report.model_copy(update={"solution": None}))
        document["solution"] = body_document(report.solution)
    else:
        document = _plain(report)
    document["schema_version"] = SCHEMA_VERSION
    return document


def write_report(
    path: PathLike, report: typing.Union[BaseModel, dict]
) -> None:
    if isinstance(report, dict):
        document = dict(report, schema_version=SCHEMA_VERSION)
    else:
        document = report_document(report)
    atomic_write(path, JSON_LIBRARY.dumps(_plain(document)))


def trace_csv(trace: typing.Sequence[HomotopyPoint]) -> str:
    lines = [TRACE_CSV_HEADER]
    for point in trace:
        lines.append(
            ",".join(
                CSV_FLOAT_FORMAT.format(v)
                for v in (point.t, point.gamma_n, point.residual_sup)
            )
        )
    return "\n".join(lines) + "\n"


def write_trace_csv(
    path: PathLike, trace: typing.Sequence[HomotopyPoint]
) -> None:
    atomic_write(path, trace_csv(trace))
