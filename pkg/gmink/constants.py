"""
A file which contains all project constants.
"""
import math

from gmink.utils.json import AbstractJsonLibrary
from gmink.utils.json import JsonLibrary

SCHEMA_VERSION: int = 1  # bump on any incompatible change of file formats

SQRT_2PI: float = math.sqrt(2.0 * math.pi)

SUPPORTED_DIMS = (2, 3)  # ambient dimensions of the PDE machinery
MIN_RESOLUTION: int = 8  # nodes per angular direction

DEFAULT_GRID_S1 = (256,)
DEFAULT_GRID_S2 = (32, 64)

UNIT_NORM_TOL: float = 1e-12
WEIGHT_SUM_TOL: float = 1e-10
THRESHOLD_REL_TOL: float = 1e-12  # knife edge of the isotropic trichotomy
DEGENERATE_SPECTRUM_TOL: float = 1e-8
NEAR_DEGENERATE_EIGENVALUE: float = 1e-6
BRANCH_COLLAPSE_DISTANCE: float = 1e-6
DEGENERATE_START_PERTURBATION: float = 0.01  # relative nudge of c0

MC_CHUNK_SIZE: int = 2 ** 16  # samples per independently seeded chunk
REJECTION_CAP: int = 1000

CSV_FLOAT_FORMAT: str = "{:.17g}"
TRACE_CSV_HEADER: str = "t,gamma_n,residual_sup"

LOG_ENV_VAR: str = "GMINK_LOG"
LOG_LEVELS: dict = {"quiet": "WARNING", "info": "INFO", "trace": "DEBUG"}

try:
    import orjson  # noqa
    from orjson import JSONDecodeError as _JSONDecodeError_orjson
except ImportError:
    orjson = None
    _JSONDecodeError_orjson = None

if not orjson:
    import json
    from json import JSONDecodeError as _JSONDecodeError_json
else:
    json = None
    _JSONDecodeError_json = None

_json_decode_errors = [_JSONDecodeError_json, _JSONDecodeError_orjson]

_JSONLIB: AbstractJsonLibrary = [lib for lib in [orjson, json] if lib][
    0
]  # noqa
JSON_LIBRARY = JsonLibrary(_JSONLIB)
del _JSONLIB

JSONDecodeError = tuple([error for error in _json_decode_errors if error])
del _json_decode_errors
