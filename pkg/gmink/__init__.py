from .background import BackgroundTask
from .exceptions import GminkException
from .exceptions import SolveFailure
from .geometry import ball
from .geometry import build_grid
from .geometry import default_grid
from .geometry import differentiate
from .geometry import support_field
from .isotropic import count_constant_solutions
from .isotropic import isotropic_threshold
from .isotropic import linearized_spectrum
from .isotropic import solve_constant_roots
from .measures import gaussian_volume
from .measures import gaussian_volume_mc
from .measures import surface_measure_density
from .solver import homotopy_solve
from .solver import newton_solve
from .types import Branch
from .types import MeasureDensity
from .types import SolveConfig
from .types import SupportField

__author__ = """gmink developers"""
