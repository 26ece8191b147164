from .base import BaseModel
from .fields import BodyGeometry
from .fields import MeasureDensity
from .fields import SupportField
from .files import BodyFile
from .files import DensitySpec
from .grid import DirectionGrid
from .reports import AprioriReport
from .reports import BranchOrdering
from .reports import Branch
from .reports import ConvexityReport
from .reports import HomotopyDensity
from .reports import HomotopyPoint
from .reports import IsotropicReport
from .reports import LinearizedSpectrum
from .reports import PropertyRunRecord
from .reports import SolveConfig
from .reports import SolveReport
from .reports import VolumeEstimate
