from .errors import DomainError
from .errors import GminkException
from .errors import GridError
from .errors import GridMismatchError
from .errors import InvalidInputError
from .errors import NonConvexBodyError
from .errors_dispatcher import ErrorDispatcher
from .errors_dispatcher import ErrorHandler
from .errors_io import BodyFileError
from .errors_io import SchemaVersionError
from .errors_solver import ContinuationCollapse
from .errors_solver import DegenerateStartError
from .errors_solver import NewtonFailure
from .errors_solver import RejectionCapExceeded
from .errors_solver import SolveFailure
