from .calculus import differentiate
from .fields import ball
from .fields import support_field
from .grid import build_grid
from .grid import default_grid
from .metrics import convexity_check
from .metrics import euclidean_volume
from .metrics import hausdorff_distance
from .metrics import hessian_eigenvalues
from .metrics import require_convex
from .metrics import symmetrize_even
from .operators import operators_for
from .radial import radial_at_nodes
from .radial import radial_from_support
from .radial import support_ratio_peak
