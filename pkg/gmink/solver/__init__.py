from .apriori import apriori_check
from .homotopy import homotopy_solve
from .homotopy import isotropic_start
from .jacobian import assemble_jacobian
from .newton import newton_solve
from .ordering import branch_ordering
from .residual import residual
from .residual import residual_sup
