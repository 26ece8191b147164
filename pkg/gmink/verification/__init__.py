from .bodies import even_harmonic_basis
from .bodies import even_perturbation
from .bodies import random_even_body
from .bodies import random_even_density
from .suites import check_isoperimetric
from .suites import check_weak_convergence
from .suites import probe_isotropic_constancy
from .suites import weak_convergence_gaps
