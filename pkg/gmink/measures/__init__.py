from .scalars import ball_radius_for_volume
from .scalars import gamma_cdf
from .scalars import gamma_inv
from .scalars import gaussian_ball_volume
from .scalars import phi
from .scalars import radial_integral
from .scalars import sphere_area
from .surface import integrate_against
from .surface import integrate_against_radial
from .surface import isoperimetric_lower_bound
from .surface import large_branch_mass_threshold
from .surface import small_branch_mass_threshold
from .surface import surface_measure_density
from .surface import surface_measure_total
from .surface import surface_measure_total_radial
from .volume import gaussian_volume
from .volume import gaussian_volume_mc
