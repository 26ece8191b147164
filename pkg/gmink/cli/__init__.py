from .app import build_parser
from .app import main
from .densities import expand_density
from .densities import parse_density
from .io import read_body
from .io import read_density_spec
from .io import write_body
from .io import write_density
from .io import write_report
from .io import write_trace_csv
