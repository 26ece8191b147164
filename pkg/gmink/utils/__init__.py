from ._logging import configure_logging
from ._logging import log_level_from_env
from ._logging import time_logging
