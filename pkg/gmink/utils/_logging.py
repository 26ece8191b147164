import functools
import logging
import os
from timeit import default_timer as timer


def time_logging(logger):
    def wrapper(func):
        @functools.wraps(func)
        def wrapped(*args, **kwargs):
            timer_start = timer()
            logger.debug(f"Start processing ({func.__qualname__})...")
            result = func(*args, **kwargs)
            time_result = timer() - timer_start
            logger.debug(
                f"({func.__qualname__}) processed. "
                f"Took {time_result:.3f} seconds."
            )
            return result

        return wrapped

    return wrapper


def log_level_from_env(default: str = "info") -> str:
    """
    Map GMINK_LOG (quiet, info, trace) to a logging level name.
    :return:
    """
    from gmink.constants import LOG_ENV_VAR
    from gmink.constants import LOG_LEVELS

    raw = os.environ.get(LOG_ENV_VAR, default).strip().lower()
    if raw not in LOG_LEVELS:
        logging.getLogger(__name__).warning(
            f"Unknown {LOG_ENV_VAR}={raw!r}, falling back to {default!r}."
        )
        raw = default
    return LOG_LEVELS[raw]


def configure_logging() -> None:
    logging.basicConfig(
        level=log_level_from_env(),
        format="%(levelname)s %(name)s: %(message)s",
    )
