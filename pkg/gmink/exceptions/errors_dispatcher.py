import logging
import typing

from gmink.exceptions.errors import GminkException

logger = logging.getLogger(__name__)


class ErrorHandler:
    def __init__(self, error_type: typing.Type[BaseException], handler):
        self.handler: typing.Callable[[BaseException], int] = handler
        self.error_type = error_type

    def execute(self, error: BaseException) -> int:
        """
        Execute error handler
        :param error:
        :return: exit code
        """
        try:
            return self.handler(error)
        except Exception:  # noqa
            logger.exception("Exception occured in error handler...: ")
            return 2


class ErrorDispatcher:
    """
    Turns exceptions into exit codes.

    Handlers are tried most-recently-registered first; the first one whose
    type matches wins. GminkException falls back to its own `code`.
    """

    def __init__(self, stream: typing.Callable[[str], typing.Any] = None):
        self._stream = stream
        self._handlers: typing.List[ErrorHandler] = []

        self._handlers.append(
            ErrorHandler(GminkException, self._gmink_exception_handler)
        )

    def _emit(self, text: str) -> None:
        if self._stream is not None:
            self._stream(text)

    def _gmink_exception_handler(self, error: GminkException) -> int:
        logger.debug(f"Handled {type(error).__name__}: {error.text}")
        self._emit(f"error: {error.text}")
        return error.code

    def error_handler(self, error_type: typing.Type[BaseException]):
        def decorator(func: typing.Callable):
            self.register_error_handler(error_type, func)
            return func

        return decorator

    def register_error_handler(self, error_type, func):
        self._handlers.append(ErrorHandler(error_type, func))

    def error_handle(self, error: BaseException) -> int:
        for handler in reversed(self._handlers):
            if isinstance(error, handler.error_type):
                return handler.execute(error)
        raise error
