import typing


class GminkException(Exception):
    """
    Base of every error raised by gmink.

    `code` is the process exit code the CLI reports for it.
    """

    code: int = 2

    def __init__(self, text: str, code: typing.Optional[int] = None):
        if code is not None:
            self.code = code
        self.text = text
        self.message = f"[{self.code}] {self.text}"
        super().__init__(self.message)


class DomainError(GminkException):
    pass


class GridError(DomainError):
    pass


class GridMismatchError(DomainError):
    pass


class NonConvexBodyError(DomainError):
    def __init__(self, min_eigenvalue: float, operation: str = ""):
        self.min_eigenvalue = min_eigenvalue
        where = f" in {operation}" if operation else ""
        super().__init__(
            f"Support field is not strictly convex{where}: "
            f"min eigenvalue of Hess h + hI is {min_eigenvalue:.6g}"
        )


class InvalidInputError(DomainError):
    pass
