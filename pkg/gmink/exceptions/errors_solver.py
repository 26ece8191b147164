import typing

from .errors import GminkException


class SolveFailure(GminkException):
    """
    A solve that did not reach its tolerance.

    Carries enough state for the caller to decide what to do next:
    homotopy step control shrinks the step on `NewtonFailure`.
    """

    code = 1

    def __init__(
        self,
        reason: str,
        *,
        history: typing.Sequence[float] = (),
        trace: typing.Sequence[typing.Any] = (),
        last_iterate: typing.Any = None,
    ):
        self.reason = reason
        self.history = list(history)
        self.trace = list(trace)
        self.last_iterate = last_iterate
        super().__init__(reason)


class NewtonFailure(SolveFailure):
    STALL = "line-search stall"
    ITERATION_CAP = "iteration cap"
    CONVEXITY_LOSS = "convexity loss"
    SINGULAR = "singular jacobian"


class ContinuationCollapse(SolveFailure):
    pass


class DegenerateStartError(SolveFailure):
    pass


class RejectionCapExceeded(GminkException):
    code = 1
