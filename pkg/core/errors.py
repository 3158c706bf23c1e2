"""Exception hierarchy for histlab.

Every error has a stable ``code`` used in JSON output and batch lines.
Input violations also derive from ValueError so callers that only know
the standard library can still catch them.
"""

from __future__ import annotations

from typing import Any, Optional


class HistlabError(Exception):
    """Base class for every error raised by histlab."""

    code = "error"

    def __init__(self, message: str = "", **context: Any) -> None:
        super().__init__(message or self.__class__.__name__)
        self.context = context

    def to_dict(self) -> dict[str, Any]:
        return {"code": self.code, "error": type(self).__name__, "message": str(self), **self.context}


class InputError(HistlabError, ValueError):
    code = "input"


class InternalError(HistlabError):
    """A postcondition of our own code failed. Always a bug."""

    code = "internal"


# --- graph-core ---

class GraphFormatError(InputError):
    code = "format"


class MalformedHeader(GraphFormatError):
    pass


class TruncatedPayload(GraphFormatError):
    pass


class InvalidByte(GraphFormatError):
    pass


class UnsupportedSize(GraphFormatError):
    pass


class NotSimple(InputError):
    pass


class SelfLoop(NotSimple):
    pass


class ParallelEdge(NotSimple):
    pass


class VertexOutOfRange(InputError):
    pass


class EdgeIndexOutOfRange(InputError):
    pass


class HostMismatch(InputError):
    """An EdgeSet was used with a graph other than its host."""


# --- hist ---

class NotCubic(InputError):
    pass


class Disconnected(InputError):
    pass


class InvalidHist(InputError):
    """Base for the verify_hist failures; names the violated condition."""


class NotSpanning(InvalidHist):
    pass


class ContainsCycle(InvalidHist):
    pass


class DegreeTwoVertex(InvalidHist):
    def __init__(self, vertex: int) -> None:
        super().__init__(f"vertex {vertex} has tree-degree 2", vertex=vertex)
        self.vertex = vertex


class InvalidCertificate(InputError):
    pass


class NotTwoRegular(InputError):
    pass


class NotNonSeparating(InputError):
    pass


class WrongVertexCount(InputError):
    pass


class InstanceTooLarge(InputError):
    pass


# --- construct ---

class MinDegreeTooLow(InputError):
    pass


class OddDegreeVertex(InputError):
    def __init__(self, vertex: int, degree: Optional[int] = None) -> None:
        super().__init__(f"vertex {vertex} has odd degree {degree}", vertex=vertex, degree=degree)
        self.vertex = vertex


class NotRegularEven(InputError):
    pass


class KTooSmall(InputError):
    pass


class ParityViolation(InputError):
    pass


class ParameterTooSmall(InputError):
    pass


class RejectionLimitExceeded(HistlabError):
    code = "rejection_limit"


class DegenerateWrap(InputError):
    pass


class NotChordlessSixCycle(InputError):
    pass


class CutNotWellDefined(InputError):
    pass


class ResultNotHexangulation(InternalError):
    pass


class UnknownName(InputError):
    pass


class MissingDataFile(HistlabError):
    code = "missing_data"


# --- topology ---

class InvalidRotation(InputError):
    pass


class OddEulerDefect(InternalError):
    pass


class NotPlanarEmbedding(InputError):
    pass


class KOutOfRange(InputError):
    pass


# --- cyclic ---

class OverlappingTerminals(InputError):
    pass


class PremiseNotMet(HistlabError):
    """The hypothesis k >= 3 of the inflation theorem fails. Reported, not a violation."""

    code = "premise_not_met"
