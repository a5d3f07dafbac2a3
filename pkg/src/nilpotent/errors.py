"""Exception types shared by the package.

Every exception carries a short ``code`` so the CLI can print a stable tag
and map the failure to an exit status.
"""

from __future__ import annotations


class NilpotentError(Exception):
    code = "ERROR"

    def __str__(self) -> str:
        msg = super().__str__()
        return f"{self.code}: {msg}" if msg else self.code


class ParseError(NilpotentError, ValueError):
    code = "PARSE_ERROR"


class BadParam(NilpotentError, ValueError):
    code = "BAD_PARAM"


class BadAlphabet(NilpotentError, ValueError):
    code = "BAD_ALPHABET"


class DimensionMismatch(NilpotentError, ValueError):
    code = "DIM_MISMATCH"


class UnreachableError(NilpotentError):
    code = "UNREACHABLE"


class NotStrongError(NilpotentError):
    code = "NOT_STRONG"


class NoSuchArcError(NilpotentError, KeyError):
    code = "NO_SUCH_ARC"

    # KeyError.__str__ would repr() the message
    def __str__(self) -> str:
        return NilpotentError.__str__(self)


class NotACycleError(NilpotentError):
    code = "NOT_A_CYCLE"


class NotSymmetricError(NilpotentError):
    code = "NOT_SYMMETRIC"


class HasLoopError(NilpotentError):
    code = "HAS_LOOP"


class HypothesisFailed(NilpotentError):
    """A construction was asked to run on a graph outside its theorem."""

    code = "HYPOTHESIS_FAILED"


class NotNilpotent(NilpotentError):
    code = "NOT_NILPOTENT"


class NoPrimitiveSubgraph(HypothesisFailed):
    code = "NO_PRIMITIVE_SUBGRAPH"


class CapExceeded(NilpotentError):
    """The state space (or a local function space) is larger than allowed."""

    code = "CAP_EXCEEDED"

    def __init__(self, message: str, required: int | None = None) -> None:
        super().__init__(message)
        self.required = required
