from __future__ import annotations


class DgSmoothError(Exception):
    """Base class; ``code`` is the stable identifier surfaced in reports."""

    code = "ERROR"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.details = details

    def to_dict(self) -> dict:
        return {"code": self.code, "message": str(self), **{k: _plain(v) for k, v in self.details.items()}}


def _plain(v):
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (int, str, bool, float)) or v is None:
        return v
    return str(v)


class ParseError(DgSmoothError):
    code = "PARSE_ERROR"


class NonHomogeneousError(DgSmoothError):
    code = "NONHOMOGENEOUS_RELATION"


class PresentationError(DgSmoothError):
    """A presentation violates an algebraic axiom (d^2, Leibniz, associativity, ...)."""

    code = "INVALID_PRESENTATION"


class HypothesisViolated(DgSmoothError):
    code = "HYPOTHESIS_VIOLATED"

    def __init__(self, hypothesis: str, degree: int | None = None, message: str = ""):
        super().__init__(message or f"{hypothesis} (degree {degree})", hypothesis=hypothesis, degree=degree)
        self.hypothesis = hypothesis
        self.degree = degree


class WindowTooSmall(DgSmoothError):
    code = "WINDOW_TOO_SMALL"


class ReductionUnavailable(DgSmoothError):
    code = "REDUCTION_UNAVAILABLE"


class UnsupportedType(DgSmoothError):
    code = "UNSUPPORTED_TYPE"


class InconsistentInput(DgSmoothError):
    code = "INCONSISTENT_INPUT"


class UnsupportedEmbedding(DgSmoothError):
    code = "UNSUPPORTED_EMBEDDING"
