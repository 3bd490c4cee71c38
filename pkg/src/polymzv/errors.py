"""Exception hierarchy shared by every module.

All domain errors derive from :class:`PolyMZVError`; the CLI maps them to
exit code 1 and a structured JSON object on stderr.
"""


class PolyMZVError(Exception):
    """Base class for domain errors."""

    kind = "error"

    def to_json(self):
        return {"error": {"type": self.kind, "message": str(self)}}


class InvalidInput(PolyMZVError, ValueError):
    kind = "invalid_input"


class CycleError(PolyMZVError):
    """The relation pairs do not describe a strict partial order."""

    kind = "cycle"


class LimitExceeded(PolyMZVError):
    kind = "limit_exceeded"


class DivergentInput(PolyMZVError):
    """A poset or integrand whose integral diverges was passed to a convergent-only path."""

    kind = "divergent"


class DivergentWord(DivergentInput):
    kind = "divergent_word"


class ToleranceUnreachable(PolyMZVError):
    kind = "tolerance_unreachable"


class UnknownCatalog(PolyMZVError):
    kind = "unknown_catalog"
