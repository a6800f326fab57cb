"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`KempeError`,
so the CLI can turn domain failures into exit code 1 with a JSON error record.
"""


class KempeError(Exception):
    """Base class for domain errors."""

    code = "error"

    def to_json(self):
        return {"error": self.code, "message": str(self)}


class SimpleGraphViolation(KempeError):
    code = "simple_graph_violation"


class MalformedRotation(KempeError):
    code = "malformed_rotation"


class NoValidGraph(KempeError):
    code = "no_valid_graph"


class NotAWalk(KempeError):
    code = "not_a_walk"


class NotClosed(KempeError):
    code = "not_closed"


class LengthMismatch(KempeError):
    code = "length_mismatch"


class AnchorColorMismatch(KempeError):
    code = "anchor_color_mismatch"


class Unsatisfiable(KempeError):
    code = "unsatisfiable"


class CapExceeded(KempeError):
    code = "cap_exceeded"


class StateCapExceeded(KempeError):
    code = "state_cap_exceeded"

    def __init__(self, message, partial_count):
        super().__init__(message)
        self.partial_count = partial_count

    def to_json(self):
        out = super().to_json()
        out["partial_count"] = self.partial_count
        return out


class NotIndependent(KempeError):
    code = "not_independent"


class Overlap(KempeError):
    code = "overlap"


class InvalidPrefix(KempeError):
    code = "invalid_prefix"


class TemplateNotContained(KempeError):
    code = "template_not_contained"


class NotGood(KempeError):
    code = "not_good"


class SearchExhausted(KempeError):
    code = "search_exhausted"


class PreconditionViolated(KempeError):
    code = "precondition_violated"


class NotFourColorable(KempeError):
    code = "not_four_colorable"
