"""Exception hierarchy shared by all cutquad modules."""


class CutQuadError(Exception):
    """Base class for every error raised by cutquad."""

    code = "error"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


class InvalidArgumentError(CutQuadError, ValueError):
    code = "invalid-argument"


class InvalidGeometryError(CutQuadError):
    code = "invalid-geometry"


class NotCutError(CutQuadError):
    """Raised when a tessellation is requested for a cell without a sign change."""

    code = "not-cut"


class DegenerateCutError(CutQuadError):
    code = "degenerate-cut"


class SequenceDepletedError(CutQuadError, IndexError):
    """The requested quadrature index lies beyond the end of a rule sequence."""

    code = "sequence-depleted"


class ConditioningError(CutQuadError):
    """Cholesky factorization of a Gramian failed.

    ``pivot`` is the (zero-based) index of the first non-positive pivot.
    """

    code = "conditioning"

    def __init__(self, message, pivot=None):
        super().__init__(message)
        self.pivot = pivot

    def to_dict(self):
        d = super().to_dict()
        d["pivot"] = self.pivot
        return d
