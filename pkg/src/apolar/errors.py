"""Exception types.

Every error that corresponds to a detectable non-general input carries a
``kind`` string; the command line maps these to exit codes.
"""


class ApolarError(Exception):
    kind = "error"

    def __init__(self, detail="", **info):
        super().__init__(detail)
        self.detail = detail
        self.info = info


class FieldMismatchError(ApolarError, TypeError):
    kind = "field_mismatch"


class DegenerateInputError(ApolarError):
    """Input violates a generality assumption (improper slice, p in L, ...)."""

    kind = "degenerate"


class NotGorensteinError(DegenerateInputError):
    kind = "not_gorenstein"

    def __init__(self, kernel_dim, detail=""):
        super().__init__(detail or f"kernel dimension {kernel_dim}, expected 1",
                         kernel_dim=kernel_dim)
        self.kernel_dim = kernel_dim


class ConditionViolated(DegenerateInputError):
    """The double point condition at the point of tangency fails."""

    kind = "condition_violated"


class InconsistentSystem(ApolarError):
    """A linear system has no solution; ``witness`` is y with yM = 0, yb != 0."""

    kind = "inconsistent"

    def __init__(self, witness, detail="linear system is inconsistent", **info):
        super().__init__(detail, **info)
        self.witness = witness


class PrecisionExhausted(ApolarError):
    kind = "precision_exhausted"
