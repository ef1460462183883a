"""Shared exception types.

Input-shaped problems (bad parameters, violated preconditions, size caps)
are ValueError subclasses; exhausted search/enumeration budgets are a
separate RuntimeError subclass so callers can distinguish "this input is
wrong" from "this computation was cut off and the answer is unknown".
"""


class CapExceeded(ValueError):
    """A configured structural cap (degree, order, index) was exceeded."""


class BudgetExhausted(RuntimeError):
    """A search or enumeration budget ran out before an answer was certain."""


class PresentationSyntaxError(ValueError):
    """Bad presentation or word text; carries the offending position."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ConjugationNotInnerError(ValueError):
    """Conjugation by `witness` does not restrict to an inner automorphism."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
