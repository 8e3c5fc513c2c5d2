"""Exception types shared across the package."""


class InvalidFormat(ValueError):
    """A format (or operation argument) violates one of its invariants.

    ``invariant`` names the violated condition, e.g. ``"n >= 1"``.
    """

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        msg = invariant if not detail else f"{invariant} ({detail})"
        super().__init__(msg)


class RecursionExhausted(RuntimeError):
    """The quantifier recursion has no further block to eliminate."""


class InconsistentFaces(ValueError):
    """Face data of a simplicial set is malformed or does not square to zero."""


class NotSurjective(ValueError):
    """A simplicial map misses some simplex of its target."""


class InvalidMap(ValueError):
    """A vertex map does not send simplices to simplices."""


class InequalityViolated(AssertionError):
    """A topological inequality failed on a finite example (implementation bug)."""


class BoundViolated(AssertionError):
    """A measured count exceeded the exact bound at stabilized resolution."""
