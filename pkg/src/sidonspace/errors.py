"""Exception types shared across the package."""


class ConstructionError(RuntimeError):
    """A construction's preconditions failed or a claimed property did not re-verify."""


class NoSuchElementError(LookupError):
    """A seeded element search was exhausted or the constraint is provably unsatisfiable."""


class BudgetError(RuntimeError):
    """An enumeration would exceed the caller's budget.

    Carries the number of items the enumeration would need in ``required``.
    """

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required


class SupplyError(ConstructionError):
    """Not enough objects exist to satisfy a request (e.g. irreducible polynomials).

    ``available`` holds the number of objects that do exist.
    """

    def __init__(self, message: str, available: int | None = None):
        super().__init__(message)
        self.available = available
