"""Exception types shared across the package."""


class InvalidDistributionError(ValueError):
    """A probability object violates non-negativity or normalization."""


class DimensionMismatchError(ValueError):
    """An encoder's domain does not match the distribution it is applied to."""


class CapacityError(ValueError):
    """A requested exhaustive computation exceeds the enforced size cap."""
