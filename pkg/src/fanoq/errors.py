"""Exception types shared by every module."""


class FanoqError(ValueError):
    """Invalid input or an operation that is undefined for it."""


class VerificationError(AssertionError):
    """An identity that must hold between two independent computations failed."""
