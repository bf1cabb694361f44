"""Exception types shared across the package."""


class HypgasError(Exception):
    """Base class for all package errors."""


class InvalidRegimeError(HypgasError):
    """A bound was requested outside its regime of validity.

    Carries the violated quantity and its threshold so callers (in
    particular the certificate layer) can report why a bound does not
    apply instead of producing garbage numbers.
    """

    def __init__(self, message, *, quantity=None, value=None, threshold=None):
        super().__init__(message)
        self.quantity = quantity
        self.value = value
        self.threshold = threshold


class MatchingError(HypgasError):
    """Exterior matching of the zero-energy solution failed.

    Signals an invalid potential or a solver breakdown; the scattering
    length is never silently clamped on this path.
    """
