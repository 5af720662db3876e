"""Exception types raised across the package."""


class ProjflatError(Exception):
    pass


class SizeCapExceeded(ProjflatError):
    """A symbolic determinant was requested above the configured size cap."""


class NotInAlgebra(ProjflatError):
    pass


class DimensionTooSmall(ProjflatError):
    pass


class NotAutoparallel(ProjflatError):
    pass


class GradationInvalid(ProjflatError):
    pass


class CarrierMismatch(ProjflatError):
    pass


class RicciNotSymmetric(ProjflatError):
    pass


class NotGeneric(ProjflatError):
    pass


class InvalidSubset(ProjflatError, ValueError):
    pass
