"""Exception hierarchy shared by the library and the CLI."""


class PoincareError(ValueError):
    """Base class for all errors raised by this package."""


class NotTimelike(PoincareError):
    pass


class NotLightlike(PoincareError):
    pass


class ConstraintError(PoincareError):
    """A matrix violates the Lorentz or o(3,1) constraint it claims to satisfy."""

    def __init__(self, message, entry=None, residual=None):
        super().__init__(message)
        self.entry = entry
        self.residual = residual


class OutOfCatalogError(PoincareError):
    """Raised when a point does not lie on one of the three catalogued orbit types."""

    def __init__(self, cls):
        super().__init__(f"point is out of catalog ({cls.reason.value})")
        self.cls = cls

    def __reduce__(self):
        return type(self), (self.cls,)
