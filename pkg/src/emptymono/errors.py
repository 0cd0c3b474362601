"""Exception types. Every error carries a short machine readable ``code``."""


class GeometryError(ValueError):
    code = "geometry"

    def __init__(self, code, message="", **payload):
        self.code = code
        self.payload = payload
        super().__init__(f"{code}: {message}" if message else code)


class DegenerateError(GeometryError):
    """Input violates general position or an object is degenerate."""


class PreconditionError(GeometryError):
    """A construction was called on input it does not handle."""


class BudgetExceeded(GeometryError):
    """A search or enumeration ran past its configured budget."""


class CertificateFailure(AssertionError):
    """An internal counting certificate did not hold."""
