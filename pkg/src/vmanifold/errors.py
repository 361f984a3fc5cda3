"""Exception hierarchy shared by the kernel and the command line front end."""


class VManifoldError(Exception):
    """Base class. ``kind`` is the machine-readable error class used by the CLI."""

    kind = "error"


class UsageError(VManifoldError):
    kind = "usage"


class DomainError(VManifoldError, ValueError):
    kind = "domain"


class UnsupportedError(VManifoldError):
    kind = "unsupported"

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ResourceError(VManifoldError):
    kind = "resource"


class IntegrityError(VManifoldError):
    kind = "integrity"
