"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` so the CLI can emit
structured failures; ``exit_code`` follows the documented convention
(3 = domain error, 4 = resource cap exceeded).
"""


class SoficError(Exception):
    exit_code = 3

    def __init__(self, message, code="DOMAIN_ERROR"):
        super().__init__(message)
        self.code = code


class DomainError(SoficError):
    """Invalid input or a mathematically impossible request."""


class ResourceCapError(SoficError):
    """A configurable cap (state count, iteration budget) was exceeded."""

    exit_code = 4

    def __init__(self, message, code="STATE_CAP_EXCEEDED"):
        super().__init__(message, code)
