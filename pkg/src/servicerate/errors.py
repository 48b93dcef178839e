"""Exception hierarchy shared by all modules.

The CLI maps each class to a fixed exit code, see ``servicerate.cli``.
"""


class ServiceRateError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(ServiceRateError, ValueError):
    """Malformed or mismatched input (dimensions, field specs, indices)."""


class PreconditionError(ServiceRateError, ValueError):
    """A hypothesis required by an operation does not hold for the input."""


class InvariantViolation(ServiceRateError, ValueError):
    """A loaded object violates a structural invariant (rank, zero column...)."""


class ResourceLimitError(ServiceRateError, RuntimeError):
    """An enumeration or elimination would exceed its configured budget."""


class UnboundedPolytopeError(ServiceRateError, ValueError):
    pass


class UnsupportedDimensionError(ServiceRateError, ValueError):
    pass
