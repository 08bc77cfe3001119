"""Exception types shared across the package.

The CLI and HTTP service map these onto exit codes / status codes, so new
failure modes should subclass one of the three below rather than raising
bare ValueErrors.
"""


class NilfiltError(Exception):
    """Base class for package errors."""


class GuardExceeded(NilfiltError):
    """A hard size guard was hit; results would not be computed exactly."""


class GroupValidationError(NilfiltError):
    """Input data does not describe a valid finite group (or valid params)."""


class NotTransitivelyCommutative(NilfiltError):
    """An operation restricted to TC groups was called on a non-TC group."""
