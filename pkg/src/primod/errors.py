"""Exception types shared across the package."""


class PrimodError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateInputError(PrimodError, ValueError):
    """An argument is zero (or otherwise degenerate) where a nonzero value is required."""


class InputError(PrimodError, ValueError):
    """Structurally malformed input: dimension mismatch, parent mismatch, bad JSON."""


class SizeError(PrimodError, RuntimeError):
    """An enumeration cap (module order, lattice size) was exceeded."""


class UnsupportedInstanceError(PrimodError, ValueError):
    """The requested computation is outside the supported instance class."""
