"""Exception types shared across the package."""

from __future__ import annotations


class EulertrailError(Exception):
    """Base class for all package-specific errors."""


class ParseError(EulertrailError, ValueError):
    """Raised when external input (JSON text, arc lists) is malformed."""


class PreconditionError(EulertrailError, ValueError):
    """Raised when an operation is called outside its documented domain."""


class ConstructionError(EulertrailError, RuntimeError):
    """Raised when a certificate construction dead-ends.

    This signals an internal diagnostic: the characterization said an object
    exists but the constructive routine failed to produce one and no fallback
    was allowed to run.  It should never escape on supported inputs.
    """
