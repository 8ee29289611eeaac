"""Exception types shared across the package."""

from __future__ import annotations


class SchemaError(ValueError):
    """A model file or serialized object violates its schema.

    The message names the offending field path, e.g. ``gains[1][1]``.
    """


class TensorCapError(RuntimeError):
    """A requested joint pmf tensor would exceed the cell cap."""


class UnboundedError(RuntimeError):
    """The linear program has unbounded objective value."""


class InfeasibleError(RuntimeError):
    """The linear program has an empty feasible region."""
