"""Exception hierarchy shared by every module."""

from __future__ import annotations


class MirrorSkelError(Exception):
    """Base class for all errors raised by the package."""


class StructuralError(MirrorSkelError, ValueError):
    """Input is malformed (bad indices, wrong valency, wrong shapes).

    Distinct from a validation *failure*, which is reported as a value.
    """


class TriangulationError(MirrorSkelError, ValueError):
    """A triangulation does not satisfy the preconditions of an operation."""


class RibbonError(MirrorSkelError, ValueError):
    """An operation on a ribbon graph was requested outside its domain."""


class InfeasibleError(MirrorSkelError):
    """A cycle-preparation request cannot be satisfied."""


class ParseError(MirrorSkelError, ValueError):
    """An input file could not be parsed."""
