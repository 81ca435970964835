"""Exception hierarchy shared by every qspace module."""

from __future__ import annotations


class QSpaceError(ValueError):
    """Base class for all library errors."""


# fields
class NonPrime(QSpaceError):
    pass


class NotIrreducible(QSpaceError):
    pass


class NotPrimitive(QSpaceError):
    pass


class NoDefaultModulus(QSpaceError):
    pass


class FieldMismatch(QSpaceError):
    pass


class DivisionByZero(QSpaceError, ZeroDivisionError):
    pass


class LogOfZero(QSpaceError):
    pass


# linear algebra / subspaces
class DimensionMismatch(QSpaceError):
    pass


class AmbientMismatch(QSpaceError):
    pass


class UnequalDimensions(QSpaceError):
    pass


class CapExceeded(QSpaceError):
    """A desk-scale guard was hit; raise the cap explicitly to proceed."""


class TooFewWords(QSpaceError):
    pass


# rank-metric codes
class ShapeMismatch(QSpaceError):
    pass


class BadDelta(QSpaceError):
    pass


class ZeroWeight(QSpaceError):
    pass


# constructions
class SkeletonDistanceTooSmall(QSpaceError):
    pass


class MetricMismatch(QSpaceError):
    pass


class UnitVectorInside(QSpaceError):
    pass


class BadHyperplane(QSpaceError):
    pass


class VInQ(QSpaceError):
    pass


class NotDivisible(QSpaceError):
    pass


class NotASubspace(QSpaceError):
    pass


# bounds / designs / projections
class BadParams(QSpaceError):
    pass


class DimTooSmall(QSpaceError):
    pass


class NotConstantDimension(QSpaceError):
    pass


class InconsistentPins(QSpaceError):
    pass


class ParseError(QSpaceError):
    """Malformed input file; the message carries line/field context."""
