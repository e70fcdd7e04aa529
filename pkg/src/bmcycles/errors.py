"""Exception hierarchy.

Every precondition failure raises a subclass of :class:`BMError` so the CLI
can map it to exit status 2 with the class name as the message prefix.
"""

from __future__ import annotations


class BMError(Exception):
    """Base class for all library errors."""


class DatumError(BMError):
    """Invalid root datum."""


class CartanMismatch(DatumError):
    pass


class InfiniteWeyl(DatumError):
    pass


class PiInvalid(DatumError):
    pass


class RhoInvalid(DatumError):
    pass


class NoFundamentalCoweights(DatumError):
    pass


class NotDominant(BMError):
    pass


class NotRegular(BMError):
    pass


class NotRegularDominant(BMError):
    pass


class HigherOrderPole(BMError):
    pass


class SupportViolation(BMError):
    pass


class NonPolynomial(BMError):
    pass


class RankUnsupported(BMError):
    pass


class PTooSmall(BMError):
    pass


class SchemaError(BMError):
    pass


class InvariantViolation(BMError):
    pass


class OutOfRegion(BMError):
    pass


class OracleGap(BMError):
    pass


class NotGeneric(BMError):
    pass


class GenericityViolation(NotGeneric):
    pass


class RegionNotGeneric(NotGeneric):
    pass


class SingularSolve(BMError):
    pass


class NotInSupportCone(BMError):
    pass


class MissingLowerDefect(BMError):
    pass


class TableGap(BMError):
    pass


class ZetaMismatch(BMError):
    pass


class CapExceeded(BMError):
    """An enumeration grew past the configured size cap."""
