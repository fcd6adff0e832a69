"""Exception hierarchy shared by all modules."""


class WreathError(Exception):
    """Base class for every error raised by :mod:`wreathwalk`."""


class GroupValidationError(WreathError, ValueError):
    """A group table failed one of the :class:`GroupSpec` invariants.

    ``invariant`` names the failed check so callers can dispatch on it.
    """

    invariant = "group"

    def __init__(self, message):
        super().__init__(f"[{self.invariant}] {message}")


class InvalidOrderError(GroupValidationError):
    invariant = "order"


class UnsupportedOrderError(GroupValidationError):
    invariant = "supported-order"


class MissingIdentityError(GroupValidationError):
    invariant = "identity"


class RowNotBijectiveError(GroupValidationError):
    invariant = "row-bijective"


class ColumnNotBijectiveError(GroupValidationError):
    invariant = "column-bijective"


class NonAssociativeError(GroupValidationError):
    invariant = "associativity"


class DimensionSumError(GroupValidationError):
    invariant = "dimension-sum"


class ClassCountError(GroupValidationError):
    invariant = "class-count"


class TrivialIrrepError(GroupValidationError):
    invariant = "trivial-irrep"


class SchemaError(GroupValidationError):
    invariant = "schema"


class DimensionError(WreathError, ValueError):
    """Operands live on different wreath products (n or base group differ)."""


class CapacityError(WreathError):
    """An enumeration would exceed the configured state cap."""

    def __init__(self, count, cap):
        self.count = count
        self.cap = cap
        super().__init__(f"state space has {count} elements, cap is {cap}")


class DomainError(WreathError, ValueError):
    """A bound was evaluated outside the range where it is defined."""


class InvalidCornerError(WreathError, ValueError):
    """The given box is not a removable corner of the diagram."""


class ModeError(WreathError, ValueError):
    """Numeric mode is unknown or inconsistent between operands."""
