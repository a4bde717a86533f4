"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class InfoCohError(Exception):
    """Base class for every error raised by infocoh."""


class FormatError(InfoCohError, ValueError):
    """Input document is syntactically malformed (unknown keys, wrong types)."""


class StructureError(InfoCohError):
    """A structure description violates one or more axioms.

    ``violations`` lists every problem found, not just the first.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(f"{v.kind}: {v.message}" for v in self.violations)
        super().__init__(lines)

    @property
    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


class NoProduct(InfoCohError, KeyError):
    pass


class MissingProduct(InfoCohError):
    pass


class UnknownVariable(InfoCohError, KeyError):
    pass


class UnknownArrow(InfoCohError, KeyError):
    pass


class UnknownOutcome(InfoCohError, KeyError):
    pass


class VariableMismatch(InfoCohError, ValueError):
    pass


class NotCoarser(InfoCohError, ValueError):
    pass


class ZeroConditioningMass(InfoCohError, ZeroDivisionError):
    pass


class AllZeroParts(InfoCohError, ValueError):
    pass


class OutOfRange(InfoCohError, ValueError):
    pass


class InvalidGrouping(InfoCohError, ValueError):
    pass


class InconsistentTable(InfoCohError, ValueError):
    pass


class TableBoundExceeded(InfoCohError, KeyError):
    pass


class BoundaryViolation(InfoCohError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SymmetryViolation(InfoCohError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FunctionalEquationViolation(InfoCohError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DomainViolation(InfoCohError, ValueError):
    pass


class NotACocycle(InfoCohError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DegenerateProduct(InfoCohError, ValueError):
    pass


class NoNondegenerateProduct(InfoCohError, ValueError):
    def __init__(self, component):
        self.component = tuple(component)
        super().__init__(f"no nondegenerate product in component {list(self.component)}")


class UnsupportedFamily(InfoCohError, ValueError):
    pass
