"""Exception hierarchy.

Every validation failure carries a ``witness``: the concrete tuple of
element indices (or other small data) at which the checked identity fails.
"""

from __future__ import annotations

from typing import Any


class CrossedModError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class ValidationFailure(CrossedModError):
    """An axiom or structural condition does not hold."""


class NotAGroup(ValidationFailure):
    pass


class NotAHom(ValidationFailure):
    pass


class NotAnAction(ValidationFailure):
    pass


class NotNormal(ValidationFailure):
    pass


class NotEpi(ValidationFailure):
    pass


class KernelNotCentral(ValidationFailure):
    pass


class CM1Violation(ValidationFailure):
    pass


class CM2Violation(ValidationFailure):
    pass


class SquareNotCommuting(ValidationFailure):
    pass


class NotEquivariant(ValidationFailure):
    pass


class NormalComplexViolation(ValidationFailure):
    pass


class EquivarianceViolation(ValidationFailure):
    pass


class PL1Violation(ValidationFailure):
    pass


class PL2Violation(ValidationFailure):
    pass


class PL3Violation(ValidationFailure):
    pass


class PL4Violation(ValidationFailure):
    pass


class PL5Violation(ValidationFailure):
    pass


class LiftingViolation(ValidationFailure):
    """Lifting compatibility {-,-}(f1 x f1) = f2{-,-} fails for a morphism."""


class LiftingNotTrivial(ValidationFailure):
    pass


class LiftingEscapesKernel(ValidationFailure):
    pass


class NotWellDefined(ValidationFailure):
    pass


class NotUnique(ValidationFailure):
    pass


class NoFactorization(ValidationFailure):
    pass


class BoundExceeded(CrossedModError):
    pass


class StrategyMismatch(CrossedModError):
    pass


class UndeclaredSymbol(CrossedModError):
    pass


class PresentationTooLarge(CrossedModError):
    pass


class UndecidedAtLimit(CrossedModError):
    """Coset enumeration hit its limit; the order is undecided, not infinite."""

    def __init__(self, message: str, presentation=None, coset_limit: int | None = None):
        super().__init__(message)
        self.presentation = presentation
        self.coset_limit = coset_limit
