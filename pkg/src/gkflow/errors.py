"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class GKError(Exception):
    """Base class for all gkflow errors."""


class PosetError(GKError):
    pass


class CycleError(PosetError):
    pass


class UnknownElementError(PosetError):
    pass


class LabelingError(PosetError):
    pass


class InstanceValidationError(GKError):
    """Raised when a compatibility relation breaks one or more axioms.

    ``violations`` maps the axiom number (1, 2, 3) to the offending pairs,
    and always holds every violation found, not only the first.
    """

    axiom: int = 0

    def __init__(self, violations: dict[int, list[tuple[str, str]]]):
        self.violations = {k: list(v) for k, v in sorted(violations.items()) if v}
        parts = [
            f"axiom {k}: " + ", ".join(f"({x},{y})" for x, y in pairs)
            for k, pairs in self.violations.items()
        ]
        super().__init__("; ".join(parts) or "invalid instance")

    @property
    def pairs(self) -> list[tuple[str, str]]:
        return self.violations.get(self.axiom, [])


class Axiom1Violation(InstanceValidationError):
    axiom = 1


class Axiom2Violation(InstanceValidationError):
    axiom = 2


class Axiom3Violation(InstanceValidationError):
    axiom = 3


class SequenceError(GKError):
    pass


class NotAdjacentableError(SequenceError):
    pass


class NotHOrderedError(SequenceError):
    pass


class OverlapError(SequenceError):
    pass


class NotLinearExtension(GKError):
    pass


class InvariantViolation(GKError):
    """An internal invariant of the solver failed; always a bug."""


class DecompositionError(InvariantViolation):
    pass


class ConjugacyViolation(InvariantViolation):
    pass


class BudgetExceeded(GKError):
    pass


class ParseError(GKError):
    pass
