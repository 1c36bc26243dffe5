"""Exception hierarchy shared by the library and the CLI."""


class BetaDigitsError(Exception):
    """Base class for every error raised by this package."""


class InputError(BetaDigitsError):
    """Malformed user input (polynomials, configs, digit files)."""


class NotMonic(InputError):
    pass


class NotSquarefree(InputError):
    pass


class ReducibleDetected(BetaDigitsError):
    """Inversion hit a zero divisor; ``factor`` is a nontrivial factor of p."""

    def __init__(self, factor):
        self.factor = factor
        super().__init__(f"defining polynomial is reducible; found factor {factor}")


class PrecisionExhausted(BetaDigitsError):
    pass


class DomainError(BetaDigitsError):
    """Input is well formed but outside the domain of the operation."""


class OutOfRange(DomainError):
    pass


class NoRootOutsideUnitDisk(DomainError):
    pass


class InsufficientDigits(DomainError):
    pass


class AllZero(DomainError):
    pass


class NotReduced(DomainError):
    pass


class HorizonExceeded(DomainError):
    pass


class NotInGapInterior(DomainError):
    pass


class ThresholdTieUnresolved(BetaDigitsError):
    pass


class HypothesisViolation(BetaDigitsError):
    """One of the hypotheses (i)-(iii) of the lower-bound theorem fails."""

    hypothesis = ""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class HypothesisIViolated(HypothesisViolation):
    hypothesis = "i"


class HypothesisIIViolated(HypothesisViolation):
    hypothesis = "ii"


class HypothesisIIIViolated(HypothesisViolation):
    hypothesis = "iii"


class IdentityFailure(BetaDigitsError):
    """An exact identity that must hold by algebra did not."""
