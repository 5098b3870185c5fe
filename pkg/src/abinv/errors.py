"""Exception classes.

Every error raised on purpose by the library derives from :class:`AbinvError`.
The CLI maps the four families below to process exit codes.
"""


class AbinvError(Exception):
    """Base class for all library errors."""


class SchemaError(AbinvError, ValueError):
    """A manifold document does not match the JSON schema."""

    def __init__(self, message, pointer=""):
        self.pointer = pointer or "/"
        super().__init__(f"{self.pointer}: {message}")


class InvariantViolation(AbinvError, ValueError):
    """Input data breaks a structural rule (the rule is named in ``rule``)."""

    rule = "invariant"

    def __init__(self, message, rule=None):
        if rule is not None:
            self.rule = rule
        super().__init__(f"[{self.rule}] {message}")


class DimensionMismatch(InvariantViolation):
    rule = "dimension"


class NonSymmetric(InvariantViolation):
    rule = "symmetric"


class Singular(InvariantViolation):
    rule = "nonsingular"


class InvalidModulus(InvariantViolation):
    rule = "modulus>=1"


class InvalidCoupling(InvariantViolation):
    rule = "integer-coupling"


class NotCoprime(InvariantViolation):
    rule = "coprime"


class BadRange(InvariantViolation):
    rule = "range"


class NotAComplex(InvariantViolation):
    rule = "boundary-squared-zero"


class IndexOutOfRange(InvariantViolation, IndexError):
    rule = "index"


class TooLarge(InvariantViolation):
    """A brute-force enumeration would exceed its cap."""

    rule = "size-cap"


class TorsionTooLarge(TooLarge):
    pass


class SumTooLarge(TooLarge):
    pass


class EnumerationTooLarge(TooLarge):
    pass


class NonIntegralInvariant(AbinvError, ArithmeticError):
    """The labeling count is not divisible by N^(v-1); the complex is broken."""


class UnsupportedPresentation(AbinvError, TypeError):
    """The presentation cannot be lowered to the data an invariant needs."""

    def __init__(self, message, supported=()):
        self.supported = tuple(supported)
        if self.supported:
            message = f"{message} (works with: {', '.join(self.supported)})"
        super().__init__(message)


class NoInvariantAtLevel(AbinvError, ValueError):
    """The Gauss sum vanishes at this level, so there is no RT invariant."""


class EvenLevel(NoInvariantAtLevel):
    pass


def require_int(value, name, minimum, exc=InvariantViolation):
    """Return ``value`` if it is a genuine int >= ``minimum``, else raise ``exc``."""
    if isinstance(value, bool) or not isinstance(value, int):
        raise exc(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise exc(f"{name} must be >= {minimum}, got {value}")
    return value
