"""Exception types shared across the package.

Every error raised on a violated precondition derives from HypersplitError,
so callers (and the verification harness) can distinguish "inadmissible
input" from genuine bugs.
"""


class HypersplitError(Exception):
    """Base class for all package errors."""


# -- finite fields ---------------------------------------------------------

class NotPrime(HypersplitError):
    pass


class FieldTooLarge(HypersplitError):
    pass


class ConstructionError(HypersplitError):
    pass


class LogOfZero(HypersplitError):
    pass


class OrderDoesNotDivide(HypersplitError):
    pass


# -- cyclotomic arithmetic --------------------------------------------------

class DivisionByZero(HypersplitError):
    pass


class IndexMismatch(HypersplitError):
    pass


class NotASubfieldIndex(HypersplitError):
    pass


# -- hypergeometric sums ----------------------------------------------------

class NotDefinedOverQ(HypersplitError):
    pass


class DomainViolation(HypersplitError):
    pass


class DegenerateCharacters(HypersplitError):
    pass


class NonRationalFValue(HypersplitError):
    pass


# -- p-adic arithmetic ------------------------------------------------------

class NotPIntegral(HypersplitError):
    pass


class EvenPrime(HypersplitError):
    pass


class WorkBoundExceeded(HypersplitError):
    pass


class PrecisionExhausted(HypersplitError):
    pass


class NotIntegralAtF(HypersplitError):
    pass


class PreconditionViolated(HypersplitError):
    pass


class UnsupportedValue(HypersplitError):
    """A computation left the scalar p-adic ring and cannot be reported as one."""


# -- classical series -------------------------------------------------------

class BottomPole(HypersplitError):
    pass


class NoConvergence(HypersplitError):
    pass


class GammaPole(HypersplitError):
    pass


class ConstraintViolated(HypersplitError):
    pass


# -- oracles ----------------------------------------------------------------

class BadReduction(HypersplitError):
    pass


class SmallPrime(HypersplitError):
    pass


class DegenerateCurve(HypersplitError):
    pass


class NonIntegralLeadingPower(HypersplitError):
    pass


# -- harness ----------------------------------------------------------------

class UnknownIdentity(HypersplitError):
    pass


class ConfigError(HypersplitError):
    pass
