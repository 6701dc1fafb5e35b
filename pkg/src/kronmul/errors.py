"""Exception types raised by the public API.

Everything derives from KronmulError so callers can catch the library's
failures in one clause.  Parse failures additionally carry the byte offset
of the offending input.
"""


class KronmulError(Exception):
    pass


class ParseError(KronmulError):
    """Input text does not conform to the polynomial grammar."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownVariableError(ParseError):
    """Variable index outside 1..nvars."""


class ExponentOverflowError(KronmulError):
    """A multivariate exponent would exceed the checked 63-bit width."""


class RingMismatchError(KronmulError):
    """Operands belong to different coefficient rings."""


class ArityMismatchError(KronmulError):
    """Operands have different variable counts."""


class EmptyPolynomialError(KronmulError):
    """The zero polynomial was passed where a nonzero one is required."""


class NotInvertibleError(KronmulError):
    """No modular inverse exists (gcd with the modulus is not 1)."""


class BasesNotCoprimeError(KronmulError):
    """Residue bases are not pairwise coprime."""


class BasesTooSmallError(KronmulError):
    """A residue base does not exceed the product degree it must cover."""


class InvalidSequenceError(KronmulError):
    """A substitution sequence is malformed or reuses eliminated variables."""


class TooManyVariablesError(KronmulError):
    """Exhaustive sequence search refused: n!(n-1)! would be too large."""


class DegreeTooLargeError(KronmulError):
    """Dense transform backend cannot hold the requested degree."""


class NttCapacityError(KronmulError):
    """Product coefficients exceed what the fixed transform primes can carry."""


class ExponentOutOfRangeError(KronmulError):
    """A univariate exponent lies outside the range the plan can decode."""


class NegativeExponentError(KronmulError):
    """Plan inversion produced a negative exponent; input does not match plan."""


class InfeasibleConstraintError(KronmulError):
    """Generator constraints leave no admissible exponent for a forced term."""
