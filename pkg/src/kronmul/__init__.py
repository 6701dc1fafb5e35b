"""Multiply sparse multivariate polynomials by reversibly reducing them to
univariate polynomials, multiplying the images, and recovering the product."""

from .errors import (
    ArityMismatchError,
    BasesNotCoprimeError,
    BasesTooSmallError,
    DegreeTooLargeError,
    EmptyPolynomialError,
    ExponentOutOfRangeError,
    ExponentOverflowError,
    InfeasibleConstraintError,
    InvalidSequenceError,
    KronmulError,
    NegativeExponentError,
    NotInvertibleError,
    NttCapacityError,
    ParseError,
    RingMismatchError,
    TooManyVariablesError,
    UnknownVariableError,
)
from .pipeline import MulStats, VerifyResult, multiply, verify
from .poly import (
    MAX_EXPONENT,
    NEG_INF,
    MultiPoly,
    UniPoly,
    add,
    deg_var,
    max_diff,
    mul_direct,
    normalize,
)
from .reduce import (
    CrtPlan,
    HybridPlan,
    IksPlan,
    ReductionOutcome,
    SksPlan,
    adjust_coprime,
    apply_sequence,
    crt_degree_estimate,
    crt_inverse,
    crt_reduce,
    find_optimal_sequence,
    hybrid_inverse,
    hybrid_reduce,
    iks_bounds,
    iks_inverse,
    iks_reduce,
    modinv,
    plan_from_text,
    plan_to_text,
    recover,
    sks_base,
    sks_bounds,
    sks_inverse,
    sks_reduce,
)
from .rings import INTEGERS, RingSpec, is_prime, prime_field
from .textfmt import format_poly, format_unipoly, parse_poly, parse_unipoly
from .unimul import BackendChoice, choose_backend, mul_ntt, mul_sparse

__version__ = "0.1.0"
