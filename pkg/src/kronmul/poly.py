"""Sparse polynomial types and the direct multiplication oracle.

A multivariate polynomial is a finite map from exponent vectors (tuples of
non-negative integers, one entry per variable) to nonzero coefficients in a
RingSpec ring.  A univariate polynomial maps single non-negative exponents
to nonzero coefficients; its exponents are unbounded Python ints, because
variable elimination can push them far past machine range.

Construction normalizes: like terms are merged with ring addition, zero
coefficients are dropped, exponent vectors are validated.  Two polynomials
are equal exactly when their normalized term maps agree.

Multivariate exponents are kept inside the signed 64-bit range; arithmetic
that would leave it raises ExponentOverflowError rather than producing a
silently out-of-contract term.

The degree of the zero polynomial is the distinguished NEG_INF sentinel,
which orders below every integer and supports no arithmetic.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import (
    ArityMismatchError,
    EmptyPolynomialError,
    ExponentOverflowError,
    RingMismatchError,
)
from .rings import RingSpec

MAX_EXPONENT = 2**63 - 1


class _NegInf:
    """Degree of the zero polynomial.  Below every int, no arithmetic."""

    __slots__ = ()

    def __lt__(self, other):
        return other is not NEG_INF

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is NEG_INF

    def __repr__(self):
        return "-inf"


NEG_INF = _NegInf()


def _check_exponent(k: int) -> int:
    if k < 0:
        raise ValueError(f"negative exponent {k}")
    if k > MAX_EXPONENT:
        raise ExponentOverflowError(f"exponent {k} exceeds 63-bit width")
    return k


class MultiPoly:
    """Sparse polynomial in nvars variables over a RingSpec ring."""

    __slots__ = ("ring", "nvars", "_terms")

    def __init__(self, ring: RingSpec, nvars: int,
                 terms: Mapping[tuple, int] | Iterable[tuple] = ()):
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        merged: dict[tuple, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for vec, coeff in items:
            vec = tuple(vec)
            if len(vec) != nvars:
                raise ArityMismatchError(
                    f"exponent vector {vec} has length {len(vec)}, expected {nvars}")
            for k in vec:
                _check_exponent(k)
            c = ring.add(merged.get(vec, 0), ring.coeff(coeff))
            if c:
                merged[vec] = c
            else:
                merged.pop(vec, None)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", merged)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def zero(cls, ring: RingSpec, nvars: int) -> "MultiPoly":
        return cls(ring, nvars)

    @property
    def terms(self) -> dict:
        """Exponent vector -> coefficient.  Treat as read-only."""
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        """Terms in canonical order: descending lexicographic on exponents."""
        return sorted(self._terms.items(), key=lambda t: t[0], reverse=True)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.ring == other.ring
                and self.nvars == other.nvars and self._terms == other._terms)

    def __hash__(self):
        return hash((self.ring, self.nvars, frozenset(self._terms.items())))

    def __add__(self, other):
        return add(self, other)

    def __neg__(self):
        ring = self.ring
        return MultiPoly(ring, self.nvars,
                         {v: ring.neg(c) for v, c in self._terms.items()})

    def __sub__(self, other):
        return add(self, -other)

    def __mul__(self, other):
        return mul_direct(self, other)

    def __repr__(self):
        from .textfmt import format_poly
        return f"MultiPoly({self.ring}, {format_poly(self)})"


class UniPoly:
    """Sparse univariate polynomial with unbounded non-negative exponents."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: RingSpec,
                 terms: Mapping[int, int] | Iterable[tuple] = ()):
        merged: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, coeff in items:
            if exp < 0:
                raise ValueError(f"negative exponent {exp}")
            c = ring.add(merged.get(exp, 0), ring.coeff(coeff))
            if c:
                merged[exp] = c
            else:
                merged.pop(exp, None)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "_terms", merged)

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def zero(cls, ring: RingSpec) -> "UniPoly":
        return cls(ring)

    @property
    def terms(self) -> dict:
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def degree(self):
        """Largest exponent, or NEG_INF for the zero polynomial."""
        return max(self._terms) if self._terms else NEG_INF

    def sorted_terms(self) -> list[tuple[int, int]]:
        return sorted(self._terms.items(), reverse=True)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        return (isinstance(other, UniPoly) and self.ring == other.ring
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    def __repr__(self):
        from .textfmt import format_unipoly
        return f"UniPoly({self.ring}, {format_unipoly(self)})"


def normalize(p: MultiPoly) -> MultiPoly:
    """Re-canonicalize a polynomial.  Idempotent: construction normalizes."""
    return MultiPoly(p.ring, p.nvars, p.terms)


def _check_pair(f: MultiPoly, g: MultiPoly):
    if f.ring != g.ring:
        raise RingMismatchError(f"{f.ring} vs {g.ring}")
    if f.nvars != g.nvars:
        raise ArityMismatchError(f"{f.nvars} vs {g.nvars} variables")


def _check_index(p: MultiPoly, i: int):
    if not 1 <= i <= p.nvars:
        raise IndexError(f"variable index {i} out of range 1..{p.nvars}")


def deg_var(f: MultiPoly, i: int):
    """Degree of f on variable x_i (1-based); NEG_INF for the zero poly."""
    _check_index(f, i)
    if f.is_zero:
        return NEG_INF
    i -= 1
    return max(vec[i] for vec in f.terms)


def max_diff(f: MultiPoly, i: int, j: int) -> int:
    """max(k_j - k_i) over the terms of f.  May be negative."""
    _check_index(f, i)
    _check_index(f, j)
    if i == j:
        raise ValueError("indices must differ")
    if f.is_zero:
        raise EmptyPolynomialError("max_diff of the zero polynomial")
    i -= 1
    j -= 1
    return max(vec[j] - vec[i] for vec in f.terms)


def add(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    _check_pair(f, g)
    ring = f.ring
    out = dict(f.terms)
    for vec, c in g.terms.items():
        s = ring.add(out.get(vec, 0), c)
        if s:
            out[vec] = s
        else:
            out.pop(vec, None)
    return MultiPoly(ring, f.nvars, out)


def mul_direct(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Schoolbook term-by-term product; the oracle every reduction is tested
    against.  Exponent sums are checked against the 63-bit width."""
    _check_pair(f, g)
    ring = f.ring
    q = ring.modulus
    acc: dict[tuple, int] = {}
    gterms = list(g.terms.items())
    for fvec, fc in f.terms.items():
        for gvec, gc in gterms:
            vec = tuple(a + b for a, b in zip(fvec, gvec))
            for k in vec:
                if k > MAX_EXPONENT:
                    raise ExponentOverflowError(
                        f"product exponent {k} exceeds 63-bit width")
            c = acc.get(vec, 0) + fc * gc
            if q is not None:
                c %= q
            if c:
                acc[vec] = c
            else:
                acc.pop(vec, None)
    return MultiPoly(ring, f.nvars, acc)
