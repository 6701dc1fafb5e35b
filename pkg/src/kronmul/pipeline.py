"""End-to-end multiplication: reduce, multiply the images, recover.

multiply() runs the whole three-step pipeline for any reduction method (or
multiplies directly) and reports per-phase instrumentation.  verify()
checks a pipeline result against the direct schoolbook product and, on
mismatch, names the first diverging term in canonical order.

Operation counters cover the reduction phase only (the loop-level integer
multiplications and additions the reduction actually performs); the
univariate multiplication's cost shows up as wall time.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

from . import reduce as red
from . import unimul
from .poly import MultiPoly, mul_direct

METHODS = ("direct", "sks", "iks", "crt", "hybrid")


@dataclass(frozen=True)
class MulStats:
    method: str
    backend: str               # resolved univariate backend; 'none' for direct
    d_fx: int                  # degrees of the univariate images (0 for direct)
    d_gx: int
    d_hx: int                  # = d_fx + d_gx
    terms_f: int
    terms_g: int
    terms_h: int
    reduce_mul_count: int
    reduce_add_count: int
    seconds_reduce: float
    seconds_multiply: float
    seconds_recover: float

    @property
    def seconds_total(self) -> float:
        return self.seconds_reduce + self.seconds_multiply + self.seconds_recover

    def to_record(self) -> dict:
        """Flat key=value view for serialization."""
        rec = {k: getattr(self, k) for k in self.__dataclass_fields__}
        rec["seconds_total"] = self.seconds_total
        return rec


def multiply(f: MultiPoly, g: MultiPoly, method: str = "iks",
             backend: unimul.BackendChoice | None = None,
             crt_bases: Sequence[int] | None = None):
    """Multiply f and g; returns (product, MulStats).

    method 'direct' is the schoolbook oracle; 'sks', 'iks', 'crt' and
    'hybrid' reduce to univariate polynomials, multiply those through the
    chosen backend, and recover the multivariate product.  crt_bases
    overrides the automatic base selection of the 'crt' method.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; pick one of {METHODS}")
    if method == "direct":
        t0 = time.perf_counter()
        h = mul_direct(f, g)
        dt = time.perf_counter() - t0
        stats = MulStats("direct", "none", 0, 0, 0, len(f), len(g), len(h),
                         0, 0, 0.0, dt, 0.0)
        return h, stats

    t0 = time.perf_counter()
    if method == "crt":
        outcome = red.crt_reduce(f, g, crt_bases)
    else:
        outcome = red.REDUCERS[method](f, g)
    t1 = time.perf_counter()
    resolved = unimul.choose_backend(outcome.f_x, outcome.g_x, backend)
    if resolved == "ntt":
        h_x = unimul.mul_ntt(outcome.f_x, outcome.g_x, backend)
    else:
        h_x = unimul.mul_sparse(outcome.f_x, outcome.g_x)
    t2 = time.perf_counter()
    h = red.recover(h_x, outcome.plan)
    t3 = time.perf_counter()
    stats = MulStats(method, resolved,
                     outcome.f_x.degree(), outcome.g_x.degree(), outcome.d_hx,
                     len(f), len(g), len(h),
                     outcome.mul_count, outcome.add_count,
                     t1 - t0, t2 - t1, t3 - t2)
    return h, stats


@dataclass(frozen=True)
class Divergence:
    exponents: tuple
    expected: int  # 0 means the term is absent on that side
    actual: int


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    divergence: Divergence | None = None
    stats: MulStats | None = None

    def __bool__(self):
        return self.ok


def first_divergence(expected: MultiPoly, actual: MultiPoly) -> Divergence | None:
    """First term, in canonical descending-lex order, where the two
    polynomials disagree; None when they are equal."""
    if expected == actual:
        return None
    for vec in sorted(set(expected.terms) | set(actual.terms), reverse=True):
        want = expected.terms.get(vec, 0)
        got = actual.terms.get(vec, 0)
        if want != got:
            return Divergence(vec, want, got)
    return None


def verify(f: MultiPoly, g: MultiPoly, method: str = "iks",
           backend: unimul.BackendChoice | None = None,
           crt_bases: Sequence[int] | None = None) -> VerifyResult:
    """Run multiply() and compare against the direct oracle."""
    oracle = mul_direct(f, g)
    h, stats = multiply(f, g, method, backend, crt_bases)
    div = first_divergence(oracle, h)
    return VerifyResult(div is None, div, stats)
