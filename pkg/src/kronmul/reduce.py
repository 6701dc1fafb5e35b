"""Reversible reductions from multivariate to univariate polynomials.

Four methods, each producing a pair of univariate images plus a plan that
holds everything needed to invert the monomial map:

  sks     one-shot substitution x_i -> x^(base^(i-1)), base one more than
          the largest per-variable degree of the product.
  iks     one variable per round folds into x_1 with the smallest exponent
          that still separates terms of the product.
  crt     exponent vectors map to their unique residue-system integer
          modulo the product of pairwise-coprime bases.
  hybrid  per round, a two-variable residue step (bases p and p-1, with
          offsets making the quotient digit non-negative) or an iterative
          fold, whichever predicts the smaller product degree.

All reductions reject zero polynomials: the mechanism exists to multiply,
and a zero factor makes the product trivially zero upstream.

Plans are immutable and serialize to a one-line decimal record (method
tag, variable count, then the plan integers) so reduce/recover compose
through files.

Every reduction counts the loop-level integer multiplications and
additions it actually performs, so callers can compare the methods'
reduction cost empirically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import (
    ArityMismatchError,
    BasesNotCoprimeError,
    BasesTooSmallError,
    EmptyPolynomialError,
    ExponentOutOfRangeError,
    InvalidSequenceError,
    NegativeExponentError,
    NotInvertibleError,
    RingMismatchError,
    TooManyVariablesError,
)
from .poly import MultiPoly, UniPoly, deg_var, max_diff


# ---------------------------------------------------------------------------
# plans


@dataclass(frozen=True)
class SksPlan:
    nvars: int
    base: int

    def h_image(self, exponents: Sequence[int]) -> int:
        """Univariate exponent of one monomial: its base-`base` value."""
        total = 0
        for i, k in enumerate(exponents):
            total += k * self.base**i
        return total


@dataclass(frozen=True)
class IksPlan:
    nvars: int
    exponents: tuple[int, ...]  # D_1=1, D_2, ..., D_n

    def h_image(self, exponents: Sequence[int]) -> int:
        total = exponents[0]
        for k, d in zip(exponents[1:], self.exponents[1:]):
            total += k * d
        return total


@dataclass(frozen=True)
class CrtPlan:
    nvars: int
    bases: tuple[int, ...]
    modulus: int                  # product of the bases
    cofactors: tuple[int, ...]    # modulus // base_i
    inverses: tuple[int, ...]     # cofactor_i^-1 mod base_i

    @classmethod
    def from_bases(cls, bases: Sequence[int]) -> "CrtPlan":
        bases = tuple(int(b) for b in bases)
        _check_pairwise_coprime(bases)
        modulus = math.prod(bases)
        cof = tuple(modulus // b for b in bases)
        inv = tuple(modinv(c, b) for c, b in zip(cof, bases))
        return cls(len(bases), bases, modulus, cof, inv)

    def h_image(self, exponents: Sequence[int]) -> int:
        total = 0
        for k, c, a in zip(exponents, self.cofactors, self.inverses):
            total += c * a * k
        return total % self.modulus


@dataclass(frozen=True)
class CrtStep:
    """Round that folded x_round into x_1 through the residue pair (p, p-1)."""
    round: int
    p: int
    offset_f: int
    offset_g: int


@dataclass(frozen=True)
class IksStep:
    """Round that folded x_round into x_1 with a plain substitution."""
    round: int
    exponent: int


@dataclass(frozen=True)
class HybridPlan:
    nvars: int
    steps: tuple  # CrtStep | IksStep, rounds 2..n in order

    def h_image(self, exponents: Sequence[int]) -> int:
        """Map a product monomial; residue steps apply both offsets, since a
        product exponent is the sum of one f-image and one g-image."""
        k1 = exponents[0]
        for step in self.steps:
            kr = exponents[step.round - 1]
            if isinstance(step, CrtStep):
                k1 = (step.offset_f + step.offset_g + kr - k1) * step.p + k1
            else:
                k1 = k1 + kr * step.exponent
        return k1


@dataclass(frozen=True)
class SequencePlan:
    """Plan of apply_sequence: (source, target, exponent) per elimination."""
    nvars: int
    steps: tuple[tuple[int, int, int], ...]

    @property
    def final_variable(self) -> int:
        return self.steps[-1][1] if self.steps else 1

    def h_image(self, exponents: Sequence[int]) -> int:
        vec = list(exponents)
        for i, j, d in self.steps:
            vec[j - 1] += vec[i - 1] * d
            vec[i - 1] = 0
        return vec[self.final_variable - 1]


@dataclass(frozen=True)
class ReductionOutcome:
    method: str
    f_x: UniPoly
    g_x: UniPoly
    plan: object
    mul_count: int = 0
    add_count: int = 0

    @property
    def d_hx(self) -> int:
        """Degree of the univariate product, without forming it."""
        return self.f_x.degree() + self.g_x.degree()


def _check_reducible(f: MultiPoly, g: MultiPoly):
    if f.ring != g.ring:
        raise RingMismatchError(f"{f.ring} vs {g.ring}")
    if f.nvars != g.nvars:
        raise ArityMismatchError(f"{f.nvars} vs {g.nvars} variables")
    if f.is_zero or g.is_zero:
        raise EmptyPolynomialError("cannot reduce the zero polynomial")


def _product_degrees(f: MultiPoly, g: MultiPoly) -> list[int]:
    """Per-variable degrees of f*g, from the factors' degrees."""
    return [deg_var(f, i) + deg_var(g, i) for i in range(1, f.nvars + 1)]


# ---------------------------------------------------------------------------
# standard one-shot substitution


def sks_base(f: MultiPoly, g: MultiPoly) -> int:
    """One more than the largest per-variable degree of f*g."""
    _check_reducible(f, g)
    return max(_product_degrees(f, g)) + 1


def sks_reduce(f: MultiPoly, g: MultiPoly) -> ReductionOutcome:
    base = sks_base(f, g)
    n = f.nvars
    plan = SksPlan(n, base)
    weights = [base**i for i in range(n)]
    muls = adds = 0

    def image(p: MultiPoly) -> UniPoly:
        nonlocal muls, adds
        out = {}
        for vec, c in p.terms.items():
            total = 0
            for k, w in zip(vec, weights):
                total += k * w
            muls += n
            adds += n - 1
            out[total] = c
        return UniPoly(p.ring, out)

    return ReductionOutcome("sks", image(f), image(g), plan, muls, adds)


def sks_inverse(h_x: UniPoly, plan: SksPlan) -> MultiPoly:
    """Peel base-`base` digits back into an exponent vector."""
    base, n = plan.base, plan.nvars
    limit = base**n
    out = []
    for exp, c in h_x.terms.items():
        if exp >= limit:
            raise ExponentOutOfRangeError(
                f"exponent {exp} >= base^n = {limit}")
        vec = []
        rem = exp
        for _ in range(n):
            rem, digit = divmod(rem, base)
            vec.append(digit)
        out.append((tuple(vec), c))
    return MultiPoly(h_x.ring, n, out)


def sks_bounds(f: MultiPoly, g: MultiPoly) -> tuple[int, int]:
    """Inclusive bounds on the one-shot product degree:
    d_n * base^(n-1) <= degree <= base^n - 1."""
    base = sks_base(f, g)
    d = _product_degrees(f, g)
    return d[-1] * base ** (f.nvars - 1), base**f.nvars - 1


# ---------------------------------------------------------------------------
# iterative substitution into x_1


def iks_reduce(f: MultiPoly, g: MultiPoly) -> ReductionOutcome:
    """Fold x_2..x_n into x_1, each round with exponent one more than the
    current product degree on x_1."""
    _check_reducible(f, g)
    n = f.nvars
    ring = f.ring
    fcur = {vec: c for vec, c in f.terms.items()}
    gcur = {vec: c for vec, c in g.terms.items()}
    exps = [1] * n
    muls = adds = 0
    for i in range(2, n + 1):
        d = max(v[0] for v in fcur) + max(v[0] for v in gcur) + 1
        exps[i - 1] = d
        idx = i - 1
        for cur in (fcur, gcur):
            folded = {}
            for vec, c in cur.items():
                lst = list(vec)
                lst[0] = vec[0] + vec[idx] * d
                lst[idx] = 0
                folded[tuple(lst)] = c
            muls += len(cur)
            adds += len(cur)
            cur.clear()
            cur.update(folded)
    plan = IksPlan(n, tuple(exps))
    f_x = UniPoly(ring, {vec[0]: c for vec, c in fcur.items()})
    g_x = UniPoly(ring, {vec[0]: c for vec, c in gcur.items()})
    return ReductionOutcome("iks", f_x, g_x, plan, muls, adds)


def iks_inverse(h_x: UniPoly, plan: IksPlan) -> MultiPoly:
    """Recover variables in reverse round order: the quotient by D_i is the
    x_i exponent, the remainder keeps folding."""
    n = plan.nvars
    out = []
    for exp, c in h_x.terms.items():
        vec = [0] * n
        rem = exp
        for i in range(n, 1, -1):
            vec[i - 1], rem = divmod(rem, plan.exponents[i - 1])
        vec[0] = rem
        out.append((tuple(vec), c))
    return MultiPoly(h_x.ring, n, out)


def iks_bounds(f: MultiPoly, g: MultiPoly) -> tuple[int, int]:
    """Product degree bounds for the iterative method: the product of the
    per-variable degrees of f*g (inclusive) up to the product of
    (degree + 1) (exclusive)."""
    _check_reducible(f, g)
    d = _product_degrees(f, g)
    return math.prod(d), math.prod(x + 1 for x in d)


# ---------------------------------------------------------------------------
# general substitution sequences and the exhaustive search


def apply_sequence(f: MultiPoly, g: MultiPoly,
                   seq: Sequence[tuple[int, int]]) -> ReductionOutcome:
    """Run an arbitrary elimination sequence [(source, target), ...].

    Each step folds x_source into x_target with exponent one more than the
    current degree of f*g on the target (computed as deg f + deg g, never
    by forming the product).  The sequence must eliminate each variable
    exactly once and only substitute into live variables.
    """
    _check_reducible(f, g)
    n = f.nvars
    seq = tuple((int(i), int(j)) for i, j in seq)
    if len(seq) != n - 1:
        raise InvalidSequenceError(
            f"sequence has {len(seq)} steps, expected {n - 1}")
    alive = set(range(1, n + 1))
    for i, j in seq:
        if i == j:
            raise InvalidSequenceError(f"substitution x{i} -> x{j}")
        for v in (i, j):
            if v not in alive:
                raise InvalidSequenceError(
                    f"variable x{v} is not live" if 1 <= v <= n
                    else f"variable index {v} out of range")
        alive.remove(i)

    fcur = dict(f.terms)
    gcur = dict(g.terms)
    muls = adds = 0
    steps = []
    for i, j in seq:
        src, dst = i - 1, j - 1
        d = (max(v[dst] for v in fcur) + max(v[dst] for v in gcur)) + 1
        steps.append((i, j, d))
        for cur in (fcur, gcur):
            folded = {}
            for vec, c in cur.items():
                lst = list(vec)
                lst[dst] = vec[dst] + vec[src] * d
                lst[src] = 0
                folded[tuple(lst)] = c
            muls += len(cur)
            adds += len(cur)
            cur.clear()
            cur.update(folded)
    plan = SequencePlan(n, tuple(steps))
    last = plan.final_variable - 1
    f_x = UniPoly(f.ring, {vec[last]: c for vec, c in fcur.items()})
    g_x = UniPoly(g.ring, {vec[last]: c for vec, c in gcur.items()})
    return ReductionOutcome("seq", f_x, g_x, plan, muls, adds)


def sequence_inverse(h_x: UniPoly, plan: SequencePlan) -> MultiPoly:
    n = plan.nvars
    out = []
    for exp, c in h_x.terms.items():
        vec = [0] * n
        vec[plan.final_variable - 1] = exp
        for i, j, d in reversed(plan.steps):
            vec[i - 1], vec[j - 1] = divmod(vec[j - 1], d)
        out.append((tuple(vec), c))
    return MultiPoly(h_x.ring, n, out)


def is_straight_pattern(seq: Sequence[tuple[int, int]]) -> bool:
    """True when every elimination targets the same variable."""
    targets = {j for _, j in seq}
    return len(targets) <= 1


class SequenceSearchResult(NamedTuple):
    sequence: tuple[tuple[int, int], ...]  # lexicographically least argmin
    degree: int
    straight_sequence: tuple | None        # least straight argmin, if any


def find_optimal_sequence(f: MultiPoly, g: MultiPoly,
                          max_n: int = 4) -> SequenceSearchResult:
    """Try all n!(n-1)! elimination sequences and keep the minimizers.

    Returns the lexicographically least sequence reaching the minimal
    product degree, plus the least straight-pattern sequence that also
    reaches it (the theory says one always exists).
    """
    _check_reducible(f, g)
    n = f.nvars
    if n > max_n:
        raise TooManyVariablesError(
            f"{n} variables means {math.factorial(n) * math.factorial(n - 1)}"
            f" sequences; raise max_n to allow it")
    best = best_straight = None
    best_deg = straight_deg = None
    for seq in _all_sequences(n):
        d = apply_sequence(f, g, seq).d_hx
        if best_deg is None or d < best_deg:
            best, best_deg = seq, d
        if is_straight_pattern(seq) and (straight_deg is None or d < straight_deg):
            best_straight, straight_deg = seq, d
    straight = best_straight if straight_deg == best_deg else None
    return SequenceSearchResult(best, best_deg, straight)


def _all_sequences(n: int, alive: frozenset | None = None):
    """All elimination sequences in lexicographic order."""
    if alive is None:
        alive = frozenset(range(1, n + 1))
    if len(alive) == 1:
        yield ()
        return
    for i in sorted(alive):
        for j in sorted(alive):
            if i == j:
                continue
            for rest in _all_sequences(n, alive - {i}):
                yield ((i, j),) + rest


# ---------------------------------------------------------------------------
# residue-system reduction


def modinv(a: int, m: int) -> int:
    """Inverse of a modulo m in [1, m), by the extended Euclid algorithm."""
    inv, _ = _modinv_steps(a, m)
    return inv


def _modinv_steps(a: int, m: int) -> tuple[int, int]:
    if m < 2:
        raise NotInvertibleError(f"modulus {m} < 2")
    a %= m
    r0, r1 = m, a
    s0, s1 = 0, 1
    steps = 0
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        steps += 1
    if r0 != 1:
        raise NotInvertibleError(f"{a} is not invertible mod {m} (gcd {r0})")
    return s0 % m, steps


def adjust_coprime(initial: Sequence[int]) -> list[int]:
    """Left to right, bump each entry by 1 until it is coprime to all the
    entries already settled.  Entries must be >= 2."""
    out: list[int] = []
    for v in initial:
        q = int(v)
        if q < 2:
            raise ValueError(f"entries must be >= 2, got {q}")
        while any(math.gcd(q, prev) != 1 for prev in out):
            q += 1
        out.append(q)
    return out


def _check_pairwise_coprime(bases: Sequence[int]):
    for i in range(len(bases)):
        for j in range(i + 1, len(bases)):
            if math.gcd(bases[i], bases[j]) != 1:
                raise BasesNotCoprimeError(
                    f"gcd({bases[i]}, {bases[j]}) != 1")


def crt_reduce(f: MultiPoly, g: MultiPoly,
               bases: Sequence[int] | None = None) -> ReductionOutcome:
    """Map each exponent vector to its residue-system integer mod the base
    product.  Bases default to the per-variable product degrees plus one,
    adjusted upward until pairwise coprime."""
    _check_reducible(f, g)
    n = f.nvars
    d_h = _product_degrees(f, g)
    muls = adds = 0
    if bases is None:
        bases = adjust_coprime([d + 1 for d in d_h])
    else:
        bases = [int(b) for b in bases]
        if len(bases) != n:
            raise ArityMismatchError(
                f"{len(bases)} bases for {n} variables")
        for b, d in zip(bases, d_h):
            if b <= d:
                raise BasesTooSmallError(
                    f"base {b} <= product degree {d}")
        _check_pairwise_coprime(bases)
    modulus = math.prod(bases)
    cof = tuple(modulus // b for b in bases)
    inv = []
    for c, b in zip(cof, bases):
        value, steps = _modinv_steps(c, b)
        inv.append(value)
        muls += steps  # Euclid divisions, costed like multiplications
    plan = CrtPlan(n, tuple(bases), modulus, cof, tuple(inv))
    weights = [c * a % modulus for c, a in zip(cof, inv)]
    muls += n

    def image(p: MultiPoly) -> UniPoly:
        nonlocal muls, adds
        out = {}
        for vec, c in p.terms.items():
            total = 0
            for k, w in zip(vec, weights):
                total += k * w
            out[total % modulus] = c
            muls += n + 1  # n products plus the final reduction
            adds += n - 1
        return UniPoly(p.ring, out)

    return ReductionOutcome("crt", image(f), image(g), plan, muls, adds)


def crt_inverse(h_x: UniPoly, plan) -> MultiPoly:
    """Residues of each exponent modulo the bases are the recovered vector.
    Accepts a CrtPlan or a plain sequence of bases."""
    bases = plan.bases if isinstance(plan, CrtPlan) else tuple(plan)
    n = len(bases)
    out = [(tuple(exp % b for b in bases), c) for exp, c in h_x.terms.items()]
    return MultiPoly(h_x.ring, n, out)


# ---------------------------------------------------------------------------
# hybrid reduction


class CrtEstimate(NamedTuple):
    degree: int
    p: int
    offset_f: int
    offset_g: int


def crt_degree_estimate(f: MultiPoly, g: MultiPoly,
                        i: int, j: int) -> CrtEstimate:
    """Predicted product degree if variables (x_i, x_j) were folded by the
    two-base residue step, with the offsets that make it valid."""
    _check_reducible(f, g)
    m_f = max_diff(f, j, i)
    m_g = max_diff(g, j, i)
    d_i = deg_var(f, i) + deg_var(g, i)
    d_j = deg_var(f, j) + deg_var(g, j)
    p = max(d_i + 1, d_j + 2 + m_f + m_g)
    degree = (m_f + m_g + max_diff(f, i, j) + max_diff(g, i, j)) * p
    return CrtEstimate(degree, p, m_f, m_g)


def hybrid_reduce(f: MultiPoly, g: MultiPoly) -> ReductionOutcome:
    """Fold x_r into x_1 for r = 2..n, choosing per round between the
    residue step and the iterative step by the smaller predicted degree
    (ties go to the iterative step)."""
    _check_reducible(f, g)
    n = f.nvars
    ring = f.ring
    fcur = dict(f.terms)
    gcur = dict(g.terms)
    muls = adds = 0
    steps = []
    for r in range(2, n + 1):
        idx = r - 1
        m_f = mx_f = None
        for vec in fcur:
            diff = vec[0] - vec[idx]
            m_f = diff if m_f is None else max(m_f, diff)
            mx_f = -diff if mx_f is None else max(mx_f, -diff)
        m_g = mx_g = None
        for vec in gcur:
            diff = vec[0] - vec[idx]
            m_g = diff if m_g is None else max(m_g, diff)
            mx_g = -diff if mx_g is None else max(mx_g, -diff)
        adds += 2 * (len(fcur) + len(gcur))  # the two difference scans
        d_i = max(v[0] for v in fcur) + max(v[0] for v in gcur)
        d_j = max(v[idx] for v in fcur) + max(v[idx] for v in gcur)
        p = max(d_i + 1, d_j + 2 + m_f + m_g)
        d_crt = (m_f + m_g + mx_f + mx_g) * p
        if d_crt < d_i * d_j:
            steps.append(CrtStep(r, p, m_f, m_g))
            for cur, off in ((fcur, m_f), (gcur, m_g)):
                folded = {}
                for vec, c in cur.items():
                    lst = list(vec)
                    lst[0] = (off + vec[idx] - vec[0]) * p + vec[0]
                    lst[idx] = 0
                    folded[tuple(lst)] = c
                muls += len(cur)
                adds += 3 * len(cur)
                cur.clear()
                cur.update(folded)
        else:
            d = d_i + 1
            steps.append(IksStep(r, d))
            for cur in (fcur, gcur):
                folded = {}
                for vec, c in cur.items():
                    lst = list(vec)
                    lst[0] = vec[0] + vec[idx] * d
                    lst[idx] = 0
                    folded[tuple(lst)] = c
                muls += len(cur)
                adds += len(cur)
                cur.clear()
                cur.update(folded)
    plan = HybridPlan(n, tuple(steps))
    f_x = UniPoly(ring, {vec[0]: c for vec, c in fcur.items()})
    g_x = UniPoly(ring, {vec[0]: c for vec, c in gcur.items()})
    return ReductionOutcome("hybrid", f_x, g_x, plan, muls, adds)


def hybrid_inverse(h_x: UniPoly, plan: HybridPlan) -> MultiPoly:
    """Undo the steps in reverse.  A residue step decodes k_1 as the
    remainder mod p; the quotient carries offset_f + offset_g (one offset
    per factor image) plus k_r - k_1, and k_1 < p rules out carries, so
    k_r = quotient - offsets + k_1.  A negative k_r means h_x was not
    produced under this plan."""
    n = plan.nvars
    out = []
    for exp, c in h_x.terms.items():
        vec = [0] * n
        rem = exp
        for step in reversed(plan.steps):
            if isinstance(step, CrtStep):
                quot, k1 = divmod(rem, step.p)
                kr = quot - (step.offset_f + step.offset_g) + k1
                if kr < 0:
                    raise NegativeExponentError(
                        f"exponent {exp} does not match the plan "
                        f"(round {step.round} digit {kr})")
                vec[step.round - 1] = kr
                rem = k1
            else:
                vec[step.round - 1], rem = divmod(rem, step.exponent)
        vec[0] = rem
        out.append((tuple(vec), c))
    return MultiPoly(h_x.ring, n, out)


# ---------------------------------------------------------------------------
# dispatch and serialization

REDUCERS = {
    "sks": sks_reduce,
    "iks": iks_reduce,
    "crt": crt_reduce,
    "hybrid": hybrid_reduce,
}


def recover(h_x: UniPoly, plan) -> MultiPoly:
    """Invert any plan produced by the reductions above."""
    if isinstance(plan, SksPlan):
        return sks_inverse(h_x, plan)
    if isinstance(plan, IksPlan):
        return iks_inverse(h_x, plan)
    if isinstance(plan, CrtPlan):
        return crt_inverse(h_x, plan)
    if isinstance(plan, HybridPlan):
        return hybrid_inverse(h_x, plan)
    if isinstance(plan, SequencePlan):
        return sequence_inverse(h_x, plan)
    raise TypeError(f"not a reduction plan: {plan!r}")


def plan_to_text(plan) -> str:
    """One-line decimal record: method tag, variable count, parameters."""
    if isinstance(plan, SksPlan):
        return f"sks {plan.nvars} {plan.base}"
    if isinstance(plan, IksPlan):
        return f"iks {plan.nvars} " + " ".join(map(str, plan.exponents))
    if isinstance(plan, CrtPlan):
        fields = (list(plan.bases) + [plan.modulus]
                  + list(plan.cofactors) + list(plan.inverses))
        return f"crt {plan.nvars} " + " ".join(map(str, fields))
    if isinstance(plan, HybridPlan):
        parts = [f"hybrid {plan.nvars}"]
        for step in plan.steps:
            if isinstance(step, CrtStep):
                parts.append(f"{step.round} crt {step.p} "
                             f"{step.offset_f} {step.offset_g}")
            else:
                parts.append(f"{step.round} iks {step.exponent}")
        return " ".join(parts)
    raise TypeError(f"not a serializable plan: {plan!r}")


def plan_from_text(text: str):
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError("plan record needs a method tag and variable count")
    tag = tokens[0]
    try:
        n = int(tokens[1])
        rest = [t for t in tokens[2:]]
        if tag == "sks":
            (base,) = map(int, rest)
            return SksPlan(n, base)
        if tag == "iks":
            exps = tuple(map(int, rest))
            if len(exps) != n or exps[0] != 1:
                raise ValueError("iks plan wants n exponents starting at 1")
            return IksPlan(n, exps)
        if tag == "crt":
            values = list(map(int, rest))
            if len(values) != 3 * n + 1:
                raise ValueError("crt plan wants n bases, modulus, "
                                 "n cofactors, n inverses")
            plan = CrtPlan.from_bases(values[:n])
            if (plan.modulus != values[n]
                    or list(plan.cofactors) != values[n + 1:2 * n + 1]
                    or list(plan.inverses) != values[2 * n + 1:]):
                raise ValueError("inconsistent crt plan record")
            return plan
        if tag == "hybrid":
            steps = []
            pos = 0
            for r in range(2, n + 1):
                if int(rest[pos]) != r:
                    raise ValueError(f"expected round {r}")
                kind = rest[pos + 1]
                if kind == "crt":
                    steps.append(CrtStep(r, int(rest[pos + 2]),
                                         int(rest[pos + 3]), int(rest[pos + 4])))
                    pos += 5
                elif kind == "iks":
                    steps.append(IksStep(r, int(rest[pos + 2])))
                    pos += 3
                else:
                    raise ValueError(f"unknown hybrid branch {kind!r}")
            if pos != len(rest):
                raise ValueError("trailing tokens in hybrid plan")
            return HybridPlan(n, tuple(steps))
    except (ValueError, IndexError) as exc:
        raise ValueError(f"malformed plan record: {exc}") from exc
    raise ValueError(f"unknown plan method {tag!r}")
