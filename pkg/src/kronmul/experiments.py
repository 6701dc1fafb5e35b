"""Random polynomial generators and the degree-ratio harness.

The harness generates pairs of random polynomials with a prescribed
per-variable degree tuple, reduces them by the one-shot, iterative and
hybrid methods, and reports the degree ratios iterative/one-shot and
hybrid/one-shot together with their analytic predictions.

Two generation regimes:
  fully random      every exponent uniform on [0, d_i];
  partially random  additionally |k_1 - k_2| <= L in every monomial.

After the T random monomials are merged, one monomial per variable is
forced to attain that variable's maximum degree, so the attained degree
tuple (and with it every prediction) is deterministic rather than merely
high-probability.  In the partially random regime the forced monomials
respect the L constraint, which also requires L >= |d_1 - d_2|.

Trials are reproducible: each trial's generator streams derive from
(seed, trial index) through a fixed 64-bit mix, so identical configs give
bit-identical reports.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Sequence

from . import reduce as red
from .errors import InfeasibleConstraintError
from .poly import MultiPoly
from .rings import INTEGERS, RingSpec

PAPER_TUPLES = (
    (100, 100, 100, 100),
    (70, 80, 90, 100),
    (40, 60, 80, 100),
    (10, 40, 70, 100),
)

_COEFF_SPAN = 999  # integer-ring coefficients drawn from [-span, span] \ {0}


@dataclass(frozen=True)
class GenConfig:
    degrees: tuple[int, ...]      # per-variable degree, same for f and g
    terms: int                    # monomials drawn before merging
    seed: int
    l_bound: int | None = None    # |k_1 - k_2| cap, partially random only
    ring: RingSpec = INTEGERS

    def __post_init__(self):
        if self.terms < 1:
            raise ValueError("terms must be >= 1")
        if any(d < 1 for d in self.degrees):
            raise ValueError("degrees must be >= 1")
        if self.l_bound is not None and self.l_bound < 1:
            raise ValueError("l_bound must be >= 1 when present")

    @property
    def nvars(self) -> int:
        return len(self.degrees)


def _mix64(seed: int, salt: int) -> int:
    """Derive a child seed; splitmix64 finalizer over seed and salt."""
    x = (seed * 0x9E3779B97F4A7C15 + salt + 1) % 2**64
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9 % 2**64
    x = (x ^ (x >> 27)) * 0x94D049BB133111EB % 2**64
    return x ^ (x >> 31)


def _random_coeff(rng: Random, ring: RingSpec) -> int:
    if ring.is_field:
        return rng.randint(1, ring.modulus - 1)
    c = rng.randint(-_COEFF_SPAN, _COEFF_SPAN - 1)
    return c if c < 0 else c + 1


def _forced_vectors(cfg: GenConfig) -> list[tuple]:
    """One exponent vector per variable attaining that variable's maximum."""
    n = cfg.nvars
    d = cfg.degrees
    L = cfg.l_bound
    if L is not None and n >= 2 and abs(d[0] - d[1]) > L:
        raise InfeasibleConstraintError(
            f"|d1 - d2| = {abs(d[0] - d[1])} > L = {L}: no monomial can "
            f"attain both maxima")
    forced = []
    for i in range(n):
        vec = [0] * n
        vec[i] = d[i]
        if L is not None and n >= 2:
            if i == 0:
                vec[1] = min(max(0, d[0] - L), d[1])
            elif i == 1:
                vec[0] = min(max(0, d[1] - L), d[0])
        forced.append(tuple(vec))
    return forced


def _generate(cfg: GenConfig) -> MultiPoly:
    rng = Random(cfg.seed)
    n = cfg.nvars
    d = cfg.degrees
    L = cfg.l_bound
    forced = _forced_vectors(cfg)
    terms: dict[tuple, int] = {}
    q = cfg.ring.modulus
    for _ in range(cfg.terms):
        if L is None:
            vec = tuple(rng.randint(0, d[i]) for i in range(n))
        else:
            k2 = rng.randint(0, d[1])
            k1 = rng.randint(max(0, k2 - L), min(d[0], k2 + L))
            vec = (k1, k2) + tuple(rng.randint(0, d[i]) for i in range(2, n))
        c = terms.get(vec, 0) + _random_coeff(rng, cfg.ring)
        if q is not None:
            c %= q
        if c:
            terms[vec] = c
        else:
            terms.pop(vec, None)
    for vec in forced:
        if vec not in terms:
            terms[vec] = 1
    return MultiPoly(cfg.ring, n, terms)


def gen_fully_random(cfg: GenConfig) -> MultiPoly:
    if cfg.l_bound is not None:
        raise ValueError("fully random config must not carry l_bound")
    return _generate(cfg)


def gen_partially_random(cfg: GenConfig) -> MultiPoly:
    if cfg.l_bound is None:
        raise ValueError("partially random config requires l_bound")
    if cfg.nvars < 2:
        raise ValueError("the exponent-difference bound needs >= 2 variables")
    return _generate(cfg)


def generate(cfg: GenConfig) -> MultiPoly:
    return _generate(cfg)


# ---------------------------------------------------------------------------
# analytic ratio predictions


def predict_ratio_iks(d_h: Sequence[int]) -> Fraction:
    """Predicted (iterative / one-shot) product-degree ratio for a product
    with per-variable degrees d_h: prod(d_i + 1) over d_n * base^(n-1)."""
    d_h = list(d_h)
    if any(d < 1 for d in d_h):
        raise ValueError("degrees must be >= 1")
    base = max(d_h) + 1
    num = 1
    for d in d_h:
        num *= d + 1
    return Fraction(num, d_h[-1] * base ** (len(d_h) - 1))


def predict_ratio_hybrid_crt(d_h: Sequence[int], l_bound: int) -> Fraction:
    """Predicted (hybrid / one-shot) ratio when round 2 takes the residue
    branch under the |k_1 - k_2| <= L regime."""
    d_h = list(d_h)
    n = len(d_h)
    if n < 3:
        raise ValueError("needs at least 3 variables")
    base = max(d_h) + 1
    num = 4 * l_bound * (d_h[1] + 2 * l_bound + 2) + 1
    for d in d_h[2:]:
        num *= d + 1
    return Fraction(num, d_h[-1] * base ** (n - 1))


# ---------------------------------------------------------------------------
# harness


@dataclass(frozen=True)
class TrialRecord:
    degrees: tuple[int, ...]   # degree tuple of each factor
    l_bound: int | None
    terms: int
    trial: int
    seed: int                  # per-trial derived seed
    d_sks: int
    d_iks: int
    d_hr: int
    d_crt: int | None
    ratio_iks: float
    ratio_hr: float
    pred_iks: float
    pred_hr: float
    round2_crt: bool           # hybrid took the residue branch in round 2


@dataclass(frozen=True)
class GroupAverage:
    degrees: tuple[int, ...]
    l_bound: int | None
    trials: int
    mean_ratio_iks: float
    mean_ratio_hr: float
    pred_iks: float
    pred_hr: float
    all_round2_crt: bool
    any_round2_crt: bool


@dataclass(frozen=True)
class RatioReport:
    rows: tuple[TrialRecord, ...]

    def averages(self) -> list[GroupAverage]:
        """Per (degree tuple, L) means of the per-trial ratios."""
        groups: dict[tuple, list[TrialRecord]] = {}
        for row in self.rows:
            groups.setdefault((row.degrees, row.l_bound), []).append(row)
        out = []
        for (degrees, l_bound), rows in groups.items():
            k = len(rows)
            out.append(GroupAverage(
                degrees, l_bound, k,
                sum(r.ratio_iks for r in rows) / k,
                sum(r.ratio_hr for r in rows) / k,
                rows[0].pred_iks, rows[0].pred_hr,
                all(r.round2_crt for r in rows),
                any(r.round2_crt for r in rows),
            ))
        return out

    def csv_header(self) -> list[str]:
        n = len(self.rows[0].degrees) if self.rows else 0
        return (["n"] + [f"d{i}" for i in range(1, n + 1)]
                + ["L", "T", "trial", "seed", "d_sks", "d_iks", "d_hr",
                   "ratio_iks", "ratio_hr", "pred_iks", "pred_hr"])

    def to_csv(self, stream) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(self.csv_header())
        for r in self.rows:
            writer.writerow(
                [len(r.degrees)] + list(r.degrees)
                + ["" if r.l_bound is None else r.l_bound,
                   r.terms, r.trial, r.seed, r.d_sks, r.d_iks, r.d_hr,
                   f"{r.ratio_iks:.9f}", f"{r.ratio_hr:.9f}",
                   f"{r.pred_iks:.9f}", f"{r.pred_hr:.9f}"])

    def csv_text(self) -> str:
        buf = io.StringIO()
        self.to_csv(buf)
        return buf.getvalue()

    def to_json(self) -> str:
        out = []
        for r in self.rows:
            rec = {
                "n": len(r.degrees), "degrees": list(r.degrees),
                "L": r.l_bound, "T": r.terms, "trial": r.trial,
                "seed": r.seed, "d_sks": r.d_sks, "d_iks": r.d_iks,
                "d_hr": r.d_hr, "ratio_iks": r.ratio_iks,
                "ratio_hr": r.ratio_hr, "pred_iks": r.pred_iks,
                "pred_hr": r.pred_hr,
            }
            if r.d_crt is not None:
                rec["d_crt"] = r.d_crt
            out.append(rec)
        return json.dumps(out, indent=2)


def run_trial(degrees: Sequence[int], terms: int, trial: int, seed: int,
              l_bound: int | None = None,
              include_crt: bool = False) -> TrialRecord:
    degrees = tuple(degrees)
    trial_seed = _mix64(seed, trial)
    cfg_f = GenConfig(degrees, terms, _mix64(trial_seed, 0), l_bound)
    cfg_g = GenConfig(degrees, terms, _mix64(trial_seed, 1), l_bound)
    f = _generate(cfg_f)
    g = _generate(cfg_g)

    d_sks = red.sks_reduce(f, g).d_hx
    d_iks = red.iks_reduce(f, g).d_hx
    hybrid = red.hybrid_reduce(f, g)
    d_hr = hybrid.d_hx
    d_crt = red.crt_reduce(f, g).d_hx if include_crt else None
    round2_crt = isinstance(hybrid.plan.steps[0], red.CrtStep)

    d_h = [2 * d for d in degrees]  # both factors attain the tuple exactly
    pred_iks = float(predict_ratio_iks(d_h))
    if l_bound is not None and len(degrees) >= 3:
        # beyond the residue-branch region the hybrid plateaus at the
        # iterative prediction
        pred_hr = min(float(predict_ratio_hybrid_crt(d_h, l_bound)), pred_iks)
    else:
        pred_hr = pred_iks
    return TrialRecord(degrees, l_bound, terms, trial, trial_seed,
                       d_sks, d_iks, d_hr, d_crt,
                       d_iks / d_sks, d_hr / d_sks, pred_iks, pred_hr,
                       round2_crt)


def run_table3(tuples: Sequence[Sequence[int]] = PAPER_TUPLES,
               terms: int = 10_000, trials: int = 20, seed: int = 0,
               include_crt: bool = False) -> RatioReport:
    """Fully random regime: averaged ratios per degree tuple."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rows = []
    for degrees in tuples:
        for trial in range(trials):
            rows.append(run_trial(degrees, terms, trial, seed,
                                  include_crt=include_crt))
    return RatioReport(tuple(rows))


def run_fig1_sweep(degrees: Sequence[int], l_values: Sequence[int],
                   terms: int = 10_000, trials: int = 20, seed: int = 0,
                   include_crt: bool = False) -> RatioReport:
    """Partially random regime: averaged ratios per L for one tuple."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rows = []
    for l_bound in l_values:
        for trial in range(trials):
            rows.append(run_trial(degrees, terms, trial, seed,
                                  l_bound=l_bound, include_crt=include_crt))
    return RatioReport(tuple(rows))
