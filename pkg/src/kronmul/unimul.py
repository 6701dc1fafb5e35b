"""Univariate multiplication backends.

mul_sparse is the always-correct schoolbook product: exact over both
rings, happy with astronomically large exponents, and the oracle the dense
path is checked against.  mul_ntt is the dense fast path: coefficients are
convolved by number-theoretic transforms over a fixed list of word-size
primes (each c * 2^k + 1 with k >= 23) and recombined exactly, then
reduced into the target ring.  choose_backend picks between them.

The prime count is chosen so the prime product exceeds twice the largest
possible convolution coefficient, which makes the integer reconstruction
exact for both rings.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DegreeTooLargeError,
    NttCapacityError,
    RingMismatchError,
)
from .poly import UniPoly

#: (prime, primitive root); every prime is c * 2^k + 1 with k >= 23 and
#: fits in a signed 64-bit product, so the transforms stay in int64.
NTT_PRIMES = (
    (167772161, 3),     # 5 * 2^25 + 1
    (469762049, 3),     # 7 * 2^26 + 1
    (754974721, 11),    # 45 * 2^24 + 1
    (998244353, 3),     # 119 * 2^23 + 1
    (1224736769, 3),    # 73 * 2^24 + 1
    (2013265921, 31),   # 15 * 2^27 + 1
)

_MAX_TRANSFORM = 1 << 23  # limited by the smallest 2-adic valuation above

DEFAULT_DENSE_THRESHOLD = 1 << 22


@dataclass(frozen=True)
class BackendChoice:
    """How to multiply univariate polynomials.

    kind 'auto' resolves per input pair: the dense transform runs when the
    product degree stays under dense_threshold and both inputs have term
    density above 1/64; everything else goes through the sparse path.
    """

    kind: str = "auto"  # 'auto' | 'sparse' | 'ntt'
    dense_threshold: int = DEFAULT_DENSE_THRESHOLD

    def __post_init__(self):
        if self.kind not in ("auto", "sparse", "ntt"):
            raise ValueError(f"unknown backend kind {self.kind!r}")
        if self.dense_threshold < 1:
            raise ValueError("dense_threshold must be >= 1")


AUTO = BackendChoice()
SPARSE = BackendChoice("sparse")
NTT = BackendChoice("ntt")


def _check_rings(a: UniPoly, b: UniPoly):
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")


# ---------------------------------------------------------------------------
# sparse schoolbook

_DENSE_ORACLE_LIMIT = 1 << 16


def mul_sparse(a: UniPoly, b: UniPoly) -> UniPoly:
    """Exact term-by-term product with merging."""
    _check_rings(a, b)
    ring = a.ring
    if a.is_zero or b.is_zero:
        return UniPoly.zero(ring)
    da, db = a.degree(), b.degree()
    # Small dense inputs run as a list convolution: same schoolbook
    # arithmetic, no dict hashing in the hot loop.
    if (da + db < _DENSE_ORACLE_LIMIT
            and len(a) * 4 > da + 1 and len(b) * 4 > db + 1):
        return _mul_dense_lists(a, b)
    q = ring.modulus
    acc: dict[int, int] = {}
    items = list(b.terms.items())
    for ea, ca in a.terms.items():
        for eb, cb in items:
            e = ea + eb
            c = acc.get(e, 0) + ca * cb
            if q is not None:
                c %= q
            if c:
                acc[e] = c
            else:
                acc.pop(e, None)
    return UniPoly(ring, acc)


def _mul_dense_lists(a: UniPoly, b: UniPoly) -> UniPoly:
    ring = a.ring
    la = [0] * (a.degree() + 1)
    for e, c in a.terms.items():
        la[e] = c
    lb = [0] * (b.degree() + 1)
    for e, c in b.terms.items():
        lb[e] = c
    res = [0] * (len(la) + len(lb) - 1)
    nb = len(lb)
    for i, ca in enumerate(la):
        if not ca:
            continue
        seg = res[i:i + nb]
        res[i:i + nb] = [x + ca * y for x, y in zip(seg, lb)]
    q = ring.modulus
    if q is not None:
        res = [c % q for c in res]
    return UniPoly(ring, {e: c for e, c in enumerate(res) if c})


# ---------------------------------------------------------------------------
# dense transform path


@lru_cache(maxsize=16)
def _bitrev_permutation(n: int) -> np.ndarray:
    perm = np.zeros(n, dtype=np.int64)
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        perm[i] = j
    return perm


@lru_cache(maxsize=64)
def _twiddles(p: int, g: int, n: int, invert: bool) -> tuple:
    """Per-stage twiddle arrays for a length-n transform mod p."""
    root = pow(g, (p - 1) // n, p)
    if pow(root, n // 2, p) != p - 1:
        raise AssertionError(f"root of unity order check failed for {p}")
    if invert:
        root = pow(root, p - 2, p)
    stages = []
    length = 2
    while length <= n:
        w = pow(root, n // length, p)
        half = length // 2
        tw = np.ones(half, dtype=np.int64)
        size, cur = 1, w
        while size < half:
            step = min(size, half - size)
            tw[size:size + step] = tw[:step] * cur % p
            cur = cur * cur % p
            size *= 2
        stages.append(tw)
        length *= 2
    return tuple(stages)


def _ntt(vec: np.ndarray, p: int, g: int, invert: bool) -> np.ndarray:
    """In-place-style iterative radix-2 transform; vec length is a power
    of two and every value is in [0, p)."""
    n = len(vec)
    a = vec[_bitrev_permutation(n)]
    for tw in _twiddles(p, g, n, invert):
        half = len(tw)
        length = half * 2
        a = a.reshape(-1, length)
        lo = a[:, :half]
        hi = a[:, half:] * tw % p
        u = lo + hi
        v = lo - hi
        a = np.concatenate((u % p, v % p), axis=1).reshape(-1)
    if invert:
        a = a * pow(n, p - 2, p) % p
    return a


def _convolve_mod(ca: list[int], cb: list[int], p: int, g: int) -> np.ndarray:
    out_len = len(ca) + len(cb) - 1
    n = 2  # length-1 transforms have no root of order n
    while n < out_len:
        n *= 2
    fa = np.zeros(n, dtype=np.int64)
    fa[:len(ca)] = [c % p for c in ca]
    fb = np.zeros(n, dtype=np.int64)
    fb[:len(cb)] = [c % p for c in cb]
    fa = _ntt(fa, p, g, False)
    fb = _ntt(fb, p, g, False)
    prod = fa * fb % p
    return _ntt(prod, p, g, True)[:out_len]


def _select_primes(bound: int) -> list[tuple[int, int]]:
    chosen = []
    acc = 1
    for p, g in NTT_PRIMES:
        chosen.append((p, g))
        acc *= p
        if acc > bound:
            return chosen
    raise NttCapacityError(
        f"coefficient bound {bound} exceeds the prime table capacity {acc}")


def _combine_field(residues: list[np.ndarray], primes: list[int],
                   q: int) -> np.ndarray:
    """Garner reconstruction of the exact convolution, reduced mod q.
    Everything stays in int64: all factors are below 2^31."""
    digits = [residues[0] % primes[0]]
    for i in range(1, len(primes)):
        p_i = primes[i]
        x = digits[0] % p_i
        scale = primes[0] % p_i
        for j in range(1, i):
            x = (x + digits[j] * scale) % p_i
            scale = scale * primes[j] % p_i
        inv = pow(scale, p_i - 2, p_i)
        digits.append((residues[i] - x) * inv % p_i)
    out = digits[0] % q
    scale = primes[0] % q
    for j in range(1, len(primes)):
        out = (out + digits[j] * scale) % q
        scale = scale * primes[j] % q
    return out


def mul_ntt(a: UniPoly, b: UniPoly,
            choice: BackendChoice | None = None) -> UniPoly:
    """Dense convolution; equals mul_sparse wherever it is defined."""
    _check_rings(a, b)
    ring = a.ring
    if a.is_zero or b.is_zero:
        return UniPoly.zero(ring)
    threshold = (choice or AUTO).dense_threshold
    da, db = a.degree(), b.degree()
    if da + db >= threshold:
        raise DegreeTooLargeError(
            f"product degree {da + db} >= threshold {threshold}")
    if da + db + 1 > _MAX_TRANSFORM:
        raise DegreeTooLargeError(
            f"product needs transform length > {_MAX_TRANSFORM}")

    ca = [0] * (da + 1)
    for e, c in a.terms.items():
        ca[e] = c
    cb = [0] * (db + 1)
    for e, c in b.terms.items():
        cb[e] = c
    max_a = max(abs(c) for c in ca)
    max_b = max(abs(c) for c in cb)
    bound = 2 * max_a * max_b * min(len(a), len(b))
    primes = _select_primes(bound)

    residues = [_convolve_mod(ca, cb, p, g) for p, g in primes]
    q = ring.modulus
    if q is not None and q < 2**31:
        coeffs = _combine_field(residues, [p for p, _ in primes], q)
        out = {e: int(c) for e, c in enumerate(coeffs) if c}
        return UniPoly(ring, out)

    # Exact integer reconstruction (integer ring, or a huge field modulus):
    # classic residue recombination in Python ints, balanced to signed.
    plist = [p for p, _ in primes]
    modulus = 1
    for p in plist:
        modulus *= p
    weights = []
    for p in plist:
        cof = modulus // p
        weights.append(cof * pow(cof % p, p - 2, p) % modulus)
    half = modulus // 2
    columns = [r.tolist() for r in residues]
    out = {}
    for e, parts in enumerate(zip(*columns)):
        v = 0
        for r, w in zip(parts, weights):
            v += r * w
        v %= modulus
        if v > half:
            v -= modulus
        if q is not None:
            v %= q
        if v:
            out[e] = v
    return UniPoly(ring, out)


def choose_backend(a: UniPoly, b: UniPoly,
                   choice: BackendChoice | None = None) -> str:
    """Resolve a BackendChoice against a concrete input pair."""
    choice = choice or AUTO
    if choice.kind != "auto":
        return choice.kind
    if a.is_zero or b.is_zero:
        return "sparse"
    da, db = a.degree(), b.degree()
    if da + db >= choice.dense_threshold:
        return "sparse"
    if len(a) * 64 <= da + 1 or len(b) * 64 <= db + 1:
        return "sparse"
    return "ntt"


def multiply(a: UniPoly, b: UniPoly,
             choice: BackendChoice | None = None) -> UniPoly:
    """Multiply through whichever backend choose_backend resolves to."""
    if choose_backend(a, b, choice) == "ntt":
        return mul_ntt(a, b, choice)
    return mul_sparse(a, b)
