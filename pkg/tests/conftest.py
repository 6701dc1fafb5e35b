import random

import pytest

from kronmul.poly import MultiPoly
from kronmul.rings import INTEGERS, prime_field
from kronmul.textfmt import parse_poly

F7 = prime_field(7)
F97 = prime_field(97)


@pytest.fixture
def example3v():
    """The worked 3-variable pair used throughout the golden tests."""
    f = parse_poly("x1^7*x2^7*x3^7 + x1*x2^7*x3^17", 3, INTEGERS)
    g = parse_poly("x2^3*x3^34 + x1^8*x2^8*x3^8", 3, INTEGERS)
    return f, g


def random_poly(rng: random.Random, ring, nvars, max_degree, max_terms,
                ensure_deg=False):
    """Random nonzero polynomial with exponents in [0, max_degree]^nvars.

    ensure_deg forces every per-variable maximum to be attained, which the
    degree-sensitive invariants (footnote-style ratio bounds) need.
    """
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            vec = tuple(rng.randint(0, max_degree) for _ in range(nvars))
            if ring.is_field:
                terms[vec] = terms.get(vec, 0) + rng.randint(1, ring.modulus - 1)
            else:
                c = rng.randint(-50, 49)
                terms[vec] = terms.get(vec, 0) + (c if c < 0 else c + 1)
        if ensure_deg:
            for i in range(nvars):
                vec = [0] * nvars
                vec[i] = max_degree
                terms.setdefault(tuple(vec), 1)
        p = MultiPoly(ring, nvars, terms)
        if not p.is_zero:
            return p


def random_pair(rng, ring, nvars, max_degree, max_terms, ensure_deg=False):
    return (random_poly(rng, ring, nvars, max_degree, max_terms, ensure_deg),
            random_poly(rng, ring, nvars, max_degree, max_terms, ensure_deg))
