import random

import pytest

from kronmul.errors import (
    ArityMismatchError,
    EmptyPolynomialError,
    ExponentOverflowError,
    RingMismatchError,
)
from kronmul.poly import (
    MAX_EXPONENT,
    NEG_INF,
    MultiPoly,
    add,
    deg_var,
    max_diff,
    mul_direct,
    normalize,
)
from kronmul.rings import INTEGERS, prime_field
from kronmul.textfmt import parse_poly

from conftest import F7, random_pair, random_poly


def test_normalize_merges_like_terms():
    p = MultiPoly(INTEGERS, 1, [((1,), 1), ((1,), 1)])
    assert p.terms == {(1,): 2}


def test_normalize_cancellation_to_zero():
    p = MultiPoly(INTEGERS, 1, [((1,), 1), ((1,), -1)])
    assert p.is_zero and p.terms == {}


def test_normalize_modular_cancellation():
    # 3 + 4 = 7 = 0 in the field mod 7
    assert (3 + 4) % 7 == 0
    p = MultiPoly(F7, 1, [((1,), 3), ((1,), 4)])
    assert p.is_zero


def test_normalize_idempotent():
    rng = random.Random(0)
    for _ in range(20):
        p = random_poly(rng, INTEGERS, 3, 10, 20)
        assert normalize(p) == p


def test_deg_var_worked_example(example3v):
    f, _ = example3v
    assert deg_var(f, 3) == 17
    assert deg_var(f, 1) == 7
    assert deg_var(f, 2) == 7


def test_deg_var_zero_poly_is_neg_inf():
    z = MultiPoly.zero(INTEGERS, 2)
    d = deg_var(z, 1)
    assert d is NEG_INF
    assert d < 0 and d < -10**100
    assert not d >= 0


def test_neg_inf_supports_no_arithmetic():
    with pytest.raises(TypeError):
        NEG_INF + 1  # noqa: B018


def test_deg_var_index_out_of_range(example3v):
    f, _ = example3v
    with pytest.raises(IndexError):
        deg_var(f, 4)
    with pytest.raises(IndexError):
        deg_var(f, 0)


def test_max_diff_worked_example(example3v):
    f, _ = example3v
    # terms (7,7,7) and (1,7,17): exhaustive scan over both
    assert max_diff(f, 2, 1) == max(7 - 7, 1 - 7) == 0
    assert max_diff(f, 1, 2) == max(7 - 7, 7 - 1) == 6


def test_max_diff_single_monomial_equal_exponents():
    p = MultiPoly(INTEGERS, 2, [((4, 4), 1)])
    assert max_diff(p, 1, 2) == 0


def test_max_diff_matches_exhaustive_scan():
    rng = random.Random(1)
    for _ in range(50):
        p = random_poly(rng, INTEGERS, 3, 15, 25)
        i, j = rng.sample([1, 2, 3], 2)
        oracle = max(vec[j - 1] - vec[i - 1] for vec in p.terms)
        assert max_diff(p, i, j) == oracle


def test_max_diff_antisymmetric_on_monomials():
    rng = random.Random(2)
    for _ in range(30):
        vec = tuple(rng.randint(0, 20) for _ in range(3))
        p = MultiPoly(INTEGERS, 3, [(vec, 5)])
        for i, j in ((1, 2), (1, 3), (2, 3)):
            assert max_diff(p, i, j) == -max_diff(p, j, i)


def test_max_diff_rejects_zero_poly():
    with pytest.raises(EmptyPolynomialError):
        max_diff(MultiPoly.zero(INTEGERS, 2), 1, 2)


def test_mul_direct_worked_example(example3v):
    f, g = example3v
    want = parse_poly(
        "x1^7*x2^10*x3^41 + x1^15*x2^15*x3^15 + x1*x2^10*x3^51 + x1^9*x2^15*x3^25",
        3, INTEGERS)
    assert mul_direct(f, g) == want


def test_mul_direct_zero_absorbs(example3v):
    f, _ = example3v
    assert mul_direct(f, MultiPoly.zero(INTEGERS, 3)).is_zero


def test_mul_direct_difference_of_squares():
    a = parse_poly("x1 + x2", 2, INTEGERS)
    b = parse_poly("x1 - x2", 2, INTEGERS)
    assert mul_direct(a, b) == parse_poly("x1^2 - x2^2", 2, INTEGERS)


def test_mul_direct_degree_additivity_over_integers():
    # no cancellation over the integers: deg_i(f*g) = deg_i f + deg_i g
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(1, 4)
        f, g = random_pair(rng, INTEGERS, n, 12, 15)
        h = mul_direct(f, g)
        for i in range(1, n + 1):
            assert deg_var(h, i) == deg_var(f, i) + deg_var(g, i)


def test_add_examples():
    p = parse_poly("x1 + x2", 2, INTEGERS)
    q = parse_poly("x1", 2, INTEGERS)
    assert add(p, q) == parse_poly("2*x1 + x2", 2, INTEGERS)
    assert add(p, MultiPoly.zero(INTEGERS, 2)) == p
    a = MultiPoly(F7, 1, [((1,), 3)])
    b = MultiPoly(F7, 1, [((1,), 4)])
    assert add(a, b).is_zero


@pytest.mark.parametrize("ring", [INTEGERS, F7])
def test_ring_laws_on_small_instances(ring):
    rng = random.Random(4)
    for _ in range(15):
        f, g = random_pair(rng, ring, 2, 6, 8)
        h = random_poly(rng, ring, 2, 6, 8)
        assert add(f, g) == add(g, f)
        assert add(add(f, g), h) == add(f, add(g, h))
        assert mul_direct(f, g) == mul_direct(g, f)
        assert mul_direct(mul_direct(f, g), h) == mul_direct(f, mul_direct(g, h))
        assert mul_direct(f, add(g, h)) == add(mul_direct(f, g), mul_direct(f, h))


def test_mismatch_errors(example3v):
    f, _ = example3v
    other_ring = MultiPoly(F7, 3, [((1, 1, 1), 1)])
    with pytest.raises(RingMismatchError):
        mul_direct(f, other_ring)
    with pytest.raises(ArityMismatchError):
        mul_direct(f, MultiPoly(INTEGERS, 2, [((1, 1), 1)]))


def test_exponent_width_is_checked():
    with pytest.raises(ExponentOverflowError):
        MultiPoly(INTEGERS, 1, [((MAX_EXPONENT + 1,), 1)])
    big = MultiPoly(INTEGERS, 1, [((MAX_EXPONENT,), 1)])
    with pytest.raises(ExponentOverflowError):
        mul_direct(big, big)


def test_operator_sugar(example3v):
    f, g = example3v
    assert f * g == mul_direct(f, g)
    assert f + g == add(f, g)
    assert (f - f).is_zero
