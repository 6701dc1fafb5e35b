import random

import pytest

from kronmul.errors import (
    ExponentOverflowError,
    ParseError,
    UnknownVariableError,
)
from kronmul.poly import MAX_EXPONENT, MultiPoly, UniPoly
from kronmul.rings import INTEGERS
from kronmul.textfmt import (
    format_poly,
    format_unipoly,
    parse_poly,
    parse_unipoly,
)

from conftest import F7, random_poly


def test_parse_worked_example(example3v):
    f, _ = example3v
    assert f.terms == {(7, 7, 7): 1, (1, 7, 17): 1}


def test_parse_zero():
    assert parse_poly("0", 3, INTEGERS).is_zero
    assert format_poly(MultiPoly.zero(INTEGERS, 3)) == "0"


def test_parse_merges():
    assert parse_poly("2*x1 - x1", 1, INTEGERS) == parse_poly("x1", 1, INTEGERS)


def test_parse_constants_and_signs():
    p = parse_poly("-3*x1 + 7 - 2", 1, INTEGERS)
    assert p.terms == {(1,): -3, (0,): 5}
    assert parse_poly("-x1 + x2", 2, INTEGERS).terms == {(1, 0): -1, (0, 1): 1}


def test_parse_whitespace_insensitive():
    a = parse_poly("  x1 ^ 2 *x2+ 3 ", 2, INTEGERS)
    b = parse_poly("x1^2*x2 + 3", 2, INTEGERS)
    assert a == b


def test_parse_repeated_factor_accumulates():
    p = parse_poly("x1^2*x1*x2", 2, INTEGERS)
    assert p.terms == {(3, 1): 1}


def test_canonical_format_is_descending_lex(example3v):
    f, _ = example3v
    assert format_poly(f) == "x1^7*x2^7*x3^7 + x1*x2^7*x3^17"


def test_format_omits_unit_coeff_and_power_one():
    p = MultiPoly(INTEGERS, 2, [((1, 0), 1), ((0, 2), -1), ((0, 0), 4)])
    assert format_poly(p) == "x1 - x2^2 + 4"


def test_format_leading_negative_round_trips():
    p = MultiPoly(INTEGERS, 2, [((1, 0), -1), ((0, 1), 1)])
    text = format_poly(p)
    assert text == "-x1 + x2"
    assert parse_poly(text, 2, INTEGERS) == p


def test_prime_field_coefficients_canonicalized():
    p = parse_poly("10*x1 - 2", 1, F7)
    assert p.terms == {(1,): 3, (0,): 5}
    assert format_poly(p) == "3*x1 + 5"


def test_round_trip_random():
    rng = random.Random(11)
    for ring in (INTEGERS, F7):
        for _ in range(40):
            p = random_poly(rng, ring, rng.randint(1, 4), 9, 12)
            assert parse_poly(format_poly(p), p.nvars, ring) == p


def test_syntax_error_carries_offset():
    with pytest.raises(ParseError) as err:
        parse_poly("x1 + + x2", 2, INTEGERS)
    assert err.value.offset == 5
    with pytest.raises(ParseError):
        parse_poly("x1 *", 2, INTEGERS)
    with pytest.raises(ParseError):
        parse_poly("", 2, INTEGERS)
    with pytest.raises(ParseError):
        parse_poly("2 3", 2, INTEGERS)


def test_unknown_variable():
    with pytest.raises(UnknownVariableError):
        parse_poly("x4", 3, INTEGERS)
    with pytest.raises(UnknownVariableError):
        parse_poly("x0", 3, INTEGERS)


def test_exponent_literal_overflow():
    with pytest.raises(ExponentOverflowError):
        parse_poly(f"x1^{MAX_EXPONENT + 1}", 1, INTEGERS)
    # accumulated across factors, too
    with pytest.raises(ExponentOverflowError):
        parse_poly(f"x1^{MAX_EXPONENT}*x1", 1, INTEGERS)


def test_unipoly_round_trip():
    u = UniPoly(INTEGERS, {1911: 1, 4465: 1})
    assert format_unipoly(u) == "x^4465 + x^1911"
    assert parse_unipoly(format_unipoly(u), INTEGERS) == u
    assert parse_unipoly("x^1911 + x^4465", INTEGERS) == u
    assert format_unipoly(UniPoly(INTEGERS, {})) == "0"
    assert parse_unipoly("7", INTEGERS).terms == {0: 7}


def test_unipoly_rejects_indexed_variables():
    with pytest.raises(ParseError):
        parse_unipoly("x1 + x2", INTEGERS)


def test_unipoly_huge_exponent_allowed():
    exp = 10**30
    u = parse_unipoly(f"x^{exp}", INTEGERS)
    assert u.terms == {exp: 1}
