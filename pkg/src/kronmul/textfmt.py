"""Text format for polynomials.

Grammar (ASCII, whitespace insignificant between tokens):

    poly   := term (('+'|'-') term)*  |  '0'
    term   := coeff ('*' factor)*  |  factor ('*' factor)*
    coeff  := decimal integer, optional leading '-'
    factor := 'x' INDEX ('^' EXP)?          multivariate, INDEX in 1..nvars
    factor := 'x' ('^' EXP)?                univariate

A leading '+' or '-' before the first term is also accepted, so canonical
output of a polynomial whose leading coefficient is -1 round-trips.

Canonical output sorts terms descending-lexicographically on exponent
vectors (descending exponent for univariate), writes explicit '*', omits
'^1' and the coefficient 1, and renders negative integer coefficients
through the '-' separator.
"""

from __future__ import annotations

from .errors import ExponentOverflowError, ParseError, UnknownVariableError
from .poly import MAX_EXPONENT, MultiPoly, UniPoly
from .rings import RingSpec


def _skip_ws(s: str, pos: int) -> int:
    n = len(s)
    while pos < n and s[pos].isspace():
        pos += 1
    return pos


def _parse_int(s: str, pos: int) -> tuple[int, int]:
    start = pos
    n = len(s)
    while pos < n and s[pos].isdigit():
        pos += 1
    if pos == start:
        raise ParseError("expected integer", start)
    return int(s[start:pos]), pos


def _parse_factor(s, pos, nvars):
    """Parse one 'x...' factor; nvars None means univariate (bare x)."""
    if pos >= len(s) or s[pos] != "x":
        raise ParseError("expected variable", pos)
    pos += 1
    if nvars is None:
        if pos < len(s) and s[pos].isdigit():
            raise ParseError("univariate polynomials use a bare 'x'", pos)
        index = 1
    else:
        at = pos
        index, pos = _parse_int(s, pos)
        if not 1 <= index <= nvars:
            raise UnknownVariableError(f"unknown variable x{index}", at)
    exp = 1
    probe = _skip_ws(s, pos)
    if probe < len(s) and s[probe] == "^":
        at = _skip_ws(s, probe + 1)
        exp, pos = _parse_int(s, at)
        if nvars is not None and exp > MAX_EXPONENT:
            raise ExponentOverflowError(
                f"exponent literal at offset {at} exceeds 63-bit width")
    return index, exp, pos


def _parse_term(s, pos, nvars):
    """Returns (coeff, exponent accumulator dict, new position)."""
    exps: dict[int, int] = {}
    coeff = 1
    signed = (s[pos] in "+-"
              and (at := _skip_ws(s, pos + 1)) < len(s) and s[at].isdigit())
    if s[pos].isdigit() or signed:
        neg = s[pos] == "-"
        at = _skip_ws(s, pos + 1) if signed else pos
        coeff, pos = _parse_int(s, at)
        if neg:
            coeff = -coeff
    elif s[pos] != "x":
        raise ParseError("expected term", pos)
    else:
        index, exp, pos = _parse_factor(s, pos, nvars)
        exps[index] = exp
    while True:
        probe = _skip_ws(s, pos)
        if probe >= len(s) or s[probe] != "*":
            break
        pos = _skip_ws(s, probe + 1)
        index, exp, pos = _parse_factor(s, pos, nvars)
        total = exps.get(index, 0) + exp
        if nvars is not None and total > MAX_EXPONENT:
            raise ExponentOverflowError(
                f"accumulated exponent of x{index} exceeds 63-bit width")
        exps[index] = total
    return coeff, exps, pos


def _parse(text: str, nvars, ring: RingSpec):
    terms = []
    pos = _skip_ws(text, 0)
    if pos == len(text):
        raise ParseError("empty input", pos)
    sign = 1
    if text[pos] in "+-" :
        nxt = _skip_ws(text, pos + 1)
        if nxt < len(text) and text[nxt] == "x":
            sign = -1 if text[pos] == "-" else 1
            pos = nxt
    while True:
        coeff, exps, pos = _parse_term(text, pos, nvars)
        terms.append((sign * coeff, exps))
        pos = _skip_ws(text, pos)
        if pos == len(text):
            break
        if text[pos] not in "+-":
            raise ParseError(f"expected '+' or '-', got {text[pos]!r}", pos)
        sign = -1 if text[pos] == "-" else 1
        pos = _skip_ws(text, pos + 1)
        if pos == len(text):
            raise ParseError("dangling operator", pos)
    return terms


def parse_poly(text: str, nvars: int, ring: RingSpec) -> MultiPoly:
    """Parse a multivariate polynomial in the grammar above."""
    raw = _parse(text, nvars, ring)
    out = []
    for coeff, exps in raw:
        vec = tuple(exps.get(i, 0) for i in range(1, nvars + 1))
        out.append((vec, coeff))
    return MultiPoly(ring, nvars, out)


def parse_unipoly(text: str, ring: RingSpec) -> UniPoly:
    """Parse a univariate polynomial (bare 'x', unbounded exponents)."""
    raw = _parse(text, None, ring)
    return UniPoly(ring, [(exps.get(1, 0), coeff) for coeff, exps in raw])


def _monomial_str(vec) -> str:
    return "*".join(f"x{i}" if e == 1 else f"x{i}^{e}"
                    for i, e in enumerate(vec, 1) if e)


def _unsigned(c: int, mono: str) -> str:
    if not mono:
        return str(c)
    if c == 1:
        return mono
    return f"{c}*{mono}"


def _format_terms(items, monomial) -> str:
    if not items:
        return "0"
    parts = []
    for pos_, (key, c) in enumerate(items):
        mono = monomial(key)
        if pos_ == 0:
            parts.append(("-" + _unsigned(-c, mono)) if c < 0 else _unsigned(c, mono))
        elif c < 0:
            parts.append(f" - {_unsigned(-c, mono)}")
        else:
            parts.append(f" + {_unsigned(c, mono)}")
    return "".join(parts)


def format_poly(p: MultiPoly) -> str:
    """Canonical text of p; parse_poly(format_poly(p)) == p."""
    return _format_terms(p.sorted_terms(), _monomial_str)


def format_unipoly(u: UniPoly) -> str:
    return _format_terms(u.sorted_terms(),
                         lambda e: "" if e == 0 else ("x" if e == 1 else f"x^{e}"))
