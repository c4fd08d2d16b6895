"""Exact rational scalars: Pochhammer products and hypergeometric coefficients.

Everything here is exact `fractions.Fraction` arithmetic; these formulas are
the analytic side that the groupoid constructions are checked against.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable

from .errors import NonPositiveLowerParameter, RationalParseError

# `p` or `p/q`, decimal, no whitespace; q is validated separately so that
# `1/0` reports a zero denominator rather than a generic syntax error.
_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse `p` or `p/q` (q > 0, no whitespace) into an exact rational."""
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise RationalParseError(f"not a rational literal: {text!r}")
    numerator = int(match.group(1))
    denominator = match.group(2)
    if denominator is None:
        return Fraction(numerator)
    if int(denominator) == 0:
        raise RationalParseError(f"zero denominator: {text!r}")
    return Fraction(numerator, int(denominator))


def format_rational(value) -> str:
    """Render a rational as `p` or `p/q`, inverse to :func:`parse_rational`."""
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def pochhammer_step(a, n: int, k=1) -> Fraction:
    """Rising product a (a+k) (a+2k) ... (a+(n-1)k).

    With k = 1 this is the classical rising factorial (a)_n.  The empty
    product (n = 0) is 1.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    a = Fraction(a)
    k = Fraction(k)
    result = Fraction(1)
    for i in range(n):
        result *= a + i * k
    return result


def binomial(n: int, r: int) -> int:
    """C(n, r); zero when r > n or r < 0."""
    if r < 0 or r > n:
        return 0
    return math.comb(n, r)


def hyper_coefficient(upper: Iterable, lower: Iterable, n: int) -> Fraction:
    """Coefficient of x^n/n! in the hypergeometric series with the given parameters.

    Returns prod_i (a_i)_n / prod_j (b_j)_n.  Lower parameters must be
    strictly positive; zero or negative values are outside supported scope
    and raise :class:`NonPositiveLowerParameter`.
    """
    lower = [Fraction(b) for b in lower]
    for b in lower:
        if b <= 0:
            raise NonPositiveLowerParameter(
                f"lower parameter {format_rational(b)} is not strictly positive"
            )
    numerator = Fraction(1)
    for a in upper:
        numerator *= pochhammer_step(a, n)
    denominator = Fraction(1)
    for b in lower:
        denominator *= pochhammer_step(b, n)
    return numerator / denominator
