"""Truncated exponential generating functions with exact rational coefficients.

A series of order N stores a_0..a_N for sum a_n x^n/n!.  The four operations
mirror the species combinators on the series side; coefficients live in the
x^n/n! basis throughout, with conversion to ordinary coefficients only at
render time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import CompositionRequiresZeroConstant, OrderMismatch
from .rationals import binomial, format_rational, hyper_coefficient


@dataclass(frozen=True)
class EgfSeries:
    coeffs: tuple  # Fraction a_0..a_N in the x^n/n! basis

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", tuple(Fraction(a) for a in self.coeffs)
        )
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]


def _check_orders(f: EgfSeries, g: EgfSeries) -> None:
    if f.order != g.order:
        raise OrderMismatch(f"orders differ: {f.order} vs {g.order}")


def add(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    _check_orders(f, g)
    return EgfSeries(tuple(a + b for a, b in zip(f.coeffs, g.coeffs)))


def hadamard(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    """Coefficientwise product in the x^n/n! basis."""
    _check_orders(f, g)
    return EgfSeries(tuple(a * b for a, b in zip(f.coeffs, g.coeffs)))


def cauchy_product(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    """EGF product: c_n = sum_k C(n,k) a_k b_{n-k}."""
    _check_orders(f, g)
    n_max = f.order
    coeffs = []
    for n in range(n_max + 1):
        total = Fraction(0)
        for k in range(n + 1):
            total += binomial(n, k) * f.coeffs[k] * g.coeffs[n - k]
        coeffs.append(total)
    return EgfSeries(tuple(coeffs))


def _partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    """Integer partitions of n into parts <= largest, nonincreasing."""
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _partitions(n - part, part):
            yield (part,) + rest


def compose(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    """Substitution f(g(x)) for EGFs, requiring g(0) = 0.

    Faa di Bruno by partition type: a partition of [n] with block sizes
    lambda contributes a_{len(lambda)} prod b_lambda_j, and the number of
    set partitions of that type is n! / (prod j!^{m_j} m_j!).  Equivalent to
    summing over all set partitions, without listing them.
    """
    _check_orders(f, g)
    if g.coeffs[0] != 0:
        raise CompositionRequiresZeroConstant(
            f"inner series has constant term {g.coeffs[0]}"
        )
    coeffs = [f.coeffs[0]]
    for n in range(1, f.order + 1):
        total = Fraction(0)
        for parts in _partitions(n, n):
            multiplicity: dict[int, int] = {}
            for part in parts:
                multiplicity[part] = multiplicity.get(part, 0) + 1
            count = math.factorial(n)
            term = f.coeffs[len(parts)]
            for part, m in multiplicity.items():
                count //= math.factorial(part) ** m * math.factorial(m)
                term *= g.coeffs[part] ** m
            total += count * term
        coeffs.append(total)
    return EgfSeries(tuple(coeffs))


def hypergeometric_series(
    upper: Iterable, lower: Iterable, order: int
) -> EgfSeries:
    """The series with a_n = prod (a_i)_n / prod (b_j)_n."""
    upper = list(upper)
    lower = list(lower)
    return EgfSeries(
        tuple(hyper_coefficient(upper, lower, n) for n in range(order + 1))
    )


def render(series: EgfSeries, basis: str = "egf") -> list[str]:
    """Coefficients as exact `p/q` strings, in the EGF or ordinary basis."""
    if basis == "egf":
        return [format_rational(a) for a in series.coeffs]
    if basis == "ordinary":
        return [
            format_rational(a / math.factorial(n))
            for n, a in enumerate(series.coeffs)
        ]
    raise ValueError(f"unknown basis {basis!r}")
