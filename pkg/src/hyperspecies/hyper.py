"""Hypergeometric species and the theorem verifier.

Builds the groupoid-level Pochhammer symbol, the upper/lower hypergeometric
factor species, their Hadamard combination H, an alternative tuple-based
interpretation, the explicit triple-object description, and a verifier that
compares explicit enumeration, symbolic cardinality, and the analytic
coefficient formula for each size.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import ExprParseError, ResourceLimitExceeded
from .groupoid import (
    DEFAULT_MAX_COMPOSE,
    DEFAULT_MAX_MORPHISMS,
    DEFAULT_MAX_OBJECTS,
    Cyclic,
    Discrete,
    DisjointUnion,
    ExplicitGroupoid,
    GroupoidExpr,
    Product,
    Unit,
    _Parser,
    cardinality_expr,
    cardinality_explicit,
    realize,
)
from .rationals import hyper_coefficient, pochhammer_step
from .species import Species, builtin_species
from . import species as species_ops


# ---------------------------------------------------------------------------
# Parameters


@dataclass(frozen=True)
class HyperParams:
    """Upper parameters a_i/b_i and lower parameters c_j/d_j as positive
    integer pairs.

    Pairs are kept unreduced: H(2/4) and H(1/2) are different groupoid
    constructions with the same cardinalities.
    """

    upper: tuple = ()
    lower: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(tuple(p) for p in self.upper))
        object.__setattr__(self, "lower", tuple(tuple(p) for p in self.lower))
        for num, den in self.upper + self.lower:
            if num < 1 or den < 1:
                raise ValueError(
                    f"parameters must be positive integer pairs, got {num}/{den}"
                )

    @classmethod
    def from_strings(cls, upper, lower) -> "HyperParams":
        return cls(
            tuple(_parse_pair(s) for s in upper),
            tuple(_parse_pair(s) for s in lower),
        )

    def upper_fractions(self) -> list[Fraction]:
        return [Fraction(a, b) for a, b in self.upper]

    def lower_fractions(self) -> list[Fraction]:
        return [Fraction(c, d) for c, d in self.lower]


def _parse_pair(text: str) -> tuple[int, int]:
    """`p` or `p/q` with positive integers, kept as an unreduced pair."""
    parts = text.split("/")
    if len(parts) not in (1, 2) or not all(p.isdigit() and p for p in parts):
        raise ExprParseError(f"not a positive rational: {text!r}", 0)
    num = int(parts[0])
    den = int(parts[1]) if len(parts) == 2 else 1
    if num < 1 or den < 1:
        raise ExprParseError(f"parameter must be positive: {text!r}", 0)
    return num, den


def parse_param_list(text: str) -> tuple[tuple[int, int], ...]:
    """Comma-separated `p/q` list; empty or whitespace-only input means none."""
    text = text.strip()
    if not text:
        return ()
    return tuple(_parse_pair(part.strip()) for part in text.split(","))


# ---------------------------------------------------------------------------
# Groupoid-level constructions


def functorial_pochhammer(
    g: GroupoidExpr, k: GroupoidExpr, n: int
) -> GroupoidExpr:
    """The groupoid prod_{i=0}^{n-1} (g + k x [i]).

    Its cardinality is the generalized rising product of |g| with step |k|.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return Product(
        tuple(
            DisjointUnion((g, Product((k, Discrete(i)))))
            for i in range(n)
        )
    )


def zbar_chain(c: int, n: int, d: int) -> GroupoidExpr:
    """Product of cyclic-group groupoids of orders c, c+d, ..., c+(n-1)d.

    Cardinality is the reciprocal of the step-d rising product of c.
    """
    return Product(tuple(Cyclic(c + i * d) for i in range(n)))


def species_H_upper(a: int, b: int) -> Species:
    """Upper factor species: value at n pairs the functorial Pochhammer
    groupoid of ([a], [b]) with n copies of the cyclic group of order b.

    Coefficient at n is the rising factorial (a/b)_n, the expansion of
    (1-x)^(-a/b).
    """

    def rule(n: int) -> GroupoidExpr:
        return Product(
            (
                functorial_pochhammer(Discrete(a), Discrete(b), n),
                Product(tuple(Cyclic(b) for _ in range(n))),
            )
        )

    return Species(rule, name=f"H({a}/{b};)")


def species_H_lower(c: int, d: int) -> Species:
    """Lower factor species: value at n pairs the n-fold product of [d] with
    the cyclic chain of orders c, c+d, ....

    Coefficient at n is 1/(c/d)_n.
    """

    def rule(n: int) -> GroupoidExpr:
        return Product(
            (
                Product(tuple(Discrete(d) for _ in range(n))),
                zbar_chain(c, n, d),
            )
        )

    return Species(rule, name=f"H(;{c}/{d})")


def alt_upper_value(a: int, b: int, n: int) -> GroupoidExpr:
    """Tuple-based interpretation of the upper factor at size n.

    Factor i offers either one of [a] carrying a cyclic-b automorphism group
    or one of the i extra slots with trivial automorphisms; the product over
    i = 0..n-1 has one object per tuple and cardinality (a/b)_n.
    """
    return Product(
        tuple(
            DisjointUnion(
                (Product((Discrete(a), Cyclic(b))), Discrete(i))
            )
            for i in range(n)
        )
    )


def species_H(params: HyperParams, interpretation: str = "product") -> Species:
    """The combined hypergeometric species.

    `product` uses the upper-factor species as defined; `alternative`
    replaces each upper factor by the tuple-based construction.  Both have
    the hypergeometric series of the parameters as valuation.
    """
    if interpretation not in ("product", "alternative"):
        raise ValueError(f"unknown interpretation {interpretation!r}")
    upper_factors = [species_H_upper(a, b) for a, b in params.upper]
    lower_factors = [species_H_lower(c, d) for c, d in params.lower]

    def rule(n: int) -> GroupoidExpr:
        if interpretation == "product":
            upper_values = [f.value(n) for f in upper_factors]
        else:
            upper_values = [alt_upper_value(a, b, n) for a, b in params.upper]
        lower_values = [f.value(n) for f in lower_factors]
        return Product(tuple(upper_values + lower_values))

    return Species(rule, name=f"H{params.upper}{params.lower}:{interpretation}")


def alt_pochhammer_groupoid(
    a: int,
    b: int,
    n: int,
    max_objects: int = DEFAULT_MAX_OBJECTS,
    max_morphisms: int = DEFAULT_MAX_MORPHISMS,
    max_compose: int = DEFAULT_MAX_COMPOSE,
) -> ExplicitGroupoid:
    """Directly materialized tuple interpretation of the upper factor.

    Objects are tuples (x_1..x_n) with 1 <= x_i <= a+i-1; each object's
    automorphism group is the c(x)-fold power of the cyclic group of order
    b, where c(x) counts the positions with x_i <= a.  There are no
    morphisms between distinct objects.
    """
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    n_obj = 1
    n_mor = 1
    n_comp = 1
    for i in range(n):
        n_obj *= a + i
        n_mor *= a * b + i
        n_comp *= a * b * b + i
    if n_obj > max_objects:
        raise ResourceLimitExceeded(
            f"would materialize {n_obj} objects (cap {max_objects})"
        )
    if n_mor > max_morphisms:
        raise ResourceLimitExceeded(
            f"would materialize {n_mor} morphisms (cap {max_morphisms})"
        )
    if n_comp > max_compose:
        raise ResourceLimitExceeded(
            f"would materialize {n_comp} composition entries (cap {max_compose})"
        )

    objects = []
    morphisms = []
    identity = []
    inverse = []
    compose = {}
    ranges = [range(1, a + i) for i in range(1, n + 1)]
    for x in itertools.product(*ranges):
        obj = len(objects)
        objects.append(x)
        c = len([xi for i, xi in enumerate(x) if xi <= a])
        base = len(morphisms)
        group = list(itertools.product(range(b), repeat=c))
        index = {element: base + k for k, element in enumerate(group)}
        for element in group:
            morphisms.append((obj, obj))
            inverse.append(index[tuple((b - e) % b for e in element)])
        identity.append(index[tuple([0] * c)])
        for first in group:
            for second in group:
                combined = tuple((e1 + e2) % b for e1, e2 in zip(first, second))
                compose[(index[first], index[second])] = index[combined]
    return ExplicitGroupoid(
        tuple(objects), tuple(morphisms), tuple(identity), tuple(inverse), compose
    )


# ---------------------------------------------------------------------------
# Explicit triple-object description


@dataclass(frozen=True)
class TripleObject:
    """An object of the combined species in triple form.

    `choices[i]` maps positions 0..n-1 to ("a", v) with v in [a_i] when the
    position is outside the marked set, or ("b", v, t) with v in [b_i] and
    1 <= t <= position otherwise; `marked[i]` is that set; `functions[j]`
    maps [n] to [d_j].
    """

    marked: tuple  # per upper index: frozenset of positions >= 1
    choices: tuple  # per upper index: tuple over positions of tagged values
    functions: tuple  # per lower index: tuple over 1..n of values in [d_j]


def explicit_H_objects(
    params: HyperParams, n: int, max_objects: int = DEFAULT_MAX_OBJECTS
) -> list[TripleObject]:
    """Enumerate all triple-form objects of the combined species at size n.

    The count equals the object count of the realized product-interpretation
    value; the morphism structure of the triple description is deliberately
    not materialized.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    count = 1
    for a, b in params.upper:
        for p in range(n):
            count *= a + b * p
    for _, d in params.lower:
        count *= d**n
    if count > max_objects:
        raise ResourceLimitExceeded(
            f"would enumerate {count} triples (cap {max_objects})"
        )

    per_upper = []
    for a, b in params.upper:
        position_choices = []
        for p in range(n):
            options = [("a", v) for v in range(1, a + 1)]
            options += [
                ("b", v, t)
                for v in range(1, b + 1)
                for t in range(1, p + 1)
            ]
            position_choices.append(options)
        per_upper.append([tuple(f) for f in itertools.product(*position_choices)])
    per_lower = [
        list(itertools.product(range(1, d + 1), repeat=n))
        for _, d in params.lower
    ]

    triples = []
    for combo in itertools.product(*per_upper, *per_lower):
        upper_part = combo[: len(params.upper)]
        lower_part = combo[len(params.upper):]
        marked = tuple(
            frozenset(p for p, choice in enumerate(f) if choice[0] == "b")
            for f in upper_part
        )
        triples.append(TripleObject(marked, tuple(upper_part), tuple(lower_part)))
    return triples


# ---------------------------------------------------------------------------
# Theorem verification


@dataclass(frozen=True)
class VerificationEntry:
    n: int
    explicit: Optional[Fraction]
    symbolic: Fraction
    analytic: Fraction
    ok: bool
    note: str = ""


@dataclass(frozen=True)
class VerificationReport:
    params: HyperParams
    interpretation: str
    order: int
    entries: tuple
    passed: bool
    resource_limited: tuple


def verify_theorem(
    params: HyperParams,
    order: int,
    interpretation: str = "product",
    max_objects: int = DEFAULT_MAX_OBJECTS,
    max_morphisms: int = DEFAULT_MAX_MORPHISMS,
    max_compose: int = DEFAULT_MAX_COMPOSE,
) -> VerificationReport:
    """Check |H(params)| against the analytic coefficients for n = 0..order.

    Each size is computed three ways: brute-force enumeration of the
    realized groupoid, compositional symbolic cardinality, and the
    Pochhammer-quotient formula.  A size whose realization exceeds the caps
    is recorded in `resource_limited` and fails the report.
    """
    sp = species_H(params, interpretation)
    upper = params.upper_fractions()
    lower = params.lower_fractions()
    entries = []
    limited = []
    for n in range(order + 1):
        expr = sp.value(n)
        symbolic = cardinality_expr(expr)
        analytic = hyper_coefficient(upper, lower, n)
        explicit = None
        note = ""
        try:
            g = realize(
                expr,
                max_objects=max_objects,
                max_morphisms=max_morphisms,
                max_compose=max_compose,
            )
            explicit = cardinality_explicit(g, skip_validation=True).total
        except ResourceLimitExceeded as exc:
            limited.append(n)
            note = str(exc)
        ok = explicit is not None and explicit == symbolic == analytic
        entries.append(
            VerificationEntry(n, explicit, symbolic, analytic, ok, note)
        )
    passed = all(e.ok for e in entries)
    return VerificationReport(
        params, interpretation, order, tuple(entries), passed, tuple(limited)
    )


# ---------------------------------------------------------------------------
# Species expression syntax, including the hypergeometric forms


def parse_species(text: str) -> Species:
    """Parse the CLI species syntax.

    Builtins by name; sum/had/prod/comp with two arguments; H(a/b,..;c/d,..)
    for the combined species and Halt(...) for the alternative
    interpretation.
    """
    parser = _Parser(text)
    result = _parse_species(parser)
    trailing = parser.peek()
    if trailing[0] != "end":
        raise ExprParseError(f"trailing input {trailing[1]!r}", trailing[2])
    return result


def _parse_species(parser: _Parser) -> Species:
    kind, value, position = parser.next()
    if kind != "name":
        raise ExprParseError(f"expected a species, found {value!r}", position)
    if value in species_ops.BUILTIN_NAMES:
        return builtin_species(value)
    if value in ("sum", "had", "prod", "comp"):
        parser.expect("(")
        first = _parse_species(parser)
        parser.expect(",")
        second = _parse_species(parser)
        parser.expect(")")
        combinator = {
            "sum": species_ops.sum,
            "had": species_ops.hadamard,
            "prod": species_ops.prod,
            "comp": species_ops.compose,
        }[value]
        return combinator(first, second)
    if value in ("H", "Halt"):
        params = _parse_H_params(parser)
        interpretation = "product" if value == "H" else "alternative"
        return species_H(params, interpretation)
    raise ExprParseError(f"unknown species {value!r}", position)


def _parse_H_params(parser: _Parser) -> HyperParams:
    parser.expect("(")
    upper = _parse_fraction_list(parser)
    lower = ()
    if parser.peek()[0] == ";":
        parser.next()
        lower = _parse_fraction_list(parser)
    parser.expect(")")
    return HyperParams(upper, lower)


def _parse_fraction_list(parser: _Parser) -> tuple:
    pairs = []
    while parser.peek()[0] == "int":
        num = parser.expect_int()
        den = 1
        if parser.peek()[0] == "/":
            parser.next()
            den = parser.expect_int()
        if num < 1 or den < 1:
            raise ExprParseError(
                f"parameter must be positive: {num}/{den}", parser.peek()[2]
            )
        pairs.append((num, den))
        if parser.peek()[0] == ",":
            parser.next()
        else:
            break
    return tuple(pairs)
