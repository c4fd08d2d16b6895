"""Groupoid-valued species: size-indexed families of groupoid expressions.

A species is represented by its values on the canonical sets [n]; subsets
and partition blocks are transported along the order-preserving bijection to
[|block|], which leaves cardinality unchanged.  The functorial action on
arbitrary bijections is deliberately not represented.
"""

from __future__ import annotations

from typing import Callable, Iterator

from .errors import (
    CompositionRequiresZeroFree,
    ResourceLimitExceeded,
    UnknownBuiltin,
)
from .groupoid import (
    Cyclic,
    DisjointUnion,
    Empty,
    GroupoidExpr,
    Product,
    Unit,
    cardinality_expr,
    predicted_counts,
)
from .series import EgfSeries

# Expansion caps: the species product has 2^n summands and composition has
# Bell(n); past these sizes expansion refuses rather than thrashes.
PROD_EXPANSION_LIMIT = 20
COMPOSE_EXPANSION_LIMIT = 12

BUILTIN_NAMES = ("zero", "one", "singleton", "sets", "Z")


class Species:
    """A rule n -> GroupoidExpr with a memo table.

    Values are immutable expressions; the memo insert is idempotent
    (set-if-absent), so concurrent duplicate evaluation returns equal trees.
    """

    def __init__(self, rule: Callable[[int], GroupoidExpr], name: str = "species"):
        self._rule = rule
        self.name = name
        self._memo: dict[int, GroupoidExpr] = {}

    def value(self, n: int) -> GroupoidExpr:
        if n < 0:
            raise ValueError(f"species size must be nonnegative, got {n}")
        if n not in self._memo:
            self._memo.setdefault(n, self._rule(n))
        return self._memo[n]

    def __repr__(self) -> str:
        return f"Species({self.name})"


def species_value(F: Species, n: int) -> GroupoidExpr:
    return F.value(n)


def is_empty_value(expr: GroupoidExpr) -> bool:
    """True when the expression denotes the empty groupoid (no objects)."""
    return predicted_counts(expr)[0] == 0


def sum(F: Species, G: Species) -> Species:
    return Species(
        lambda n: DisjointUnion((F.value(n), G.value(n))),
        name=f"sum({F.name},{G.name})",
    )


def hadamard(F: Species, G: Species) -> Species:
    return Species(
        lambda n: Product((F.value(n), G.value(n))),
        name=f"had({F.name},{G.name})",
    )


def prod(F: Species, G: Species, max_size: int = PROD_EXPANSION_LIMIT) -> Species:
    """Species product: disjoint union over subsets S of [n] of F(S) x G([n]\\S).

    Summands are ordered by the subset bitmask (bit i = element i+1), which
    tags each with its subset and makes realization canonical.
    """

    def rule(n: int) -> GroupoidExpr:
        if n > max_size:
            raise ResourceLimitExceeded(
                f"species product at size {n} needs 2^{n} summands (cap {max_size})"
            )
        summands = []
        for mask in range(1 << n):
            size = bin(mask).count("1")
            summands.append(Product((F.value(size), G.value(n - size))))
        return DisjointUnion(tuple(summands))

    return Species(rule, name=f"prod({F.name},{G.name})")


def set_partitions(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Partitions of {1..n} as block tuples, in restricted-growth-string order.

    Blocks are ordered by first appearance; n = 0 yields the single empty
    partition.
    """
    if n == 0:
        yield ()
        return
    assignment = [0] * n

    def blocks() -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(max(assignment) + 1)]
        for index, block in enumerate(assignment):
            out[block].append(index + 1)
        return tuple(tuple(b) for b in out)

    def rec(i: int, used: int):
        if i == n:
            yield blocks()
            return
        for value in range(used + 1):
            assignment[i] = value
            yield from rec(i + 1, used + 1 if value == used else used)

    yield from rec(1, 1)


def compose(
    F: Species, G: Species, max_size: int = COMPOSE_EXPANSION_LIMIT
) -> Species:
    """Species composition: disjoint union over set partitions p of [n] of
    F(p) x prod over blocks b of G(b).

    Requires G to vanish on the empty set; summands follow restricted-growth
    enumeration order, tagging each with its partition.
    """
    if not is_empty_value(G.value(0)):
        raise CompositionRequiresZeroFree(
            f"inner species {G.name} is nonempty at size 0"
        )

    def rule(n: int) -> GroupoidExpr:
        if n > max_size:
            raise ResourceLimitExceeded(
                f"species composition at size {n} needs Bell({n}) summands "
                f"(cap {max_size})"
            )
        summands = []
        for partition in set_partitions(n):
            per_block = Product(tuple(G.value(len(b)) for b in partition))
            summands.append(Product((F.value(len(partition)), per_block)))
        return DisjointUnion(tuple(summands))

    return Species(rule, name=f"comp({F.name},{G.name})")


def valuation(F: Species, order: int) -> EgfSeries:
    """The exponential generating series sum |F[n]| x^n/n! up to the order."""
    return EgfSeries(
        tuple(cardinality_expr(F.value(n)) for n in range(order + 1))
    )


def builtin_species(name: str) -> Species:
    """The stock species.

    `one` is supported at the empty set only and `singleton` at one-element
    sets only, so their series are 1 and x respectively; `sets` is the
    constant-unit species (series e^x); `Z` assigns the cyclic group of
    order n, with series sum x^n/(n n!).
    """
    if name == "zero":
        return Species(lambda n: Empty(), name="zero")
    if name == "one":
        return Species(lambda n: Unit() if n == 0 else Empty(), name="one")
    if name == "singleton":
        return Species(lambda n: Unit() if n == 1 else Empty(), name="singleton")
    if name == "sets":
        return Species(lambda n: Unit(), name="sets")
    if name == "Z":
        return Species(
            lambda n: Empty() if n == 0 else Cyclic(n), name="Z"
        )
    raise UnknownBuiltin(f"unknown builtin species {name!r}")
