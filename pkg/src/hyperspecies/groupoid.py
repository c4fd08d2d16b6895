"""Finite groupoids in two representations.

A symbolic expression algebra (`GroupoidExpr`) whose cardinality is computed
compositionally without enumerating anything, and a fully materialized
`ExplicitGroupoid` with objects, morphisms, composition, identities and
inverses, used as the brute-force oracle.  Both are closed under disjoint
union and Cartesian product, which is all the constructions here need:
every groupoid in scope is built from finite discrete sets and one-object
cyclic-group groupoids.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .errors import ExprParseError, InvalidGroupoid, ResourceLimitExceeded

DEFAULT_MAX_OBJECTS = 200_000
DEFAULT_MAX_MORPHISMS = 2_000_000
# Bounds the composition table (composable pairs), which for a one-object
# groupoid grows as the square of the morphism count.
DEFAULT_MAX_COMPOSE = 5_000_000


# ---------------------------------------------------------------------------
# Symbolic expressions


@dataclass(frozen=True)
class Empty:
    """The groupoid with no objects; neutral for disjoint union."""


@dataclass(frozen=True)
class Unit:
    """One object, one (identity) morphism; neutral for Cartesian product."""


@dataclass(frozen=True)
class Discrete:
    """A finite set seen as a groupoid: `count` objects, identities only."""

    count: int
    tag: str = ""

    def __post_init__(self):
        if self.count < 0:
            raise ValueError(f"Discrete count must be >= 0, got {self.count}")


@dataclass(frozen=True)
class Cyclic:
    """The one-object groupoid of the cyclic group of the given order."""

    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"Cyclic order must be >= 1, got {self.order}")


@dataclass(frozen=True)
class DisjointUnion:
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class Product:
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


GroupoidExpr = Union[Empty, Unit, Discrete, Cyclic, DisjointUnion, Product]


def disjoint_union(g: GroupoidExpr, h: GroupoidExpr) -> GroupoidExpr:
    return DisjointUnion((g, h))


def product(g: GroupoidExpr, h: GroupoidExpr) -> GroupoidExpr:
    return Product((g, h))


def union_all(children) -> GroupoidExpr:
    """Disjoint union of arbitrarily many summands; empty union is Empty."""
    children = tuple(children)
    return Empty() if not children else DisjointUnion(children)


def product_all(children) -> GroupoidExpr:
    """Product of arbitrarily many factors; the empty product behaves as Unit."""
    return Product(tuple(children))


def cardinality_expr(expr: GroupoidExpr) -> Fraction:
    """Groupoid cardinality, computed compositionally.

    Sum of 1/|automorphism group| over isomorphism classes, evaluated by the
    homomorphism rules (union -> sum, product -> product) without ever
    materializing objects.  Subtree results are shared by identity, so
    memoized species values evaluate in DAG size rather than tree size.
    """
    memo: dict[int, Fraction] = {}

    def go(t) -> Fraction:
        key = id(t)
        cached = memo.get(key)
        if cached is not None:
            return cached
        if isinstance(t, Empty):
            value = Fraction(0)
        elif isinstance(t, Unit):
            value = Fraction(1)
        elif isinstance(t, Discrete):
            value = Fraction(t.count)
        elif isinstance(t, Cyclic):
            value = Fraction(1, t.order)
        elif isinstance(t, DisjointUnion):
            value = Fraction(0)
            for c in t.children:
                value += go(c)
        elif isinstance(t, Product):
            value = Fraction(1)
            for c in t.children:
                value *= go(c)
        else:
            raise TypeError(f"not a groupoid expression: {t!r}")
        memo[key] = value
        return value

    return go(expr)


def predicted_counts(expr: GroupoidExpr) -> tuple[int, int, int]:
    """(objects, morphisms, composable pairs) the expression would materialize.

    Computed from the expression alone so resource caps can be enforced
    before any allocation.
    """
    memo: dict[int, tuple[int, int, int]] = {}

    def go(t) -> tuple[int, int, int]:
        key = id(t)
        cached = memo.get(key)
        if cached is not None:
            return cached
        if isinstance(t, Empty):
            value = (0, 0, 0)
        elif isinstance(t, Unit):
            value = (1, 1, 1)
        elif isinstance(t, Discrete):
            value = (t.count, t.count, t.count)
        elif isinstance(t, Cyclic):
            value = (1, t.order, t.order * t.order)
        elif isinstance(t, DisjointUnion):
            o = m = c = 0
            for child in t.children:
                co, cm, cc = go(child)
                o += co
                m += cm
                c += cc
            value = (o, m, c)
        elif isinstance(t, Product):
            o = m = c = 1
            for child in t.children:
                co, cm, cc = go(child)
                o *= co
                m *= cm
                c *= cc
            value = (o, m, c)
        else:
            raise TypeError(f"not a groupoid expression: {t!r}")
        memo[key] = value
        return value

    return go(expr)


# ---------------------------------------------------------------------------
# Explicit groupoids


@dataclass
class ExplicitGroupoid:
    """A fully materialized finite groupoid.

    Morphisms are identified by index into `morphisms`, which stores
    (source object index, target object index) pairs.  `compose[(f, g)]`
    is defined exactly when target(f) == source(g) and composes
    diagrammatically: first f, then g.  Treated as immutable.
    """

    objects: tuple
    morphisms: tuple
    identity: tuple
    inverse: tuple
    compose: dict

    def hom(self, x: int, y: int) -> list[int]:
        return [
            m
            for m, (src, tgt) in enumerate(self.morphisms)
            if src == x and tgt == y
        ]


@dataclass(frozen=True)
class CardinalityReport:
    """Cardinality of an explicit groupoid, class by class."""

    iso_class_count: int
    classes: tuple  # (representative object label, automorphism order) pairs
    total: Fraction


def _build_explicit(expr):
    """Recursive materialization; returns (objects, morphisms, identity, inverse, compose)."""
    if isinstance(expr, Empty):
        return [], [], [], [], {}
    if isinstance(expr, Unit):
        return [("pt",)], [(0, 0)], [0], [0], {(0, 0): 0}
    if isinstance(expr, Discrete):
        tag = expr.tag or "el"
        n = expr.count
        objects = [(tag, i) for i in range(1, n + 1)]
        morphisms = [(i, i) for i in range(n)]
        compose = {(i, i): i for i in range(n)}
        return objects, morphisms, list(range(n)), list(range(n)), compose
    if isinstance(expr, Cyclic):
        m = expr.order
        objects = [("cyc", m)]
        morphisms = [(0, 0)] * m
        inverse = [(m - r) % m for r in range(m)]
        compose = {(i, j): (i + j) % m for i in range(m) for j in range(m)}
        return objects, morphisms, [0], inverse, compose
    if isinstance(expr, DisjointUnion):
        objects, morphisms, identity, inverse, compose = [], [], [], [], {}
        for index, child in enumerate(expr.children):
            co, cm, cid, cinv, ccomp = _build_explicit(child)
            obj_offset = len(objects)
            mor_offset = len(morphisms)
            objects.extend(("inj", index, label) for label in co)
            morphisms.extend((s + obj_offset, t + obj_offset) for s, t in cm)
            identity.extend(m + mor_offset for m in cid)
            inverse.extend(m + mor_offset for m in cinv)
            for (f, g), h in ccomp.items():
                compose[(f + mor_offset, g + mor_offset)] = h + mor_offset
        return objects, morphisms, identity, inverse, compose
    if isinstance(expr, Product):
        parts = [_build_explicit(child) for child in expr.children]
        obj_counts = [len(p[0]) for p in parts]
        mor_counts = [len(p[1]) for p in parts]

        def obj_index(indices):
            out = 0
            for i, count in zip(indices, obj_counts):
                out = out * count + i
            return out

        def mor_index(indices):
            out = 0
            for i, count in zip(indices, mor_counts):
                out = out * count + i
            return out

        objects = [
            tuple(p[0][i] for p, i in zip(parts, combo))
            for combo in itertools.product(*[range(c) for c in obj_counts])
        ]
        morphisms = []
        for combo in itertools.product(*[range(c) for c in mor_counts]):
            src = obj_index([p[1][i][0] for p, i in zip(parts, combo)])
            tgt = obj_index([p[1][i][1] for p, i in zip(parts, combo)])
            morphisms.append((src, tgt))
        identity = [
            mor_index([p[2][i] for p, i in zip(parts, combo)])
            for combo in itertools.product(*[range(c) for c in obj_counts])
        ]
        inverse = [
            mor_index([p[3][i] for p, i in zip(parts, combo)])
            for combo in itertools.product(*[range(c) for c in mor_counts])
        ]
        compose = {}
        for combo in itertools.product(*[list(p[4].items()) for p in parts]):
            first = mor_index([pair[0] for pair, _ in combo])
            second = mor_index([pair[1] for pair, _ in combo])
            compose[(first, second)] = mor_index([result for _, result in combo])
        return objects, morphisms, identity, inverse, compose
    raise TypeError(f"not a groupoid expression: {expr!r}")


def realize(
    expr: GroupoidExpr,
    max_objects: int = DEFAULT_MAX_OBJECTS,
    max_morphisms: int = DEFAULT_MAX_MORPHISMS,
    max_compose: int = DEFAULT_MAX_COMPOSE,
) -> ExplicitGroupoid:
    """Materialize a symbolic expression as an explicit groupoid.

    Object labels are structured (tagged injections for unions, tuples for
    products) so realization is deterministic.  Caps are checked against
    :func:`predicted_counts` before anything is allocated.
    """
    n_obj, n_mor, n_comp = predicted_counts(expr)
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
    objects, morphisms, identity, inverse, compose = _build_explicit(expr)
    return ExplicitGroupoid(
        tuple(objects), tuple(morphisms), tuple(identity), tuple(inverse), compose
    )


# ---------------------------------------------------------------------------
# Validation and cardinality of explicit groupoids


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        self.parent[self.find(x)] = self.find(y)


def validate(g: ExplicitGroupoid) -> list[str]:
    """Check every groupoid axiom; returns a list of violations (empty when valid).

    Violations are data, not exceptions: each entry names the law broken and
    the offending object/morphism ids.
    """
    violations: list[str] = []
    n_obj = len(g.objects)
    n_mor = len(g.morphisms)
    src = [s for s, _ in g.morphisms]
    tgt = [t for _, t in g.morphisms]

    out_by_src: list[list[int]] = [[] for _ in range(n_obj)]
    in_by_tgt_count = [0] * n_obj
    for m in range(n_mor):
        out_by_src[src[m]].append(m)
        in_by_tgt_count[tgt[m]] += 1

    # identity table
    if len(g.identity) != n_obj:
        violations.append(
            f"identity table has {len(g.identity)} entries for {n_obj} objects"
        )
    else:
        for x, e in enumerate(g.identity):
            if not (0 <= e < n_mor) or src[e] != x or tgt[e] != x:
                violations.append(f"identity of object {x} is not an endomorphism: {e}")

    # composition domain exactness
    for (f, h), r in g.compose.items():
        if not (0 <= f < n_mor and 0 <= h < n_mor and 0 <= r < n_mor):
            violations.append(f"compose entry ({f},{h})->{r} out of range")
            continue
        if tgt[f] != src[h]:
            violations.append(f"compose defined on non-composable pair ({f},{h})")
        elif src[r] != src[f] or tgt[r] != tgt[h]:
            violations.append(f"compose({f},{h})={r} has wrong endpoints")
    expected_pairs = sum(
        in_by_tgt_count[x] * len(out_by_src[x]) for x in range(n_obj)
    )
    if len(g.compose) != expected_pairs:
        violations.append(
            f"composition table has {len(g.compose)} entries, "
            f"expected {expected_pairs} composable pairs"
        )

    if violations:
        # Tables are structurally broken; the law checks below assume they
        # line up, so report what we have.
        return violations

    # identity laws
    for f in range(n_mor):
        if g.compose.get((g.identity[src[f]], f)) != f:
            violations.append(f"left identity law fails for morphism {f}")
        if g.compose.get((f, g.identity[tgt[f]])) != f:
            violations.append(f"right identity law fails for morphism {f}")

    # inverse laws (this is invertibility: every morphism must have a two-sided inverse)
    if len(g.inverse) != n_mor:
        violations.append(
            f"inverse table has {len(g.inverse)} entries for {n_mor} morphisms"
        )
    else:
        for f in range(n_mor):
            i = g.inverse[f]
            if not (0 <= i < n_mor) or src[i] != tgt[f] or tgt[i] != src[f]:
                violations.append(f"inverse of morphism {f} has wrong endpoints")
                continue
            if g.compose.get((f, i)) != g.identity[src[f]]:
                violations.append(f"morphism {f} composed with its inverse is not id")
            if g.compose.get((i, f)) != g.identity[tgt[f]]:
                violations.append(f"inverse of {f} composed with {f} is not id")

    # associativity on all composable triples
    for f in range(n_mor):
        for h in out_by_src[tgt[f]]:
            fh = g.compose.get((f, h))
            if fh is None:
                continue
            for k in out_by_src[tgt[h]]:
                left = g.compose.get((fh, k))
                hk = g.compose.get((h, k))
                right = None if hk is None else g.compose.get((f, hk))
                if left != right or left is None:
                    violations.append(
                        f"associativity fails on triple ({f},{h},{k})"
                    )

    # hom-size coherence within connected components
    uf = _UnionFind(n_obj)
    for m in range(n_mor):
        uf.union(src[m], tgt[m])
    hom_count: dict[tuple[int, int], int] = {}
    for m in range(n_mor):
        key = (src[m], tgt[m])
        hom_count[key] = hom_count.get(key, 0) + 1
    comp_members: dict[int, list[int]] = {}
    for x in range(n_obj):
        comp_members.setdefault(uf.find(x), []).append(x)
    comp_pairs: dict[int, int] = {}
    comp_sizes: dict[int, set[int]] = {}
    for (x, y), count in hom_count.items():
        root = uf.find(x)
        comp_pairs[root] = comp_pairs.get(root, 0) + 1
        comp_sizes.setdefault(root, set()).add(count)
    for root, members in comp_members.items():
        size = len(members)
        if comp_pairs.get(root, 0) != size * size:
            violations.append(
                f"component of object {members[0]} has empty hom-sets between "
                f"connected objects"
            )
        if len(comp_sizes.get(root, set())) > 1:
            violations.append(
                f"component of object {members[0]} has unequal hom-set sizes: "
                f"{sorted(comp_sizes[root])}"
            )

    return violations


def iso_classes(g: ExplicitGroupoid, skip_validation: bool = False) -> list[list[int]]:
    """Partition object indices into connected components (isomorphism classes).

    Two objects are in the same class iff some morphism connects them; in a
    groupoid this is an equivalence relation, computed by union-find over
    morphism endpoints.
    """
    if not skip_validation:
        violations = validate(g)
        if violations:
            raise InvalidGroupoid(violations)
    uf = _UnionFind(len(g.objects))
    for s, t in g.morphisms:
        uf.union(s, t)
    classes: dict[int, list[int]] = {}
    for x in range(len(g.objects)):
        classes.setdefault(uf.find(x), []).append(x)
    return sorted(classes.values(), key=lambda members: members[0])


def cardinality_explicit(
    g: ExplicitGroupoid, skip_validation: bool = False
) -> CardinalityReport:
    """Brute-force cardinality: sum of 1/|Aut| over isomorphism classes."""
    classes = iso_classes(g, skip_validation=skip_validation)
    aut_count = [0] * len(g.objects)
    for s, t in g.morphisms:
        if s == t:
            aut_count[s] += 1
    entries = []
    total = Fraction(0)
    for members in classes:
        representative = members[0]
        order = aut_count[representative]
        entries.append((g.objects[representative], order))
        total += Fraction(1, order)
    return CardinalityReport(len(entries), tuple(entries), total)


# ---------------------------------------------------------------------------
# Textual expression syntax: empty, unit, discrete(n), cyclic(m), u(...), x(...)


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif ch in "(),;/":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise ExprParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, kind: str):
        token = self.next()
        if token[0] != kind:
            raise ExprParseError(f"expected {kind!r}, found {token[1]!r}", token[2])
        return token

    def expect_int(self) -> int:
        return int(self.expect("int")[1])


def parse_groupoid_expr(text: str) -> GroupoidExpr:
    """Parse the CLI groupoid syntax; parse errors report the offset."""
    parser = _Parser(text)
    expr = _parse_expr(parser)
    trailing = parser.peek()
    if trailing[0] != "end":
        raise ExprParseError(f"trailing input {trailing[1]!r}", trailing[2])
    return expr


def _parse_expr(parser: _Parser) -> GroupoidExpr:
    kind, value, position = parser.next()
    if kind != "name":
        raise ExprParseError(f"expected an expression, found {value!r}", position)
    if value == "empty":
        return Empty()
    if value == "unit":
        return Unit()
    if value == "discrete":
        parser.expect("(")
        count = parser.expect_int()
        parser.expect(")")
        return Discrete(count)
    if value == "cyclic":
        parser.expect("(")
        order = parser.expect_int()
        parser.expect(")")
        if order < 1:
            raise ExprParseError("cyclic order must be >= 1", position)
        return Cyclic(order)
    if value in ("u", "x"):
        parser.expect("(")
        children = [_parse_expr(parser)]
        while parser.peek()[0] == ",":
            parser.next()
            children.append(_parse_expr(parser))
        parser.expect(")")
        node = DisjointUnion if value == "u" else Product
        return node(tuple(children))
    raise ExprParseError(f"unknown groupoid constructor {value!r}", position)
