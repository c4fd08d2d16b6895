import random
from fractions import Fraction

import pytest

from gen_helpers import random_small_expr
from hyperspecies.errors import (
    ExprParseError,
    InvalidGroupoid,
    ResourceLimitExceeded,
)
from hyperspecies.groupoid import (
    Cyclic,
    Discrete,
    DisjointUnion,
    Empty,
    ExplicitGroupoid,
    Product,
    Unit,
    cardinality_explicit,
    cardinality_expr,
    disjoint_union,
    iso_classes,
    parse_groupoid_expr,
    predicted_counts,
    product,
    realize,
    validate,
)


class TestCardinalityExpr:
    def test_cyclic(self):
        assert cardinality_expr(Cyclic(6)) == Fraction(1, 6)

    def test_discrete(self):
        assert cardinality_expr(Discrete(5)) == 5

    def test_copies_of_cyclic(self):
        # a copies of the one-object cyclic-b groupoid have cardinality a/b
        expr = DisjointUnion(tuple(Cyclic(4) for _ in range(3)))
        assert cardinality_expr(expr) == Fraction(3, 4)

    def test_empty_and_unit(self):
        assert cardinality_expr(Empty()) == 0
        assert cardinality_expr(Unit()) == 1

    def test_empty_product_is_unit(self):
        assert cardinality_expr(Product(())) == 1
        assert cardinality_expr(DisjointUnion(())) == 0


class TestCombinators:
    def test_union_with_empty(self):
        h = Cyclic(3)
        assert cardinality_expr(disjoint_union(Empty(), h)) == cardinality_expr(h)

    def test_union_adds(self):
        assert cardinality_expr(
            disjoint_union(Discrete(2), Cyclic(3))
        ) == Fraction(7, 3)
        assert cardinality_expr(disjoint_union(Cyclic(2), Cyclic(2))) == 1

    def test_product_with_unit(self):
        h = disjoint_union(Discrete(2), Cyclic(5))
        assert cardinality_expr(product(Unit(), h)) == cardinality_expr(h)

    def test_product_multiplies(self):
        assert cardinality_expr(product(Discrete(3), Cyclic(4))) == Fraction(3, 4)

    def test_product_of_cyclics_vs_single_cyclic(self):
        # equal cardinality, different groupoids
        pair = product(Cyclic(2), Cyclic(3))
        assert cardinality_expr(pair) == Fraction(1, 6)
        assert cardinality_expr(Cyclic(6)) == Fraction(1, 6)
        assert len(realize(pair).morphisms) == 6

    def test_homomorphism_random(self):
        rng = random.Random(7)
        for _ in range(60):
            g = random_small_expr(rng, depth=3)
            h = random_small_expr(rng, depth=3)
            assert cardinality_expr(disjoint_union(g, h)) == cardinality_expr(
                g
            ) + cardinality_expr(h)
            assert cardinality_expr(product(g, h)) == cardinality_expr(
                g
            ) * cardinality_expr(h)


class TestRealize:
    def test_cyclic_three(self):
        g = realize(Cyclic(3))
        assert len(g.objects) == 1
        assert len(g.morphisms) == 3
        # composition is addition mod 3
        for i in range(3):
            for j in range(3):
                assert g.compose[(i, j)] == (i + j) % 3

    def test_product_discrete_cyclic(self):
        g = realize(Product((Discrete(2), Cyclic(2))))
        assert len(g.objects) == 2
        aut = [0, 0]
        for s, t in g.morphisms:
            assert s == t  # no cross morphisms
            aut[s] += 1
        assert aut == [2, 2]

    def test_object_cap(self):
        with pytest.raises(ResourceLimitExceeded):
            realize(Discrete(10**9), max_objects=10**5)

    def test_morphism_cap(self):
        with pytest.raises(ResourceLimitExceeded):
            realize(Cyclic(50), max_morphisms=10)

    def test_deterministic_labels(self):
        expr = DisjointUnion((Discrete(2), Product((Cyclic(2), Unit()))))
        assert realize(expr).objects == realize(expr).objects


class TestValidate:
    def test_realize_output_is_valid(self):
        assert validate(realize(Cyclic(4))) == []

    def test_compose_mutation_detected(self):
        g = realize(Cyclic(4))
        broken = dict(g.compose)
        # redirect 1∘3 (= identity) to a non-identity rotation
        broken[(1, 3)] = 2
        bad = ExplicitGroupoid(
            g.objects, g.morphisms, g.identity, g.inverse, broken
        )
        assert validate(bad) != []

    def test_missing_inverse_detected(self):
        g = realize(Cyclic(3))
        # claim rotation 1 is its own inverse: 1∘1 = 2 is not the identity
        bad = ExplicitGroupoid(
            g.objects, g.morphisms, g.identity, (0, 1, 1), g.compose
        )
        report = validate(bad)
        assert any("inverse" in line for line in report)

    def test_noncomposable_entry_detected(self):
        g = realize(Discrete(2))
        broken = dict(g.compose)
        broken[(0, 1)] = 0
        bad = ExplicitGroupoid(
            g.objects, g.morphisms, g.identity, g.inverse, broken
        )
        assert any("composable" in line for line in validate(bad))


def two_object_single_iso():
    """Two objects, one morphism each way plus identities; contractible."""
    objects = (("a",), ("b",))
    morphisms = ((0, 0), (1, 1), (0, 1), (1, 0))
    identity = (0, 1)
    inverse = (0, 1, 3, 2)
    compose = {
        (0, 0): 0,
        (1, 1): 1,
        (0, 2): 2,
        (2, 1): 2,
        (1, 3): 3,
        (3, 0): 3,
        (2, 3): 0,
        (3, 2): 1,
    }
    return ExplicitGroupoid(objects, morphisms, identity, inverse, compose)


class TestIsoClasses:
    def test_discrete_singletons(self):
        assert iso_classes(realize(Discrete(3))) == [[0], [1], [2]]

    def test_cyclic_single_class(self):
        assert iso_classes(realize(Cyclic(5))) == [[0]]

    def test_two_object_contractible(self):
        g = two_object_single_iso()
        assert validate(g) == []
        assert iso_classes(g) == [[0, 1]]
        report = cardinality_explicit(g)
        assert report.total == 1
        assert report.classes == ((("a",), 1),)

    def test_invalid_groupoid_rejected(self):
        g = realize(Cyclic(3))
        bad = ExplicitGroupoid(
            g.objects, g.morphisms, g.identity, (0, 1, 1), g.compose
        )
        with pytest.raises(InvalidGroupoid):
            iso_classes(bad)


class TestCardinalityExplicit:
    def test_cyclic_two(self):
        assert cardinality_explicit(realize(Cyclic(2))).total == Fraction(1, 2)

    def test_union_discrete_cyclic(self):
        expr = DisjointUnion((Discrete(1), Cyclic(3)))
        assert cardinality_explicit(realize(expr)).total == Fraction(4, 3)

    def test_oracle_spine_random(self):
        rng = random.Random(11)
        for _ in range(60):
            expr = random_small_expr(rng)
            report = cardinality_explicit(realize(expr))
            assert report.total == cardinality_expr(expr)
            assert report.total == sum(
                (Fraction(1, order) for _, order in report.classes), Fraction(0)
            )


class TestParser:
    @pytest.mark.parametrize(
        "text,card",
        [
            ("empty", Fraction(0)),
            ("unit", Fraction(1)),
            ("discrete(5)", Fraction(5)),
            ("cyclic(6)", Fraction(1, 6)),
            ("u(cyclic(2),cyclic(2))", Fraction(1)),
            ("x(discrete(3), cyclic(4))", Fraction(3, 4)),
            (" u( discrete(2) , x(cyclic(3),unit) ) ", Fraction(7, 3)),
        ],
    )
    def test_parse_and_evaluate(self, text, card):
        assert cardinality_expr(parse_groupoid_expr(text)) == card

    @pytest.mark.parametrize(
        "bad", ["", "foo", "discrete()", "u(unit", "cyclic(0)", "unit unit", "x()"]
    )
    def test_parse_errors_carry_position(self, bad):
        with pytest.raises(ExprParseError) as excinfo:
            parse_groupoid_expr(bad)
        assert excinfo.value.position >= 0
