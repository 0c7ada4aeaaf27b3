import random
from fractions import Fraction

import pytest

from simplexorder import (
    DomainError,
    OrderKind,
    OrderRelation,
    SimplexPoint,
    compare,
    fosd_bracket_index,
    fosd_leq,
    fosd_reduce,
    mlr_leq,
    mlr_reduce,
    tail_sum,
)
from helpers import (
    fosd_dominating_pair,
    mlr_dominating_pair,
    mlr_reweight,
    rand_float_point,
    rand_rational_point,
)


def P(*coords, u=1):
    return SimplexPoint(tuple(coords), u)


class TestFosdPredicate:
    def test_reference_cases(self):
        assert fosd_leq(P(0.5, 0.3, 0.2), P(0.2, 0.3, 0.5))
        assert not fosd_leq(P(0.2, 0.3, 0.5), P(0.5, 0.3, 0.2))
        # Crossing tails: incomparable in both directions.
        assert not fosd_leq(P(0.1, 0.8, 0.1), P(0.4, 0.1, 0.5)) or not fosd_leq(
            P(0.4, 0.1, 0.5), P(0.1, 0.8, 0.1)
        )
        assert fosd_leq(P(0.25, 0.75), P(0.25, 0.75))

    def test_max_point_dominates_everything(self):
        rng = random.Random(7)
        top = P(0.0, 0.0, 0.0, 1.0)
        for _ in range(50):
            x = rand_float_point(rng, 3)
            assert fosd_leq(x, top)

    def test_constructed_pairs_dominate(self):
        rng = random.Random(31)
        for _ in range(300):
            n = rng.randint(1, 6)
            x, y = fosd_dominating_pair(rng, n)
            assert fosd_leq(x, y)

    def test_dimension_mismatch(self):
        with pytest.raises(DomainError):
            fosd_leq(P(0.5, 0.5), P(0.2, 0.3, 0.5))

    def test_size_mismatch(self):
        with pytest.raises(DomainError):
            fosd_leq(P(0.5, 0.5), P(1.0, 1.0, u=2))


class TestMlrPredicate:
    def test_reference_cases(self):
        assert mlr_leq(P(0.5, 0.3, 0.2), P(0.2, 0.3, 0.5))
        assert mlr_leq(
            P(Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)),
            P(Fraction(1, 6), Fraction(1, 3), Fraction(1, 2)),
        )
        # FOSD holds but the likelihood ratio is not monotone.
        x = P(Fraction(2, 10), Fraction(5, 10), Fraction(3, 10))
        y = P(Fraction(1, 10), Fraction(6, 10), Fraction(3, 10))
        assert fosd_leq(x, y)
        assert not mlr_leq(x, y)

    def test_implies_fosd(self):
        rng = random.Random(11)
        for n in range(1, 6):
            for _ in range(300):
                x, y = mlr_dominating_pair(rng, n)
                assert mlr_leq(x, y)
                assert fosd_leq(x, y)

    def test_transitivity_on_chains(self):
        rng = random.Random(13)
        for _ in range(300):
            n = rng.randint(1, 5)
            x, y = mlr_dominating_pair(rng, n)
            z = mlr_reweight(rng, y)
            assert mlr_leq(x, y)
            assert mlr_leq(y, z)
            assert mlr_leq(x, z)


class TestCompare:
    def test_relation_values(self):
        assert compare(P(0.25, 0.75), P(0.5, 0.5), OrderKind.FOSD) is (
            OrderRelation.GREATER
        )
        assert compare(P(0.5, 0.5), P(0.25, 0.75), OrderKind.FOSD) is (
            OrderRelation.LESS
        )
        assert compare(P(0.25, 0.75), P(0.25, 0.75), "fosd") is OrderRelation.EQUAL
        x = P(0.1, 0.8, 0.1)
        y = P(0.4, 0.1, 0.5)
        assert compare(x, y, OrderKind.FOSD) is OrderRelation.INCOMPARABLE

    def test_antisymmetry(self):
        rng = random.Random(17)
        for _ in range(200):
            n = rng.randint(1, 5)
            x = rand_float_point(rng, n)
            y = rand_float_point(rng, n)
            for order in (OrderKind.FOSD, OrderKind.MLR):
                r1 = compare(x, y, order)
                r2 = compare(y, x, order)
                flip = {
                    OrderRelation.LESS: OrderRelation.GREATER,
                    OrderRelation.GREATER: OrderRelation.LESS,
                    OrderRelation.EQUAL: OrderRelation.EQUAL,
                    OrderRelation.INCOMPARABLE: OrderRelation.INCOMPARABLE,
                }
                assert r2 is flip[r1]


class TestFosdReduce:
    def test_reference_case(self):
        a = P(0.5, 0.3, 0.2)
        reduced, target = fosd_reduce(a, 0.4)
        assert fosd_bracket_index(a, 0.4) == 2
        assert target == pytest.approx(0.6)
        assert reduced.coords == pytest.approx((0.5, 0.1))
        assert reduced.u == pytest.approx(0.6)

    def test_boundary_value_keeps_full_coordinate(self):
        # x_last equal to a tail sum: the pivot coordinate equals a_{k-1}.
        a = P(Fraction(1, 2), Fraction(3, 10), Fraction(1, 5))
        reduced, target = fosd_reduce(a, Fraction(1, 2), k=1)
        assert reduced.coords == (Fraction(1, 2), Fraction(0))
        assert target == Fraction(1, 2)

    def test_inconsistent_bracket_raises(self):
        a = P(0.5, 0.3, 0.2)
        # 0.4 lies in the bracket of k = 2, so forcing k = 1 must fail.
        with pytest.raises(DomainError):
            fosd_reduce(a, 0.4, k=1)
        with pytest.raises(DomainError):
            fosd_reduce(a, 0.1)
        with pytest.raises(DomainError):
            fosd_reduce(a, 1.0)
        with pytest.raises(DomainError):
            fosd_reduce(a, 0.4, k=5)

    def test_equivalence_rational(self):
        rng = random.Random(19)
        for _ in range(400):
            n = rng.randint(2, 5)
            a = rand_rational_point(rng, n)
            x = rand_rational_point(rng, n)
            x_last = x.coords[n]
            if x_last < a.coords[n]:
                assert not fosd_leq(a, x)
                continue
            reduced, target = fosd_reduce(a, x_last)
            prefix = SimplexPoint(x.coords[:n], target)
            assert fosd_leq(a, x) == fosd_leq(reduced, prefix)


class TestMlrReduce:
    def test_reference_case(self):
        a = P(Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))
        x = P(Fraction(1, 6), Fraction(1, 3), Fraction(1, 2))
        scaled, prefix, extra = mlr_reduce(a, x)
        assert extra is True
        assert scaled.coords == (Fraction(1, 4), Fraction(1, 4))
        assert prefix.coords == (Fraction(1, 6), Fraction(1, 3))
        assert scaled.u == Fraction(1, 2)
        assert mlr_leq(scaled, prefix)
        assert mlr_leq(a, x)

    def test_rejects_degenerate_inputs(self):
        a = P(Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))
        with pytest.raises(DomainError):
            mlr_reduce(a, P(Fraction(0), Fraction(0), Fraction(1)))
        with pytest.raises(DomainError):
            mlr_reduce(P(Fraction(0), Fraction(0), Fraction(1)), a)

    def test_equivalence_rational(self):
        rng = random.Random(23)
        for _ in range(400):
            n = rng.randint(2, 5)
            a = rand_rational_point(rng, n)
            x = rand_rational_point(rng, n)
            scaled, prefix, extra = mlr_reduce(a, x)
            assert mlr_leq(a, x) == (extra and mlr_leq(scaled, prefix))


def test_orders_coincide_in_dimension_one():
    rng = random.Random(29)
    for _ in range(500):
        x = rand_float_point(rng, 1)
        y = rand_float_point(rng, 1)
        assert fosd_leq(x, y) == mlr_leq(x, y)
        assert compare(x, y, OrderKind.FOSD) == compare(x, y, OrderKind.MLR)
