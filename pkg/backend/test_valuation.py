#!/usr/bin/env python3
"""
Tests for Newton polygons, valuation bounds and height enclosures
"""

import math
from fractions import Fraction

import pytest

from modules.errors import ZeroConstantTerm, ZeroElement
from modules.exact_core import UniPoly
from modules.numfield import NumberField, elem_inv
from modules.valuation import (
    HeightBound,
    element_valuations,
    log_height_bounds,
    max_valuation_upper_bound,
    mean_valuation,
    newton_polygon,
    prime_support,
)

PRIMES = (2, 3, 5)


def _around(value: float) -> HeightBound:
    # float reference values are only good to about 1e-15
    return HeightBound(Fraction(value) - Fraction(1, 10 ** 12), Fraction(value) + Fraction(1, 10 ** 12))


def _random_element(field, rng):
    while True:
        x = field.element([Fraction(rng.randint(-12, 12), rng.choice([1, 2, 3, 4, 5, 9])) for _ in range(field.degree)])
        if not x.is_zero:
            return x


class TestNewtonPolygon:
    def test_sqrt2_profile(self, sqrt2_field):
        profile = element_valuations(sqrt2_field.theta(), 2)
        assert profile.slopes == ((Fraction(1, 2), 2),)
        assert profile.to_json() == {"p": 2, "slopes": [["1/2", 2]]}

    def test_mixed_slopes(self):
        # roots of valuation 2 (twice) and 0 at p = 3
        f = UniPoly([81, 0, 1]) * UniPoly([-2, 1])
        profile = newton_polygon(f, 3)
        assert profile.multiset() == {Fraction(2): 2, Fraction(0): 1}
        assert profile.degree == 3

    def test_zero_constant_term(self):
        with pytest.raises(ZeroConstantTerm):
            newton_polygon(UniPoly([0, 1, 1]), 2)

    def test_zero_element(self, sqrt2_field):
        with pytest.raises(ZeroElement):
            element_valuations(sqrt2_field.zero(), 2)

    def test_inverse_negates(self, sqrt2_field, rng):
        for _ in range(25):
            x = _random_element(sqrt2_field, rng)
            for p in PRIMES:
                assert element_valuations(x.inverse(), p) == element_valuations(x, p).negated()


class TestNormAdditivity:
    def test_mean_valuation_is_additive(self, sqrt2_field, rng):
        for _ in range(100):
            a = _random_element(sqrt2_field, rng)
            b = _random_element(sqrt2_field, rng)
            p = rng.choice(PRIMES)
            assert mean_valuation(a * b, p) == mean_valuation(a, p) + mean_valuation(b, p)

    def test_cubic_field(self, rng):
        field = NumberField(UniPoly([-2, 0, 0, 1]))
        for _ in range(10):
            a = _random_element(field, rng)
            b = _random_element(field, rng)
            assert mean_valuation(a * b, 2) == mean_valuation(a, 2) + mean_valuation(b, 2)


class TestSupportAndBounds:
    def test_prime_support(self, q_field):
        assert prime_support(q_field.from_rational(Fraction(6, 5))) == {2, 3, 5}
        assert prime_support(q_field.one()) == set()

    def test_max_valuation(self, q_field, sqrt2_field):
        assert max_valuation_upper_bound(q_field.from_rational(Fraction(1, 2))) == 0
        assert max_valuation_upper_bound(q_field.from_rational(12)) == 2
        assert max_valuation_upper_bound(sqrt2_field.theta()) == 1


class TestHeights:
    def test_rational_height(self, q_field):
        bound = log_height_bounds(q_field.from_rational(Fraction(3, 2)))
        assert bound.lower <= Fraction(math.log(3)) + Fraction(1, 10 ** 9)
        assert bound.upper >= Fraction(math.log(3)) - Fraction(1, 10 ** 9)

    def test_golden_ratio_height(self, golden_field):
        expected = Fraction(math.log((1 + math.sqrt(5)) / 2) / 2)
        bound = log_height_bounds(golden_field.theta())
        assert bound.lower <= expected + Fraction(1, 10 ** 9)
        assert bound.upper >= expected - Fraction(1, 10 ** 9)
        assert bound.width < Fraction(1, 1000)

    def test_root_of_unity_has_height_zero(self):
        field = NumberField(UniPoly([1, 0, 1]))
        bound = log_height_bounds(field.theta())
        assert bound.lower == 0
        assert bound.contains(0)
        assert bound.upper < Fraction(1, 10 ** 4)

    def test_precision_tightens(self, sqrt2_field):
        x = sqrt2_field.element([1, Fraction(1, 3)])
        coarse = log_height_bounds(x, 16)
        fine = log_height_bounds(x, 96)
        assert fine.overlaps(coarse)
        assert fine.width <= coarse.width

    def test_zero_element(self, sqrt2_field):
        with pytest.raises(ZeroElement):
            log_height_bounds(sqrt2_field.zero())

    @pytest.mark.parametrize("value", [2, Fraction(1, 2)])
    def test_log2_examples(self, q_field, value):
        bound = log_height_bounds(q_field.from_rational(value), 64)
        assert bound.width < Fraction(1, 10 ** 6)
        assert bound.overlaps(_around(math.log(2)))

    def test_sqrt2_height(self, sqrt2_field):
        bound = log_height_bounds(sqrt2_field.theta(), 64)
        assert bound.overlaps(_around(math.log(2) / 2))
        assert not bound.contains(Fraction(7, 20))
        assert bound.width < Fraction(1, 10 ** 6)

    def test_inverse_has_same_height(self, sqrt2_field, golden_field, biquadratic_field, rng):
        for field in (sqrt2_field, golden_field, biquadratic_field):
            for _ in range(6):
                x = _random_element(field, rng)
                assert log_height_bounds(x).overlaps(log_height_bounds(elem_inv(x)))

    def test_height_of_powers(self, sqrt2_field, golden_field, rng):
        for field in (sqrt2_field, golden_field):
            for _ in range(4):
                x = _random_element(field, rng)
                base = log_height_bounds(x)
                for n in range(1, 11):
                    assert log_height_bounds(x ** n).overlaps(base.scaled(n))
