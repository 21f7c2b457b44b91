#!/usr/bin/env python3
"""
Tests for number fields, element arithmetic and the integrality oracle
"""

from fractions import Fraction

import pytest

from modules.errors import (
    DivisionByZero,
    FieldMismatch,
    InvalidArgument,
    NotMonic,
    NotSquarefree,
    Reducible,
    ZeroPolynomial,
)
from modules.exact_core import UniPoly
from modules.irreducibility import distinct_degree_pattern, screen_irreducibility
from modules.numfield import (
    NFElement,
    NumberField,
    charpoly_elem,
    denominator,
    elem_inv,
    is_algebraic_integer,
    minpoly_elem,
    multiplication_matrix,
    norm,
    trace,
)


class TestFieldConstruction:
    def test_golden_field(self, golden_field):
        assert golden_field.degree == 2
        assert golden_field.trace_vector == (2, 1)

    @pytest.mark.parametrize("coeffs,error", [
        ([], ZeroPolynomial),
        ([1, 2], NotMonic),
        ([1], InvalidArgument),
        ([1, 2, 1], NotSquarefree),
        ([-1, 0, 1], Reducible),
        ([0, -2, 0, 1], Reducible),
    ])
    def test_rejections(self, coeffs, error):
        with pytest.raises(error):
            NumberField(UniPoly(coeffs))

    def test_reducible_quartic_witness(self):
        # (x^2 + 1)(x^2 + 2) has no rational root; only the divisor search finds a factor
        f = UniPoly([1, 0, 1]) * UniPoly([2, 0, 1])
        with pytest.raises(Reducible) as excinfo:
            NumberField(f)
        witness = excinfo.value.witness
        assert witness.degree >= 1 and (f % witness).is_zero

    def test_irreducible_statuses(self):
        assert screen_irreducibility(UniPoly([-2, 0, 0, 1])).status in ("verified", "verified-mod-p")
        # reducible modulo every prime but irreducible over Q
        assert screen_irreducibility(UniPoly([1, 0, -10, 0, 1])).status == "verified"

    def test_rational_coefficients(self):
        field = NumberField(UniPoly([Fraction(-1, 2), 0, 1]))
        assert field.degree == 2

    @pytest.mark.parametrize("coeffs,p,pattern", [
        ([1, 0, 0, 0, 1], 3, [2, 2]),
        ([1, 0, 0, 0, 1], 5, [2, 2]),
        ([1, 0, 0, 0, 1], 17, [1, 1, 1, 1]),
        ([-2, 0, 0, 1], 5, [1, 2]),
        ([-2, 0, 0, 1], 7, [3]),
    ])
    def test_factor_degrees_mod_p(self, coeffs, p, pattern):
        assert distinct_degree_pattern(coeffs, p) == pattern


class TestArithmetic:
    def test_field_axioms_sample(self, biquadratic_field, rng):
        field = biquadratic_field
        for _ in range(10):
            a = field.element([Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4)])
            b = field.element([rng.randint(-5, 5) for _ in range(4)])
            c = field.element([rng.randint(-3, 3) for _ in range(4)])
            assert a * (b + c) == a * b + a * c
            assert (a * b) * c == a * (b * c)
            if not a.is_zero:
                assert a * elem_inv(a) == 1
                assert a ** -2 * a ** 2 == 1

    def test_sqrt2_inverse(self, sqrt2_field):
        x = sqrt2_field.element([1, 1])
        assert elem_inv(x) == sqrt2_field.element([-1, 1])

    def test_inverse_of_zero(self, sqrt2_field):
        with pytest.raises(DivisionByZero):
            elem_inv(sqrt2_field.zero())

    def test_field_mismatch(self, sqrt2_field, golden_field):
        with pytest.raises(FieldMismatch):
            _ = sqrt2_field.theta() + golden_field.theta()

    def test_coordinates_too_long(self, sqrt2_field):
        with pytest.raises(InvalidArgument):
            sqrt2_field.element([1, 2, 3])

    def test_printing(self, sqrt2_field):
        assert str(sqrt2_field.element([Fraction(1, 2), 3])) == "3*t + 1/2"

    def test_json_form(self, sqrt2_field):
        x = sqrt2_field.element([Fraction(-1, 3), 2])
        assert x.to_json() == {"coords": ["-1/3", "2"]}
        assert NFElement.from_json(sqrt2_field, {"coords": ["-1/3", "2"]}) == x


class TestTraceNormMinpoly:
    def test_trace_and_norm(self, sqrt2_field):
        x = sqrt2_field.element([1, 1])
        assert trace(x) == 2
        assert norm(x) == -1
        assert multiplication_matrix(x).trace() == trace(x)

    def test_charpoly_vs_minpoly(self, biquadratic_field):
        sqrt2 = biquadratic_field.element([0, Fraction(-9, 2), 0, Fraction(1, 2)])
        assert sqrt2 * sqrt2 == 2
        assert minpoly_elem(sqrt2) == UniPoly([-2, 0, 1])
        assert charpoly_elem(sqrt2) == UniPoly([-2, 0, 1]) ** 2

    def test_minpoly_of_rational(self, sqrt2_field):
        assert minpoly_elem(sqrt2_field.from_rational(Fraction(3, 4))) == UniPoly([Fraction(-3, 4), 1])

    def test_golden_ratio_integral(self, golden_field):
        check = is_algebraic_integer(golden_field.theta())
        assert check.integral
        assert check.minpoly == UniPoly([-1, -1, 1])

    def test_half_sqrt2_not_integral(self, sqrt2_field):
        x = sqrt2_field.element([0, Fraction(1, 2)])
        check = is_algebraic_integer(x)
        assert not check
        assert check.minpoly == UniPoly([Fraction(-1, 2), 0, 1])
        assert denominator(x) == 2

    def test_half_golden_not_integral(self, golden_field):
        # (1 + theta)/2 = (3 + sqrt5)/4
        x = golden_field.element([Fraction(1, 2), Fraction(1, 2)])
        assert not is_algebraic_integer(x)
        assert denominator(x) == 2

    def test_denominator_makes_integral(self, biquadratic_field, rng):
        field = biquadratic_field
        for _ in range(15):
            x = field.element([Fraction(rng.randint(-6, 6), rng.choice([1, 2, 3, 4, 6])) for _ in range(4)])
            d = denominator(x)
            assert is_algebraic_integer(x * d)
            for p in (2, 3):
                if d % p == 0:
                    assert not is_algebraic_integer(x * (d // p))

    def test_norm_multiplicative(self, biquadratic_field, rng):
        field = biquadratic_field
        for _ in range(10):
            a = field.element([rng.randint(-4, 4) for _ in range(4)])
            b = field.element([Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(4)])
            assert norm(a * b) == norm(a) * norm(b)

    def test_trace_is_linear(self, biquadratic_field, rng):
        field = biquadratic_field
        for _ in range(20):
            x = field.element([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)])
            y = field.element([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)])
            a = Fraction(rng.randint(-7, 7), rng.randint(1, 4))
            b = Fraction(rng.randint(-7, 7), rng.randint(1, 4))
            assert trace(x * a + y * b) == a * trace(x) + b * trace(y)

    def test_integral_elements_have_integral_power_traces(self, biquadratic_field, rng):
        field = biquadratic_field
        # sqrt2 and (sqrt2 + sqrt6)/2 are integral without integral coordinates
        sqrt2 = field.element([0, Fraction(-9, 2), 0, Fraction(1, 2)])
        sqrt6 = field.element([Fraction(-5, 2), 0, Fraction(1, 2), 0])
        candidates = [sqrt2, (sqrt2 + sqrt6) * Fraction(1, 2), field.theta()]
        candidates += [field.element([Fraction(rng.randint(-4, 4), rng.choice([1, 2])) for _ in range(4)])
                       for _ in range(25)]
        checked = 0
        for x in candidates:
            if not is_algebraic_integer(x):
                continue
            checked += 1
            power = x
            for _ in range(20):
                assert trace(power).denominator == 1
                power = power * x
        assert checked >= 3
