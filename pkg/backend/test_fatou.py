#!/usr/bin/env python3
"""
Tests for rational functions over number fields and the Fatou certifier
"""

from fractions import Fraction

import pytest

from modules.certificate import Verdict
from modules.errors import (
    DenominatorConstantTermNotOne,
    IndexOutOfRange,
    LengthMismatch,
    NotCoprime,
    RatioConstant,
)
from modules.fatou import (
    FieldPoly,
    Independence,
    MultiPoly,
    RationalFunction,
    default_nmax,
    fatou_certify,
    field_poly_gcd,
    is_integral_polynomial,
    monomial_condition,
    mult_indep_sufficient,
    poly_integral_check,
    polyvalue_scan,
    ratfunc_power_combo,
    series_prefix,
)


def _ratfunc(field, num, den):
    return RationalFunction(FieldPoly(field, num), FieldPoly(field, den))


class TestFieldPoly:
    def test_arithmetic(self, q_field):
        x = FieldPoly.x(q_field)
        f = (x + 1) * (x - 1)
        assert f == FieldPoly(q_field, [-1, 0, 1])
        q, r = f.divmod(x - 1)
        assert q == x + 1 and r.is_zero
        assert f(3) == 8

    def test_gcd(self, sqrt2_field):
        theta = sqrt2_field.theta()
        x = FieldPoly.x(sqrt2_field)
        f = (x - theta) * (x + 1)
        g = (x - theta) * (x - 2)
        assert field_poly_gcd(f, g) == x - theta


class TestSeries:
    def test_geometric(self, q_field):
        assert series_prefix(_ratfunc(q_field, [1], [1, -2]), 4) == [1, 2, 4, 8, 16]
        halves = series_prefix(_ratfunc(q_field, [1], [1, Fraction(-1, 2)]), 3)
        assert halves == [1, Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)]

    def test_fibonacci(self, q_field):
        series = series_prefix(_ratfunc(q_field, [0, 1], [1, -1, -1]), 7)
        assert series == [0, 1, 1, 2, 3, 5, 8, 13]

    def test_constant_term_must_be_one(self, q_field):
        with pytest.raises(DenominatorConstantTermNotOne):
            series_prefix(_ratfunc(q_field, [1], [2, -1]), 3)


class TestFatou:
    def test_integral_conforms(self, q_field):
        f = _ratfunc(q_field, [1], [1, -2])
        assert default_nmax(f) == 128
        cert = fatou_certify(f)
        assert cert.verdict == Verdict.CONFORMS
        assert cert.data["series_integral_up_to"] == 128

    def test_numerator_witness(self, q_field):
        cert = fatou_certify(_ratfunc(q_field, [0, Fraction(1, 2)], [1, -2]))
        assert cert.verdict == Verdict.FAIL_WITNESS
        assert cert.first_witness.index == 1
        assert cert.data["non_integral_coefficient"] == {"polynomial": "num", "degree": 1}

    def test_denominator_witness(self, sqrt2_field):
        half_theta = sqrt2_field.element([0, Fraction(1, 2)])
        cert = fatou_certify(_ratfunc(sqrt2_field, [1], [1, -half_theta]))
        assert cert.verdict == Verdict.FAIL_WITNESS
        assert cert.first_witness.index == 1
        assert cert.first_witness.detail["coefficient"] == {"coords": ["0", "1/2"]}

    def test_not_coprime(self, q_field):
        with pytest.raises(NotCoprime):
            fatou_certify(_ratfunc(q_field, [1, -1], [1, -1]))

    def test_random_non_integral_denominators(self, q_field, rng):
        seen = 0
        while seen < 100:
            u = rng.choice([-3, -1, 1, 3, 5])
            v = rng.choice([2, 4])
            integral_factor = FieldPoly(q_field, [1] + [rng.randint(-2, 2) for _ in range(rng.randint(0, 2))])
            den = FieldPoly(q_field, [1, Fraction(-u, v)]) * integral_factor
            num = FieldPoly(q_field, [rng.randint(-3, 3) for _ in range(rng.randint(1, 3))])
            f = RationalFunction(num, den)
            if num.is_zero or not f.is_coprime():
                continue
            seen += 1
            cert = fatou_certify(f)
            assert cert.verdict == Verdict.FAIL_WITNESS
            assert 1 <= cert.first_witness.index <= default_nmax(f)

    def test_random_integral_conform(self, q_field, rng):
        seen = 0
        while seen < 100:
            num = [rng.randint(-3, 3) for _ in range(rng.randint(1, 3))]
            den = [1] + [rng.randint(-2, 2) for _ in range(rng.randint(1, 2))]
            f = _ratfunc(q_field, num, den)
            if f.num.is_zero or not f.is_coprime():
                continue
            seen += 1
            cert = fatou_certify(f, n_max=200)
            assert cert.verdict == Verdict.CONFORMS
            assert cert.data["series_integral_up_to"] == 200


class TestPolynomialCombinations:
    def test_poly_integral_check(self, q_field):
        # x(x - 1)/2
        cert = poly_integral_check(FieldPoly(q_field, [0, Fraction(-1, 2), Fraction(1, 2)]))
        assert cert.verdict == Verdict.FAIL_WITNESS
        assert [w.index for w in cert.witnesses] == [1, 2]
        assert poly_integral_check(FieldPoly(q_field, [3, 0, 1])).verdict == Verdict.PASS

    def test_sum_of_squares(self, q_field):
        x = FieldPoly.x(q_field)
        one = FieldPoly(q_field, [1])
        fs = [RationalFunction(x, one), RationalFunction(x + 1, one)]
        combo = ratfunc_power_combo(fs, [q_field.one(), q_field.one()], 2)
        assert combo.num == FieldPoly(q_field, [1, 2, 2])
        assert combo.is_polynomial
        assert is_integral_polynomial(combo)

    def test_constant_ratio_rejected(self, q_field):
        x = FieldPoly.x(q_field)
        one = FieldPoly(q_field, [1])
        with pytest.raises(RatioConstant) as excinfo:
            ratfunc_power_combo([RationalFunction(x, one), RationalFunction(x * 2, one)],
                                [q_field.one(), q_field.one()], 1)
        assert (excinfo.value.i, excinfo.value.j) == (0, 1)

    def test_non_polynomial(self, q_field):
        f = _ratfunc(q_field, [1], [0, 1])
        combo = ratfunc_power_combo([f], [q_field.one()], 1)
        assert not combo.is_polynomial
        assert not is_integral_polynomial(combo)

    def test_half_coefficient(self, q_field):
        combo = ratfunc_power_combo([_ratfunc(q_field, [0, 1], [1])], [q_field.from_rational(Fraction(1, 2))], 1)
        assert combo.is_polynomial
        assert not is_integral_polynomial(combo)

    def test_integral_inputs_give_integral_polynomials(self, sqrt2_field, rng):
        one = FieldPoly(sqrt2_field, [1])
        checked = 0
        for _ in range(40):
            fs = []
            for _ in range(rng.randint(1, 3)):
                coeffs = [sqrt2_field.element([rng.randint(-2, 2), rng.randint(-2, 2)]) for _ in range(rng.randint(2, 3))]
                fs.append(RationalFunction(FieldPoly(sqrt2_field, coeffs), one))
            lambdas = [sqrt2_field.element([rng.choice([-2, -1, 1, 2]), rng.randint(-1, 1)]) for _ in fs]
            if any(f.num.is_constant for f in fs):
                continue
            n = rng.randint(1, 6)
            try:
                combo = ratfunc_power_combo(fs, lambdas, n)
            except RatioConstant:
                continue
            checked += 1
            assert combo.is_polynomial
            assert is_integral_polynomial(combo)
        assert checked >= 20

    def test_length_mismatch(self, q_field):
        with pytest.raises(LengthMismatch):
            ratfunc_power_combo([_ratfunc(q_field, [0, 1], [1])], [], 1)


class TestMultivariate:
    def test_monomial_condition(self, q_field):
        xy_plus_one = MultiPoly(q_field, 2, {(1, 1): 1, (0, 0): 1})
        assert not monomial_condition(xy_plus_one, 1)
        assert not monomial_condition(xy_plus_one, 2)
        x2_plus_y = MultiPoly(q_field, 2, {(2, 0): 1, (0, 1): 1})
        assert monomial_condition(x2_plus_y, 1)
        assert monomial_condition(x2_plus_y, 2)
        assert monomial_condition(MultiPoly(q_field, 1, {(1,): 1, (0,): 5}), 1)

    def test_axis_index(self, q_field):
        with pytest.raises(IndexOutOfRange):
            monomial_condition(MultiPoly(q_field, 2, {(1, 0): 1}), 3)

    def test_cancelling_terms(self, q_field):
        p = MultiPoly(q_field, 2, {(1, 0): 1})
        assert p.restrict_to_axis(1) == FieldPoly.x(q_field)
        assert MultiPoly(q_field, 1, {(1,): 0}).terms == {}


class TestIndependence:
    def test_primes_two_and_three(self, q_field):
        report = mult_indep_sufficient([q_field.from_rational(2), q_field.from_rational(3)])
        assert report.verdict == Independence.INDEPENDENT
        assert report.primes == (2, 3)
        assert report.rank == 2

    def test_powers_of_two(self, q_field):
        report = mult_indep_sufficient([q_field.from_rational(2), q_field.from_rational(4)])
        assert report.verdict == Independence.INCONCLUSIVE
        assert report.rank == 1

    def test_units_have_no_support(self, golden_field):
        report = mult_indep_sufficient([golden_field.theta()])
        assert report.verdict == Independence.INCONCLUSIVE
        assert report.primes == ()


class TestPolyValue:
    def test_monomial_condition_failure(self, q_field):
        # P(2^-n, 4^n) = 2^n + 1 is an integer although 1/2 is not integral
        p = MultiPoly(q_field, 2, {(1, 1): 1, (0, 0): 1})
        alphas = [q_field.from_rational(Fraction(1, 2)), q_field.from_rational(4)]
        cert = polyvalue_scan(p, alphas, 20)
        assert cert.verdict == Verdict.PASS
        assert all(row["integral"] for row in cert.data["rows"])
        assert cert.data["rows"][2]["value"] == {"coords": ["9"]}
        assert cert.data["alphas_integral"] == [False, True]
        assert cert.data["monomial_condition"] == [False, False]
        assert cert.data["independence"] == "Inconclusive"
        assert "monomial condition" in cert.notes[0]

    def test_non_integral_value(self, q_field):
        p = MultiPoly(q_field, 2, {(1, 0): 1, (0, 1): 1})
        cert = polyvalue_scan(p, [q_field.from_rational(Fraction(1, 2)), q_field.one()], 5)
        assert cert.verdict == Verdict.FAIL_WITNESS
        assert cert.first_witness.index == 1

    def test_zero_value(self, q_field):
        p = MultiPoly(q_field, 2, {(1, 0): 1, (0, 1): -1})
        cert = polyvalue_scan(p, [q_field.from_rational(2), q_field.from_rational(-2)], 5)
        assert cert.first_witness.index == 2
