#!/usr/bin/env python3
"""
Tests for the certification procedures
"""

from fractions import Fraction

import pytest

from modules.certificate import Verdict
from modules.certify import (
    PowerSumSpec,
    bound_for_trace_window,
    dio_certificate,
    dio_search,
    groupring_eval,
    groupring_window,
    k2_certify,
    k2_constant,
    powersum_window,
    subsum_certificate,
    subsum_nonvanishing,
    trace_power_window,
    trace_sequence,
    trace_window_bound,
    tracepoly_scan,
)
from modules.errors import (
    ClosureDegreeMismatch,
    DegenerateDifference,
    LengthMismatch,
    NotFullGroup,
    RootOfUnityInput,
    TooManyTerms,
    ZeroElement,
    ZeroTarget,
    ZeroWeightSum,
)
from modules.exact_core import UniPoly
from modules.numfield import NumberField, is_algebraic_integer, trace
from modules.unity import verify_galois_data


def _spec(field, lambdas, alphas):
    return PowerSumSpec(tuple(field.coerce(v) for v in lambdas), tuple(field.coerce(v) for v in alphas))


@pytest.fixture(scope="module")
def cubic_field():
    return NumberField(UniPoly([-2, 0, 0, 1]))


@pytest.fixture(scope="module")
def sqrt2_galois(sqrt2_field):
    return verify_galois_data(sqrt2_field, [sqrt2_field.theta(), -sqrt2_field.theta()])


class TestWindowBound:
    @pytest.mark.parametrize("args,expected", [
        ((2, 1, 1, 1), 5),
        ((1, 1, 1, 1), 2),
        ((2, 1, 4, 1), 9),
        ((4, 1, 1, 1), 13),
        ((3, 1, 1, 1), 7),
    ])
    def test_formula(self, args, expected):
        assert trace_window_bound(*args) == expected

    def test_zero_weight_sum(self):
        with pytest.raises(ZeroWeightSum):
            trace_window_bound(2, n=0)

    def test_bound_shape_from_lambda(self, sqrt2_field):
        assert bound_for_trace_window(sqrt2_field.one()) == 5
        # Tr(3/2) = 3, ab = 3*1, floor(log2(2*3)) = 2
        assert bound_for_trace_window(sqrt2_field.from_rational(Fraction(3, 2))) == 7
        with pytest.raises(ZeroWeightSum):
            bound_for_trace_window(sqrt2_field.theta())


class TestTraceWindow:
    def test_golden_ratio_lucas(self, golden_field):
        theta = golden_field.theta()
        cert = trace_power_window(golden_field.one(), theta)
        assert cert.verdict == Verdict.INTEGRAL
        assert cert.bound_used == 5
        assert cert.window == (1, 5)
        assert cert.data["traces"] == ["1", "3", "4", "7", "11"]
        assert is_algebraic_integer(theta).minpoly == UniPoly([-1, -1, 1])

    def test_rational_witness(self, q_field):
        cert = trace_power_window(q_field.one(), q_field.from_rational(Fraction(3, 2)), window=2)
        assert cert.verdict == Verdict.NOT_INTEGRAL
        assert cert.first_witness.index == 1
        assert cert.first_witness.detail["trace"] == "3/2"

    def test_half_sqrt2_witness_at_four(self, sqrt2_field):
        alpha = sqrt2_field.element([0, Fraction(1, 2)])
        cert = trace_power_window(sqrt2_field.one(), alpha, window=5)
        assert cert.verdict == Verdict.NOT_INTEGRAL
        assert cert.first_witness.index == 4
        assert cert.data["traces"][:4] == ["0", "1", "0", "1/2"]

    def test_recurrence_matches_powering(self, cubic_field, rng):
        field = cubic_field
        for _ in range(5):
            lam = field.element([rng.randint(-3, 3) for _ in range(3)]) + 1
            alpha = field.element([Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)]) + 2
            if lam.is_zero or alpha.is_zero:
                continue
            direct = [trace(lam * alpha ** j) for j in range(1, 12)]
            assert trace_sequence(lam, alpha, 11) == direct

    def test_short_window_is_inconclusive(self, golden_field):
        cert = trace_power_window(golden_field.one(), golden_field.theta(), window=3)
        assert cert.verdict == Verdict.INCONCLUSIVE
        assert cert.exit_code == 2

    def test_denominator_q(self, sqrt2_field):
        alpha = sqrt2_field.element([0, Fraction(1, 2)])
        # 4 * Tr(alpha^j) is integral for j <= 3 but the bound for q = 4 is 9
        cert = trace_power_window(sqrt2_field.one(), alpha, q=4, window=3)
        assert cert.verdict == Verdict.INCONCLUSIVE
        assert cert.bound_used == 9

    def test_closure_degree(self, q_field, sqrt2_field):
        cert = trace_power_window(q_field.one(), q_field.from_rational(3), closure_degree=2)
        assert cert.verdict == Verdict.INTEGRAL
        assert cert.data["traces"][0] == "6"
        assert cert.bound_used == 5
        with pytest.raises(ClosureDegreeMismatch):
            trace_power_window(sqrt2_field.one(), sqrt2_field.theta(), closure_degree=3)

    def test_zero_alpha(self, q_field):
        with pytest.raises(ZeroElement):
            trace_power_window(q_field.one(), q_field.zero())

    def test_decision_consistency(self, q_field, sqrt2_field, golden_field, cubic_field, biquadratic_field, rng):
        fields = [q_field, sqrt2_field, golden_field, cubic_field, biquadratic_field]
        checked = 0
        while checked < 200:
            field = rng.choice(fields)
            coords = [rng.randint(-4, 4) for _ in range(field.degree)]
            alpha = field.element(coords)
            if alpha.is_zero:
                continue
            if checked % 2:
                p = rng.choice([2, 3])
                if all(c % p == 0 for c in coords):
                    continue
                alpha = alpha * Fraction(1, p)
            checked += 1
            cert = trace_power_window(field.one(), alpha)
            integral = is_algebraic_integer(alpha).integral
            assert (cert.verdict == Verdict.INTEGRAL) == integral
            if not integral:
                assert cert.verdict == Verdict.NOT_INTEGRAL
                assert cert.first_witness.index <= cert.bound_used


class TestTwoTerm:
    def test_constant_examples(self, q_field):
        c = k2_constant(*(q_field.from_rational(v) for v in (1, 1, Fraction(3, 2), Fraction(1, 2))))
        assert c.value == 3 and c.v0 == 1
        c = k2_constant(*(q_field.from_rational(v) for v in (2, Fraction(1, 2), 1, 2)))
        assert c.value == 4

    def test_witness_beyond_literal_constant(self, q_field):
        cert = k2_certify(*(q_field.from_rational(v) for v in (1, 1, Fraction(3, 2), Fraction(1, 2))))
        assert cert.bound_used >= 3
        assert cert.verdict == Verdict.FAIL_WITNESS
        assert cert.first_witness.index == 2
        assert cert.first_witness.detail["m"] == {"coords": ["5/2"]}
        assert cert.data["constant"]["literal_C"] == 1
        assert any("literal constant" in note for note in cert.notes)

    def test_integral_pass(self, q_field):
        cert = k2_certify(*(q_field.from_rational(v) for v in (1, 1, 2, 3)))
        assert cert.verdict == Verdict.PASS
        assert cert.window == (1, 3)

    def test_golden_conjugates(self, golden_field):
        phi = golden_field.theta()
        cert = k2_certify(golden_field.one(), -golden_field.one(), phi, 1 - phi)
        assert cert.verdict == Verdict.PASS

    def test_degenerate(self, q_field):
        with pytest.raises(DegenerateDifference):
            k2_constant(q_field.one(), q_field.one(), q_field.from_rational(2), q_field.from_rational(2))

    def test_soundness_sweep(self, q_field, sqrt2_field, rng):
        for trial in range(500):
            field = sqrt2_field if trial % 5 == 0 else q_field
            lam1 = field.from_rational(rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]))
            lam2 = field.from_rational(rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]))
            alphas = []
            while len(alphas) < 2:
                coords = [Fraction(rng.randint(-6, 6), rng.choice([1, 1, 2, 3, 4])) for _ in range(field.degree)]
                a = field.element(coords)
                if not a.is_zero and a not in alphas:
                    alphas.append(a)
            cert = k2_certify(lam1, lam2, *alphas)
            if cert.verdict == Verdict.PASS:
                assert all(is_algebraic_integer(a).integral for a in alphas)


class TestPowerSums:
    def test_vanishing_class(self, q_field):
        spec = _spec(q_field, [1, -1], [2, -2])
        cert = powersum_window(spec, 50)
        assert cert.verdict == Verdict.VANISHING_CLASS
        assert cert.data["partition"]["h_star"] == 2
        assert cert.data["classes"] == [{"members": [1, 2], "vanishing_residues": [0], "members_integral": True}]
        zeros = [row["n"] for row in cert.data["rows"] if row["zero"]]
        assert zeros == list(range(2, 51, 2))
        assert cert.data["rows"][0]["m"] == {"coords": ["4"]}

    def test_integral_singletons(self, q_field):
        cert = powersum_window(_spec(q_field, [1, 1], [2, 3]), 5)
        assert cert.verdict == Verdict.INTEGRAL
        assert all(row["integral"] and not row["zero"] for row in cert.data["rows"])
        assert len(cert.data["partition"]["classes"]) == 2

    def test_non_integral_flagged(self, q_field):
        cert = powersum_window(_spec(q_field, [1, 1], [Fraction(3, 2), 2]), 4)
        assert cert.data["rows"][0]["m"] == {"coords": ["7/2"]}
        assert not cert.data["rows"][0]["integral"]
        assert cert.verdict == Verdict.FAIL_WITNESS
        assert cert.first_witness.index == 1

    def test_discrepancy_is_inconclusive(self, q_field):
        # m_1 = 2 * 1/2 + 3 is integral while the member 1/2 is not
        cert = powersum_window(_spec(q_field, [2, 1], [Fraction(1, 2), 3]), 3)
        assert cert.verdict == Verdict.INCONCLUSIVE
        assert cert.data["discrepancies"] == [{"n": 1, "class": [1]}]
        assert cert.exit_code == 2

    def test_random_dichotomy(self, q_field, rng):
        seen = set()
        for _ in range(150):
            alphas = []
            size = rng.randint(1, 3)
            while len(alphas) < size:
                a = Fraction(rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]), rng.choice([1, 1, 2]))
                if a not in alphas:
                    alphas.append(a)
            if rng.random() < 0.5 and -alphas[0] not in alphas:
                alphas.append(-alphas[0])
            lambdas = [rng.choice([-3, -2, -1, 1, 2, 3]) for _ in alphas]
            if len(alphas) > 1 and alphas[-1] == -alphas[0] and rng.random() < 0.5:
                lambdas[-1] = rng.choice([lambdas[0], -lambdas[0]])
            spec = _spec(q_field, lambdas, alphas)
            cert = powersum_window(spec, 12)
            seen.add(cert.verdict)
            all_integral = all(a.denominator == 1 for a in alphas)
            if all_integral:
                assert cert.verdict in (Verdict.INTEGRAL, Verdict.VANISHING_CLASS)
            if cert.verdict == Verdict.INTEGRAL:
                assert all_integral
            elif cert.verdict == Verdict.VANISHING_CLASS:
                h = cert.bound_used
                for w in cert.witnesses:
                    members = [i - 1 for i in w.detail["class"]]
                    for n in range(1, 13):
                        if n % h == w.index:
                            assert sum(Fraction(lambdas[a]) * alphas[a] ** n for a in members) == 0
            else:
                assert not all_integral
        assert {Verdict.INTEGRAL, Verdict.VANISHING_CLASS, Verdict.FAIL_WITNESS} <= seen

    def test_length_mismatch(self, q_field):
        with pytest.raises(LengthMismatch):
            _spec(q_field, [1], [2, 3])


class TestSubsums:
    def test_no_vanishing(self, q_field):
        spec = _spec(q_field, [1, 1], [2, 3])
        assert subsum_nonvanishing(spec, 1) == []
        assert subsum_certificate(spec).verdict == Verdict.PASS

    def test_opposite_roots(self, sqrt2_field):
        theta = sqrt2_field.theta()
        spec = PowerSumSpec((sqrt2_field.one(), -sqrt2_field.one()), (theta, -theta))
        found = subsum_nonvanishing(spec, 2)
        assert [(w.subset, w.residue) for w in found] == [((0,), 1), ((1,), 1)]
        cert = subsum_certificate(spec)
        assert cert.verdict == Verdict.FAIL_WITNESS
        assert cert.data["vanishing"][0] == {"subset": [1], "residue": 1}

    def test_too_many_terms(self, q_field):
        spec = _spec(q_field, [1] * 21, list(range(2, 23)))
        with pytest.raises(TooManyTerms):
            subsum_nonvanishing(spec, 1)


class TestGroupRing:
    def test_examples(self, sqrt2_field, sqrt2_galois):
        theta = sqrt2_field.theta()
        one = sqrt2_field.one()
        assert groupring_eval(sqrt2_galois, [one, one], theta, 2) == 4
        assert groupring_eval(sqrt2_galois, [-one, one], theta, 1) == theta * -2
        assert groupring_eval(sqrt2_galois, [-one, one], theta, 2).is_zero

    def test_window(self, sqrt2_field, sqrt2_galois):
        one = sqrt2_field.one()
        cert = groupring_window(sqrt2_galois, [one, one], sqrt2_field.element([1, 1]), 10)
        assert cert.verdict == Verdict.PASS
        half = sqrt2_field.element([0, Fraction(1, 2)])
        cert = groupring_window(sqrt2_galois, [one, one], half, 6)
        assert cert.verdict == Verdict.FAIL_WITNESS
        assert cert.first_witness.index == 4

    def test_guards(self, sqrt2_field, sqrt2_galois):
        one = sqrt2_field.one()
        with pytest.raises(LengthMismatch):
            groupring_eval(sqrt2_galois, [one], sqrt2_field.theta(), 1)
        partial = verify_galois_data(sqrt2_field, [sqrt2_field.theta()])
        with pytest.raises(NotFullGroup):
            groupring_eval(partial, [one], sqrt2_field.theta(), 1)


class TestTracePoly:
    def test_vanishing_term(self, sqrt2_field):
        one = sqrt2_field.one()
        cert = tracepoly_scan([one, one], sqrt2_field.theta(), 4)
        # Tr(theta^n) vanishes for odd n
        assert [w.index for w in cert.witnesses] == [1, 3]
        assert cert.data["rows"][1]["terms"] == ["2", "4"]


class TestDiophantine:
    def test_power_of_two(self, q_field):
        spec = _spec(q_field, [1], [2])
        assert dio_search(spec, 8, 64) == [3]
        assert dio_search(spec, 8, 128) == [3]

    def test_two_terms(self, q_field):
        assert dio_search(_spec(q_field, [1, 1], [2, 3]), "5", 64) == [1]

    def test_root_of_unity_rejected(self, q_field):
        with pytest.raises(RootOfUnityInput) as excinfo:
            dio_search(_spec(q_field, [1], [-1]), 1, 10)
        assert excinfo.value.index == 0

    def test_zero_target(self, q_field):
        with pytest.raises(ZeroTarget):
            dio_search(_spec(q_field, [1], [2]), 0, 10)

    def test_certificate(self, golden_field):
        spec = PowerSumSpec((golden_field.one(),), (golden_field.theta(),))
        cert = dio_certificate(spec, 7, 20)
        assert cert.data["solutions"] == [4]
        assert [w.index for w in cert.witnesses] == [4]
