"""Series engine: term recurrences, weight steppers, extrapolation,
convergence guards, and the 2F1 wrapper."""

import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperharmonic import (AccelerationBreakdown, DigammaDiffSum, DomainError,
                           Harmonic, HarmonicSqPlusGen2, LinearCombo,
                           NonConvergentError, PochhammerRatioSeries, PoleError,
                           ReciprocalShift, Unit, eval_hyper, eval_weighted,
                           finite_difference, harmonic, hyp2f1, pochhammer,
                           weight_value, wynn_epsilon)
from hyperharmonic.series import _stepper

# frozen at 40 digits
EX1_VALUE = 0.2177751606844838071823350370302293726395
F21_R = 1.1779196550701314091744402021002208716499
F21_C = complex(1.0705542645157026013120740481842515651534,
                -0.0379394951411739184233317759007260169656)
F21_NEG = 0.9205459388780172109453484311563885565609


class TestSpecValidation:
    def test_bad_factorial_power(self):
        with pytest.raises(DomainError):
            PochhammerRatioSeries((0.5,), (), -1, 1.0, 0)
        with pytest.raises(DomainError):
            PochhammerRatioSeries((0.5,), (), 1.5, 1.0, 0)

    def test_bad_start_index(self):
        with pytest.raises(DomainError):
            PochhammerRatioSeries((0.5,), (), 1, 1.0, 2)

    def test_denominator_pole(self):
        with pytest.raises(PoleError):
            PochhammerRatioSeries((0.5,), (-1.0,), 1, 1.0, 0)
        with pytest.raises(PoleError):
            PochhammerRatioSeries((0.5,), (1e-14,), 1, 1.0, 0)

    def test_effective_exponent(self):
        spec = PochhammerRatioSeries((0.5, 0.5), (1.5,), 1, 1.0, 0)
        assert spec.effective_exponent() == pytest.approx(-1.5, abs=1e-15)

    def test_term_matches_pochhammer_products(self):
        spec = PochhammerRatioSeries((0.3, 0.7 + 0.2j), (1.1,), 2, 0.5, 0)
        for n in (0, 1, 5, 23):
            want = (pochhammer(0.3, n) * pochhammer(0.7 + 0.2j, n)
                    / pochhammer(1.1, n)
                    / pochhammer(1.0, n) ** 2 * (0.5 * 0.8) ** n)
            got = spec.term(n, 0.8)
            assert abs(got - want) <= 1e-13 * max(1.0, abs(want))

    def test_term_below_start_raises(self):
        spec = PochhammerRatioSeries((0.5,), (), 1, 1.0, 1)
        with pytest.raises(DomainError):
            spec.term(0)


class TestWeights:
    def test_harmonic_validation(self):
        with pytest.raises(DomainError):
            Harmonic(stride=4)
        with pytest.raises(DomainError):
            Harmonic(offset=1)

    def test_linear_combo_validation(self):
        with pytest.raises(DomainError):
            LinearCombo(((2.0, "H"),))

    def test_weight_value_reference(self):
        assert weight_value(Unit(), 17) == 1.0
        assert weight_value(Harmonic(), 6) == pytest.approx(49.0 / 20.0, abs=1e-14)
        assert weight_value(Harmonic(stride=2), 3) == pytest.approx(
            harmonic(6), abs=1e-14)
        assert weight_value(Harmonic(stride=3, offset=-1), 2) == pytest.approx(
            harmonic(5), abs=1e-14)
        h4 = harmonic(4)
        g4 = 1.0 + 1.0 / 4 + 1.0 / 9 + 1.0 / 16
        assert weight_value(HarmonicSqPlusGen2(), 4) == pytest.approx(
            h4 * h4 + g4, abs=1e-13)
        assert weight_value(ReciprocalShift(Harmonic()), 3) == pytest.approx(
            harmonic(3) / 4.0, abs=1e-14)
        combo = LinearCombo(((4.0, Harmonic(stride=2)), (-3.0, Harmonic())))
        assert weight_value(combo, 5) == pytest.approx(
            4.0 * harmonic(10) - 3.0 * harmonic(5), abs=1e-13)

    def test_digamma_diff_sum_brute_force(self):
        w = DigammaDiffSum(0.3 + 0.1j, 0.2)
        for n in (0, 1, 4, 9):
            acc = 0j
            for k in range(n):
                acc += 2.0 / (2.0 * 0.2 + k) - 1.0 / (0.3 + 0.1j + 0.2 + 0.5 + k)
            assert abs(weight_value(w, n) - acc) <= 1e-13

    @pytest.mark.parametrize("weight", [
        Unit(),
        Harmonic(),
        Harmonic(stride=2),
        Harmonic(stride=3),
        HarmonicSqPlusGen2(),
        ReciprocalShift(Harmonic(stride=2)),
        DigammaDiffSum(0.25, 0.4),
        DigammaDiffSum(0.3 + 0.1j, 0.2 - 0.2j),
        LinearCombo(((4.0, Harmonic(stride=2)), (-3.0, Harmonic()))),
    ])
    @pytest.mark.parametrize("n0", [0, 1, 7])
    def test_stepper_matches_reference(self, weight, n0):
        step = _stepper(weight, n0)
        for n in range(n0, n0 + 60):
            got = step()
            want = weight_value(weight, n)
            assert abs(got - want) <= 1e-12 * max(1.0, abs(want)), (weight, n)

    def test_stepper_offset_weights_from_one(self):
        step = _stepper(Harmonic(stride=2, offset=-1), 1)
        for n in range(1, 40):
            assert step() == pytest.approx(harmonic(2 * n - 1), abs=1e-13)


class TestWynnEpsilon:
    def test_needs_five(self):
        with pytest.raises(ValueError):
            wynn_epsilon([1.0, 2.0, 3.0, 4.0])

    def test_constant_sequence(self):
        assert wynn_epsilon([3.25] * 9) == 3.25

    def test_alternating_harmonic(self):
        sums, s = [], 0.0
        for k in range(1, 25):
            s += (-1.0) ** (k + 1) / k
            sums.append(s)
        assert abs(wynn_epsilon(sums) - math.log(2.0)) < 1e-12

    def test_geometric(self):
        sums, s = [], 0.0
        for k in range(12):
            s += 0.7 ** k
            sums.append(s)
        assert abs(wynn_epsilon(sums) - 1.0 / 0.3) < 1e-12

    def test_degenerate_input_raises(self):
        with pytest.raises(AccelerationBreakdown):
            wynn_epsilon([1.0, 1.0, 1.0, 1.0, 2.0])

    def test_alternating_squares(self):
        sums, s = [], 0.0
        for k in range(1, 22):
            s += (-1.0) ** (k + 1) / (k * k)
            sums.append(s)
        assert abs(wynn_epsilon(sums) - math.pi ** 2 / 12.0) < 1e-10


class TestEvalWeighted:
    def test_frozen_half_kernel_value(self):
        spec = PochhammerRatioSeries((0.5, 0.5), (), 2, 0.5, 1)
        res = eval_weighted(spec, Harmonic(), 1.0, tol=1e-13)
        assert res.converged and res.method == "direct"
        assert res.terms_used <= 300
        assert abs(res.value - EX1_VALUE) < 1e-12

    def test_binomial_series_closed_form(self):
        spec = PochhammerRatioSeries((1.25,), (), 1, 1.0, 0)
        res = eval_weighted(spec, Unit(), 0.4, tol=1e-12)
        assert abs(res.value - 0.6 ** -1.25) <= 1e-11

    def test_terminating_series_is_exact(self):
        spec = PochhammerRatioSeries((-3.0,), (1.5,), 1, 1.0, 0)
        res = eval_weighted(spec, Unit(), 0.7, tol=1e-12)
        want = sum(spec.term(n, 0.7) for n in range(4))
        assert abs(res.value - want) < 1e-14

    def test_eval_hyper_is_unit_weight(self):
        spec = PochhammerRatioSeries((0.5, 0.5), (1.5,), 1, 1.0, 0)
        a = eval_hyper(spec, 0.3, tol=1e-12)
        b = eval_weighted(spec, Unit(), 0.3, tol=1e-12)
        assert a.value == b.value

    def test_diverges_outside_disk(self):
        spec = PochhammerRatioSeries((0.5,), (), 0, 1.0, 0)
        with pytest.raises(NonConvergentError):
            eval_weighted(spec, Unit(), 1.2)

    def test_unit_argument_requires_accel(self):
        spec = PochhammerRatioSeries((0.5, 0.5), (1.5,), 1, 1.0, 0)
        with pytest.raises(NonConvergentError):
            eval_weighted(spec, Unit(), 1.0)

    def test_divergent_at_one_even_with_accel(self):
        # effective exponent -0.5 >= -1: partial sums grow without bound
        spec = PochhammerRatioSeries((0.5, 0.5), (0.5,), 1, 1.0, 0)
        with pytest.raises(NonConvergentError):
            eval_weighted(spec, Unit(), 1.0, accel=True)

    def test_nondecaying_alternating_raises(self):
        # terms grow like n^0.5 at |x| = 1, so even Abel-style averaging
        # is refused
        spec = PochhammerRatioSeries((1.5,), (), 1, -1.0, 0)
        with pytest.raises(NonConvergentError):
            eval_weighted(spec, Unit(), 1.0, accel=True)

    def test_budget_exhaustion_raises(self):
        spec = PochhammerRatioSeries((0.5, 0.5), (1.5,), 1, 1.0, 0)
        with pytest.raises(NonConvergentError):
            eval_weighted(spec, Unit(), 0.5, tol=1e-10, max_terms=5)

    def test_bad_budget(self):
        spec = PochhammerRatioSeries((0.5,), (), 1, 1.0, 0)
        with pytest.raises(DomainError):
            eval_weighted(spec, Unit(), 0.5, max_terms=0)

    def test_alternating_unit_argument_accelerated(self):
        # sum (1/2)_n (1/2)_n / ((3/2)_n n!) (-1)^n = asinh(1)
        spec = PochhammerRatioSeries((0.5, 0.5), (1.5,), 1, 1.0, 0)
        res = eval_weighted(spec, Unit(), -1.0, tol=1e-9, accel=True)
        assert res.method == "wynn_epsilon"
        assert abs(res.value - math.asinh(1.0)) < 1e-9

    def test_log_series_at_minus_one(self):
        assert abs(hyp2f1(1.0, 1.0, 2.0, -1.0, tol=1e-9, accel=True)
                   - math.log(2.0)) < 1e-9

    @given(st.floats(min_value=-2.5, max_value=2.5),
           st.floats(min_value=-0.7, max_value=0.7))
    @settings(max_examples=30, deadline=None)
    def test_binomial_series_property(self, a, q):
        # sum (a)_n / n! q^n = (1-q)^(-a)
        spec = PochhammerRatioSeries((a,), (), 1, 1.0, 0)
        res = eval_weighted(spec, Unit(), q, tol=1e-12)
        want = (1.0 - q) ** -a
        assert abs(res.value - want) <= 1e-9 * max(1.0, abs(want))


class TestHyp2F1:
    def test_frozen_values(self):
        assert abs(hyp2f1(0.3, 0.7, 1.1, 0.6) - F21_R) < 1e-12
        assert abs(hyp2f1(0.3 + 0.1j, 0.5, 1.2, 0.4 - 0.3j) - F21_C) < 1e-12
        assert abs(hyp2f1(0.25, 0.75, 1.5, -0.85) - F21_NEG) < 1e-12

    def test_against_mpmath_grid(self):
        mpmath.mp.dps = 30
        cases = [
            (0.1, 0.9, 1.3, 0.5),
            (-0.4, 0.6, 0.9, -0.3),
            (0.5, 0.5, 1.5, 0.81),
            (0.2 + 0.3j, 0.4, 1.1 - 0.2j, 0.35 + 0.25j),
        ]
        for a, b, c, x in cases:
            want = complex(mpmath.hyp2f1(a, b, c, x))
            assert abs(hyp2f1(a, b, c, x) - want) <= 1e-11 * max(1.0, abs(want))

    def test_gauss_value_at_one(self):
        # 2F1(a, b; c; 1) = Gamma(c)Gamma(c-a-b)/(Gamma(c-a)Gamma(c-b))
        from hyperharmonic import gamma_ratio
        a, b, c = 0.3, 0.2, 2.0
        want = gamma_ratio([c, c - a - b], [c - a, c - b])
        got = hyp2f1(a, b, c, 1.0, tol=1e-9, accel=True)
        assert abs(got - want) <= 1e-8 * abs(want)


class TestFiniteDifference:
    def test_first_derivative(self):
        import cmath
        got = finite_difference(cmath.exp, 0.3, order=1)
        assert abs(got - math.exp(0.3)) < 1e-12

    def test_second_derivative(self):
        import cmath
        got = finite_difference(cmath.exp, 0.3, order=2, h=1e-3)
        assert abs(got - math.exp(0.3)) < 1e-9

    def test_complex_function(self):
        import cmath
        got = finite_difference(cmath.sin, 0.5 + 0.2j, order=1)
        assert abs(got - cmath.cos(0.5 + 0.2j)) < 1e-11

    def test_bad_order(self):
        with pytest.raises(ValueError):
            finite_difference(math.exp, 0.0, order=3)
