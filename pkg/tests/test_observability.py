"""Odd/odd approximants, counterexample states, Ingham gaps and frame bounds."""

import math

import numpy as np
import pytest

from piezobeam import (
    ExhaustedBudget,
    InvalidBudget,
    NotRational,
    OddApproximant,
    ParityViolation,
    TruncationTooSmall,
    ZeroState,
    ModalCoefficients,
    ModeIndex,
    derive_constants,
    exponent_family,
    ingham_frame_bounds,
    ingham_gap,
    near_unobservable_state,
    observability_quotient,
    odd_odd_approximants,
    output_energy,
    parameters_for_ratio,
    quotient_bound,
    sigma,
)

GOLDEN_RATIO_TARGET = (3.0 - math.sqrt(5.0)) / 2.0


class TestApproximants:
    def test_golden_sequence_is_every_other_fibonacci(self):
        approx = odd_odd_approximants(GOLDEN_RATIO_TARGET, 4, qmax=1000)
        assert [(a.p, a.q) for a in approx] == [(1, 3), (5, 13), (21, 55), (89, 233)]

    def test_golden_quality_constant_bounded(self):
        approx = odd_odd_approximants(GOLDEN_RATIO_TARGET, 5, qmax=2000)
        cq2 = [a.cq2 for a in approx]
        assert max(cq2) <= 2.0
        assert max(cq2) == pytest.approx(1.0 / math.sqrt(5.0), rel=0.01)
        for a in approx:
            assert a.p % 2 == 1 and a.q % 2 == 1
            assert math.gcd(a.p, a.q) == 1
            assert a.err <= max(cq2) / a.q**2 * (1 + 1e-12)
        assert all(b.q > a.q for a, b in zip(approx, approx[1:]))

    def test_exact_odd_odd_terminates(self):
        approx = odd_odd_approximants(1.0 / 3.0, 4, qmax=100)
        assert len(approx) == 1
        assert (approx[0].p, approx[0].q) == (1, 3)
        assert approx[0].err == 0.0 and approx[0].exact

    def test_even_target_never_exact(self):
        approx = odd_odd_approximants(0.5, 5, qmax=500)
        assert (approx[0].p, approx[0].q) == (1, 3)
        assert approx[0].err == pytest.approx(1.0 / 6.0)
        assert approx[0].cq2 == pytest.approx(1.5)
        errs = [a.err for a in approx]
        assert all(b < a for a, b in zip(errs, errs[1:]))
        assert errs[-1] < 0.01  # approaches 1/2 but never exactly

    def test_budget_exhaustion_warns(self):
        with pytest.warns(ExhaustedBudget):
            out = odd_odd_approximants(GOLDEN_RATIO_TARGET, 4, qmax=20)
        assert [(a.p, a.q) for a in out] == [(1, 3), (5, 13)]

    def test_invalid_inputs(self):
        with pytest.raises(InvalidBudget):
            odd_odd_approximants(-1.0, 3)
        with pytest.raises(InvalidBudget):
            odd_odd_approximants(0.5, 0)


class TestCounterexampleStates:
    def test_sign_normalization_for_one_three(self, golden, golden_dc):
        approx = OddApproximant(p=1, q=3, err=0.05, cq2=0.45)
        state = near_unobservable_state(approx, golden)
        # q = 3: q+1 divisible by 4, so the family-1 sign flips
        np.testing.assert_allclose(state.c1[1], -1.0 / golden_dc.b1, rtol=1e-12)
        np.testing.assert_allclose(state.c2[0], -1.0 / golden_dc.b2, rtol=1e-12)
        assert np.all(state.d1 == 0) and np.all(state.d2 == 0)
        assert state.c1[0] == 0 and np.count_nonzero(state.c1) == 1

    def test_active_frequencies_read_off(self, golden, golden_dc):
        approx = OddApproximant(p=5, q=13, err=0.0, cq2=0.0)
        state = near_unobservable_state(approx, golden)
        j1, j2 = (13 + 1) // 2, (5 + 1) // 2
        assert state.c1[j1 - 1] != 0 and state.c2[j2 - 1] != 0
        np.testing.assert_allclose(
            sigma(j1, golden.length) / golden_dc.zeta1,
            13.0 * math.pi / (2.0 * golden.length * golden_dc.zeta1),
        )
        np.testing.assert_allclose(
            sigma(j2, golden.length) / golden_dc.zeta2,
            5.0 * math.pi / (2.0 * golden.length * golden_dc.zeta2),
        )

    def test_norm_constant_along_sequence(self, golden):
        from piezobeam import modal_norm_sq

        norms = []
        for approx in odd_odd_approximants(GOLDEN_RATIO_TARGET, 4, qmax=1000):
            norms.append(modal_norm_sq(near_unobservable_state(approx, golden), golden))
        np.testing.assert_allclose(norms, norms[0], rtol=1e-12)
        np.testing.assert_allclose(norms[0], 5.0, rtol=1e-12)

    def test_truncation_guard(self, golden):
        approx = OddApproximant(p=1, q=9, err=0.0, cq2=0.0)
        with pytest.raises(TruncationTooSmall):
            near_unobservable_state(approx, golden, J=3)


class TestQuotients:
    def test_exact_resonance_gives_zero(self, ratio_third):
        dc = derive_constants(ratio_third)
        state = near_unobservable_state(
            odd_odd_approximants(dc.ratio, 1)[0], ratio_third
        )
        assert observability_quotient(state, ratio_third, 10.0) == 0.0

    def test_single_mode_constant_output(self, ratio_half):
        coeffs = ModalCoefficients.single(ModeIndex(1, 1, 1), J=1)
        np.testing.assert_allclose(
            observability_quotient(coeffs, ratio_half, 3.0), 2.0, rtol=1e-12
        )

    def test_zero_state_rejected(self, golden):
        with pytest.raises(ZeroState):
            observability_quotient(ModalCoefficients.zeros(2), golden, 1.0)

    def test_golden_quotients_scale_like_inverse_q_squared(self, golden):
        T = 10.0
        approx = odd_odd_approximants(GOLDEN_RATIO_TARGET, 4, qmax=1000)
        quotients = [
            observability_quotient(near_unobservable_state(a, golden), golden, T)
            for a in approx
        ]
        qs = np.log([a.q for a in approx])
        slope = np.polyfit(qs, np.log(quotients), 1)[0]
        assert -2.3 < slope < -1.7

    def test_mean_value_bound_holds_at_every_record(self, golden):
        T = 10.0
        for a in odd_odd_approximants(GOLDEN_RATIO_TARGET, 4, qmax=1000):
            state = near_unobservable_state(a, golden)
            bound = quotient_bound(a, golden, T)
            assert output_energy(state, golden, T) <= bound
            assert observability_quotient(state, golden, T) <= bound


class TestInghamGap:
    def test_half_ratio_values(self, ratio_half):
        gap, tmin = ingham_gap(ratio_half, 1, 2)
        np.testing.assert_allclose(gap, math.pi / (2.0 * math.sqrt(2.0)), rtol=1e-12)
        np.testing.assert_allclose(tmin, 4.0 * math.sqrt(2.0), rtol=1e-12)

    def test_length_scaling(self):
        params = parameters_for_ratio(0.5, length=2.0)
        gap, tmin = ingham_gap(params, 1, 2)
        np.testing.assert_allclose(gap, math.pi / (4.0 * math.sqrt(2.0)), rtol=1e-12)
        np.testing.assert_allclose(tmin, 8.0 * math.sqrt(2.0), rtol=1e-12)

    def test_odd_odd_rejected(self, ratio_third):
        with pytest.raises(ParityViolation):
            ingham_gap(ratio_third, 1, 3)

    def test_mismatched_fraction_rejected(self, ratio_half):
        with pytest.raises(NotRational):
            ingham_gap(ratio_half, 1, 4)

    def test_family_gaps_respect_the_bound(self, ratio_half):
        gap, _ = ingham_gap(ratio_half, 1, 2)
        freqs = exponent_family(ratio_half, 200)
        assert np.min(np.diff(freqs)) >= gap * (1.0 - 1e-12)


class TestFrameBounds:
    def test_single_exponent(self):
        out = ingham_frame_bounds([1.7], T=2.5, trials=5)
        np.testing.assert_allclose([out.cmin, out.cmax], [2.5, 2.5], rtol=1e-12)
        assert not out.has_collisions

    def test_coincident_pair_collapses(self):
        out = ingham_frame_bounds([1.0, 1.0], T=3.0, trials=20)
        assert out.has_collisions
        assert out.cmin == pytest.approx(0.0, abs=1e-12)

    def test_half_ratio_family_stable_under_truncation(self, ratio_half):
        _, tmin = ingham_gap(ratio_half, 1, 2)
        T = 1.2 * tmin
        bounds = [
            ingham_frame_bounds(exponent_family(ratio_half, J), T, trials=200)
            for J in (10, 20)
        ]
        assert all(b.cmin > 0 for b in bounds)
        ratio = bounds[1].cmin / bounds[0].cmin
        assert 0.5 < ratio < 2.0

    def test_deterministic_for_fixed_seed(self, ratio_half):
        freqs = exponent_family(ratio_half, 8)
        a = ingham_frame_bounds(freqs, 7.0, trials=50, seed=123)
        b = ingham_frame_bounds(freqs, 7.0, trials=50, seed=123)
        assert a == b
