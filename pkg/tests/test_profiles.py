"""Profile calculus: conjugations, doubling, nonquasianalyticity, ordering."""

import math

import numpy as np
import pytest

from wickspec.profiles import (FunctionProfile, ProfileError, check_doubling,
                               check_nonquasianalytic, check_precedes,
                               concave_conjugate, conjugate_profile,
                               convex_conjugate, default_grid,
                               lemma2_margin, log_domination_threshold)

from oracles import grid_inf_conjugate, grid_sup_conjugate

SQRT = FunctionProfile.power(0.5)
QUAD = FunctionProfile.quadratic()
LIN = FunctionProfile.linear()
EXPM1 = FunctionProfile.exp_minus_one()
ENTROPY = FunctionProfile.entropy()
LOG = FunctionProfile.log_growth()


class TestConstruction:
    def test_catalog_values_nonnegative_nondecreasing(self):
        s = default_grid(1e-3, 1e2, 64)
        for prof in (SQRT, QUAD, LIN, EXPM1, ENTROPY, LOG):
            v = prof.values(s)
            assert np.all(v >= 0)
            assert np.all(np.diff(v) >= -1e-12)

    def test_declared_convexity_is_validated(self):
        with pytest.raises(ProfileError):
            FunctionProfile("power", {"gamma": 0.5},
                            attributes=FunctionProfile.quadratic().attributes)

    def test_sampled_profile_roundtrip(self):
        s = np.geomspace(1e-2, 1e3, 41)
        prof = FunctionProfile.sampled(s, np.sqrt(s), normalize=False,
                                       concave=True, convex_in_log=True)
        # exact at sample nodes; between nodes the value is
        # interpolation-dependent (flagged in reports)
        assert prof.value(float(s[24])) == pytest.approx(
            math.sqrt(s[24]), rel=1e-12)
        assert prof.value(100.0) == pytest.approx(10.0, rel=1e-2)
        again = FunctionProfile.from_dict(prof.to_dict())
        assert again.value(25.0) == pytest.approx(prof.value(25.0))

    def test_sampled_profile_normalized_at_origin(self):
        s = np.geomspace(1e-2, 1e3, 41)
        prof = FunctionProfile.sampled(s, 3.0 + np.sqrt(s),
                                       convex_in_log=True)
        # the leading value is subtracted so the scale vanishes there
        assert prof.value(float(s[0])) == pytest.approx(0.0, abs=1e-12)
        assert prof.params["offset"] == pytest.approx(3.1)

    def test_sampled_grid_must_increase(self):
        with pytest.raises(ProfileError):
            FunctionProfile.sampled([1.0, 0.5, 2.0], [1.0, 1.0, 2.0])

    def test_value_at_zero(self):
        for prof in (SQRT, QUAD, EXPM1, ENTROPY, LOG):
            assert prof.value(0.0) == 0.0


class TestConvexConjugate:
    def test_quadratic_stationary_point(self):
        # alpha = s^2: sup(rs - s^2) at s = r/2 gives r^2/4
        assert convex_conjugate(QUAD, 2.0) == pytest.approx(1.0, rel=1e-9)
        assert convex_conjugate(QUAD, 3.0) == pytest.approx(9.0 / 4.0, rel=1e-9)

    def test_linear_threshold(self):
        assert convex_conjugate(LIN, 0.5) == 0.0
        assert convex_conjugate(LIN, 2.0) == math.inf

    def test_exp_profile_at_e(self):
        # r*ln r - r + 1 at r = e gives exactly 1; cross-check the dense
        # grid supremum oracle
        val = convex_conjugate(EXPM1, math.e)
        assert val == pytest.approx(1.0, rel=1e-8)
        oracle = grid_sup_conjugate(lambda s: math.expm1(s), math.e)
        assert val == pytest.approx(oracle, rel=1e-8)

    def test_entropy_against_grid_oracle(self):
        for r in (0.5, 1.0, 2.5, 7.0):
            val = convex_conjugate(ENTROPY, r)
            oracle = grid_sup_conjugate(lambda s: s * math.log1p(s), r)
            assert val == pytest.approx(oracle, rel=1e-6, abs=1e-9)

    def test_step_profile(self):
        step = FunctionProfile.step(1.0)
        assert convex_conjugate(step, 3.0) == pytest.approx(3.0)

    def test_rejects_nonconvex(self):
        with pytest.raises(ProfileError):
            convex_conjugate(SQRT, 1.0)

    def test_monotone_in_r(self):
        rs = np.linspace(0.0, 6.0, 25)
        vals = [convex_conjugate(ENTROPY, r) for r in rs]
        assert np.all(np.diff(vals) >= -1e-12)

    def test_nonnegative_and_zero_at_zero(self):
        for prof in (QUAD, EXPM1, ENTROPY):
            assert convex_conjugate(prof, 0.0) == 0.0
            assert convex_conjugate(prof, 1.3) >= 0.0


class TestConcaveConjugate:
    def test_sqrt_closed_form(self):
        # beta = sqrt(s): inf at s = 1/(4 t^2) gives -1/(4t)
        assert concave_conjugate(SQRT, 0.5) == pytest.approx(-0.5, rel=1e-9)
        assert concave_conjugate(SQRT, 2.0) == pytest.approx(-0.125, rel=1e-9)

    def test_power_two_thirds(self):
        beta = FunctionProfile.power(2.0 / 3.0)
        assert concave_conjugate(beta, 1.0) == pytest.approx(-4.0 / 27.0,
                                                             rel=1e-9)

    def test_power_09_against_grid_oracle(self):
        beta = FunctionProfile.power(0.9)
        val = concave_conjugate(beta, 0.3)
        oracle = grid_inf_conjugate(lambda s: s ** 0.9, 0.3)
        assert val == pytest.approx(oracle, rel=1e-6)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            concave_conjugate(SQRT, 0.0)

    def test_nonpositive_monotone_diverges_at_zero(self):
        ts = np.geomspace(1e-3, 10.0, 30)
        vals = np.array([concave_conjugate(SQRT, t) for t in ts])
        assert np.all(vals <= 0)
        assert np.all(np.diff(vals) >= 0)
        assert vals[0] < -100.0


class TestInvolutionAndTransfer:
    @pytest.mark.parametrize("alpha,s_hi", [(QUAD, 1e3), (EXPM1, 600.0),
                                            (ENTROPY, 1e3)],
                             ids=["s^2", "e^s-1", "s*ln(1+s)"])
    def test_double_conjugate_recovers_alpha(self, alpha, s_hi):
        # e^s - 1 saturates double precision at s ~ 600: the outer
        # conjugate's argmax sits at e^s, beyond which the search range
        # cannot reach; the grid documents that limit
        star = conjugate_profile(alpha)
        s_grid = np.geomspace(1e-2, s_hi, 64)
        for s in s_grid:
            twice = convex_conjugate(star, float(s))
            assert twice == pytest.approx(alpha.value(float(s)),
                                          rel=1e-6, abs=1e-9)

    @pytest.mark.parametrize("alpha", [QUAD, EXPM1, ENTROPY],
                             ids=["s^2", "e^s-1", "s*ln(1+s)"])
    def test_conjugate_subadditivity(self, alpha):
        # 2*alpha_*(s) <= alpha_*(2s), from convexity with alpha(0) = 0
        for s in np.geomspace(1e-2, 1e2, 40):
            one = convex_conjugate(alpha, float(s))
            two = convex_conjugate(alpha, 2.0 * float(s))
            if math.isinf(two):
                continue
            assert 2.0 * one <= two + 1e-9 * (1.0 + abs(two))

    def test_doubling_transfer_to_lower_conjugate(self):
        # beta passing doubling with h forces 2*beta^*(t) >= beta^*(2t/h)
        h, _ = check_doubling(SQRT)
        for t in np.geomspace(1e-2, 1e2, 30):
            lhs = 2.0 * concave_conjugate(SQRT, float(t))
            rhs = concave_conjugate(SQRT, 2.0 * float(t) / h)
            assert lhs >= rhs - 1e-9 * (1.0 + abs(rhs))


class TestDoubling:
    def test_sqrt_gives_four(self):
        h, witness = check_doubling(SQRT)
        assert witness is None
        assert h == pytest.approx(4.0, rel=1e-3)

    def test_power_two_thirds(self):
        h, witness = check_doubling(FunctionProfile.power(2.0 / 3.0))
        assert witness is None
        assert h == pytest.approx(2.0 ** 1.5, rel=1e-3)

    def test_log_growth_rejected(self):
        h, witness = check_doubling(LOG)
        assert h is None
        assert witness > 100.0


class TestNonquasianalytic:
    def test_sqrt_integral_two(self):
        status, value = check_nonquasianalytic(SQRT)
        assert status == "finite"
        assert value == pytest.approx(2.0, abs=1e-6)

    def test_power_09_integral_ten(self):
        status, value = check_nonquasianalytic(FunctionProfile.power(0.9))
        assert status == "finite"
        assert value == pytest.approx(10.0, abs=1e-4)

    def test_linear_divergent(self):
        status, value = check_nonquasianalytic(LIN)
        assert status == "divergent"
        assert value == math.inf

    def test_entropy_divergent(self):
        status, _ = check_nonquasianalytic(ENTROPY)
        assert status == "divergent"

    def test_log_growth_finite(self):
        status, value = check_nonquasianalytic(LOG)
        assert status == "finite"
        # oracle: int_1^inf ln(1+s)/s^2 ds = 2 ln 2
        assert value == pytest.approx(2.0 * math.log(2.0), rel=1e-4)


class TestPrecedes:
    def test_sqrt_precedes_linear(self):
        pair, witness = check_precedes(SQRT, LIN)
        assert witness is None
        assert pair == (1.0, 1.0)

    def test_linear_does_not_precede_sqrt(self):
        pair, witness = check_precedes(LIN, SQRT)
        assert pair is None
        assert witness > 1e3

    def test_reflexive(self):
        pair, witness = check_precedes(SQRT, SQRT)
        assert witness is None
        assert pair == (0.0, 1.0)

    def test_sqrt_precedes_quadratic(self):
        pair, witness = check_precedes(SQRT, QUAD)
        assert witness is None


class TestLemma2Margin:
    def test_sqrt_eps_one(self):
        c, witness = lemma2_margin(SQRT, 1.0)
        assert witness is None
        # oracle: maximize sqrt(s) + ln s - sqrt(2 s) on a dense grid
        s = np.geomspace(1e-6, 1e9, 300_001)
        oracle = float(np.max(np.sqrt(s) + np.log(s) - np.sqrt(2.0 * s)))
        assert c == pytest.approx(oracle, rel=1e-3, abs=1e-6)
        assert c >= oracle - 1e-9

    def test_power_09_small_eps(self):
        c, witness = lemma2_margin(FunctionProfile.power(0.9), 0.1)
        assert witness is None
        assert math.isfinite(c)

    def test_log_growth_fails_with_large_witness(self):
        c, witness = lemma2_margin(LOG, 0.5)
        assert c is None
        assert witness >= 1e6


class TestLogDomination:
    @pytest.mark.parametrize("c", [1.0, 5.0, 20.0])
    def test_sqrt_dominates_any_multiple_of_log(self, c):
        threshold = log_domination_threshold(SQRT, c)
        assert threshold is not None
        s = np.geomspace(threshold, 1e9, 200)
        assert np.all(np.sqrt(s) >= c * np.log(s) - 1e-9)

    def test_log_growth_fails_large_c(self):
        assert log_domination_threshold(LOG, 3.0) is None
