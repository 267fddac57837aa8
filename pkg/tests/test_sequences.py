"""Sequence engine: defining sequences, indicators, lemma checks."""

import math

import numpy as np
import pytest

from wickspec.profiles import FunctionProfile
from wickspec.sequences import (IndicatorFunction, LogSequence, SequenceError,
                                check_regularity, defining_sequence,
                                indicator_eval, lemma1_check, lemma3_sandwich)

from oracles import grid_sup_power_weight

SQRT = FunctionProfile.power(0.5)
QUAD = FunctionProfile.quadratic()
LIN = FunctionProfile.linear()
EXPM1 = FunctionProfile.exp_minus_one()
ENTROPY = FunctionProfile.entropy()


class TestLogSequence:
    def test_rejects_nan(self):
        with pytest.raises(SequenceError):
            LogSequence(np.array([0.0, math.nan]))

    def test_from_terms(self):
        seq = LogSequence.from_terms([1.0, 2.0, 6.0])
        assert seq.values[2] == pytest.approx(math.log(6.0))

    def test_immutable(self):
        seq = LogSequence(np.zeros(4))
        with pytest.raises(ValueError):
            seq.values[0] = 1.0

    def test_csv_roundtrip(self, tmp_path):
        seq = LogSequence.from_terms([1.0, 3.0, 11.0])
        path = tmp_path / "seq.csv"
        seq.write_csv(path)
        rows = path.read_text().strip().splitlines()
        assert rows[0] == "k,ln_a_k"
        assert float(rows[2].split(",")[1]) == pytest.approx(math.log(3.0))


class TestDefiningSequence:
    def test_linear_alpha_gives_ones(self):
        seq = defining_sequence(LIN, "a-from-alpha", 30)
        assert np.allclose(seq.values, 0.0, atol=1e-10)

    def test_sqrt_beta_closed_form(self):
        # b_l = (2l/e)^{2l}
        seq = defining_sequence(SQRT, "b-from-beta", 40)
        for l in (1, 5, 20, 40):
            expected = 2.0 * l * (math.log(2.0 * l) - 1.0)
            assert seq.values[l] == pytest.approx(expected, rel=1e-10)

    def test_quadratic_alpha_closed_form_vs_grid_oracle(self):
        seq = defining_sequence(QUAD, "a-from-alpha", 20)
        for k in (1, 3, 10, 20):
            assert seq.values[k] == pytest.approx(
                0.5 * k * (math.log(2.0 * k) - 1.0), rel=1e-12)
            oracle = grid_sup_power_weight(k, lambda r: r * r / 4.0)
            assert seq.values[k] == pytest.approx(oracle, rel=1e-6, abs=1e-6)

    def test_entropy_alpha_search_vs_grid_oracle(self):
        from wickspec.profiles import convex_conjugate
        seq = defining_sequence(ENTROPY, "a-from-alpha", 8)
        for k in (1, 4, 8):
            oracle = grid_sup_power_weight(
                k, lambda r: convex_conjugate(ENTROPY, r))
            assert seq.values[k] == pytest.approx(oracle, rel=1e-6, abs=1e-6)

    def test_log_growth_beta_divergent_role(self):
        with pytest.raises(SequenceError, match="index"):
            defining_sequence(FunctionProfile.log_growth(), "b-from-beta", 5)

    def test_first_value_is_zero(self):
        # a_0 = sup_r e^{-alpha_*(r)} = 1
        for prof in (QUAD, EXPM1):
            seq = defining_sequence(prof, "a-from-alpha", 3)
            assert seq.values[0] == 0.0


class TestLemma1:
    @pytest.mark.parametrize("alpha", [QUAD, EXPM1, ENTROPY],
                             ids=["s^2", "e^s-1", "entropy"])
    def test_saddle_identity_small_k(self, alpha):
        for k in (1, 2, 5, 11):
            assert lemma1_check(alpha, k) <= 1e-6

    def test_k_zero_trivial(self):
        assert lemma1_check(QUAD, 0) == 0.0

    def test_quadratic_up_to_40(self):
        diffs = [lemma1_check(QUAD, k) for k in range(41)]
        assert max(diffs) <= 1e-6

    def test_stirling_consistency_linear_alpha(self):
        # alpha(s) = s: inf_s s^{-k} e^s sits at s = k and the right side
        # of the saddle identity collapses to 1 exactly
        from wickspec.search import minimize_unimodal
        for k in (1, 5, 17, 40):
            res = minimize_unimodal(lambda t, k=k: math.exp(t) - k * t)
            assert math.exp(res.arg) == pytest.approx(k, rel=1e-6)
            ln_rhs = k * (math.log(k) - 1.0) + res.value
            assert abs(ln_rhs) <= 1e-9 * max(1.0, k * math.log(k))


class TestIndicator:
    def test_factorial_sequence_at_one(self):
        seq = LogSequence.from_terms([math.factorial(l) for l in range(10)])
        out = indicator_eval(seq, 1.0)
        assert out.value == pytest.approx(1.0)
        assert out.argmax == 0      # tie at l in {0, 1} resolves down
        assert not out.truncated

    def test_s_zero_only_l0_survives(self):
        seq = LogSequence.from_terms([4.0, 1.0, 1.0])
        out = indicator_eval(seq, 0.0)
        assert out.value == pytest.approx(0.25)

    def test_sqrt_indicator_matches_enumeration(self):
        seq = defining_sequence(SQRT, "b-from-beta", 200)
        out = indicator_eval(seq, 10.0)
        scores = [l * math.log(10.0) - seq.values[l] for l in range(201)]
        assert out.log_value == pytest.approx(max(scores), rel=1e-12)

    def test_truncation_flagged(self):
        seq = defining_sequence(SQRT, "b-from-beta", 5)
        out = indicator_eval(seq, 1e6)   # argmax ~ sqrt(s)/2 = 500 >> 5
        assert out.truncated

    def test_indicator_dominates_each_term(self):
        seq = defining_sequence(SQRT, "b-from-beta", 80)
        ind = IndicatorFunction(seq)
        for s in np.geomspace(0.1, 1e3, 20):
            log_b = ind.log_eval(float(s))
            for l in (0, 3, 17, 60):
                assert log_b >= l * math.log(s) - seq.values[l] - 1e-12

    def test_log_b_convex_in_l(self):
        seq = defining_sequence(SQRT, "b-from-beta", 120)
        second = np.diff(seq.values, 2)
        assert np.all(second >= -1e-9)


class TestLemma3:
    def test_sqrt_sandwich_passes(self):
        rep = lemma3_sandwich(SQRT, 0.1)
        assert rep.passed
        assert rep.constants["refinement_ratio"] < 1.1
        assert math.isfinite(rep.constants["C_prime"])

    def test_equality_at_zero(self):
        seq = defining_sequence(SQRT, "b-from-beta", 50)
        out = indicator_eval(seq, 0.0)
        assert out.value == pytest.approx(1.0)   # b(0) = 1 = e^{beta(0)}

    def test_larger_eps_gives_smaller_constant(self):
        beta = FunctionProfile.power(0.9)
        tight = lemma3_sandwich(beta, 0.1)
        loose = lemma3_sandwich(beta, 0.5)
        assert tight.passed and loose.passed
        assert loose.constants["C_prime"] <= tight.constants["C_prime"] + 1e-9

    def test_left_half_exact_on_grid(self):
        # ln b(s) <= beta(s) everywhere: round trip of the construction
        seq = defining_sequence(SQRT, "b-from-beta", 200)
        ind = IndicatorFunction(seq)
        s = np.geomspace(1e-3, 1e4, 300)
        assert np.all(ind.log_eval_grid(s) <= np.sqrt(s) + 1e-9)


class TestRegularity:
    def test_constant_sequence(self):
        pair, witness = check_regularity(LogSequence(np.zeros(60)))
        assert witness is None
        assert pair == (1.0, 1.0)

    def test_factorial_needs_h_two(self):
        seq = LogSequence(np.array([math.lgamma(k + 1) for k in range(80)]))
        pair, witness = check_regularity(seq)
        assert witness is None
        c, h = pair
        assert h == 2.0
        assert c == pytest.approx(1.0)

    def test_k_power_2k(self):
        terms = np.array([0.0] + [2.0 * k * math.log(k) for k in range(1, 80)])
        pair, witness = check_regularity(LogSequence(terms))
        assert witness is None
        c, h = pair
        assert h <= 4.0
        assert c <= 2.0

    def test_profile_sequences_satisfy_regularity(self):
        # sequences built per the defining formulas pass the condition
        for prof, role in ((QUAD, "a-from-alpha"), (SQRT, "b-from-beta")):
            seq = defining_sequence(prof, role, 120)
            pair, witness = check_regularity(seq)
            assert witness is None, (prof.kind, witness)
