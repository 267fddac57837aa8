"""Wick engine: contraction combinatorics, models, series bounds."""

import itertools
import math

import numpy as np
import pytest

from wickspec.profiles import FunctionProfile
from wickspec.wick import (TwoPointModel, WickCoefficients,
                           cauchy_schwarz_check, check_coefficient_conditions,
                           contraction_multiplicity,
                           enumerate_contraction_matrices, majorant_bound_check,
                           pair_matrix, product_bound_check, spectral_fft_demo,
                           theorem10_indicator_check, truncated_npoint,
                           tube_points, two_point_series, verify_growth_pair,
                           wick_pairing_sum)

from oracles import matching_contraction_counts


class TestPairingOracle:
    def test_two_vertices_single_contraction(self):
        w = np.array([[0.0, 3.7], [3.7, 0.0]])
        assert wick_pairing_sum((1, 1), w) == pytest.approx(3.7)

    def test_two_vertices_double_contraction(self):
        # matchings of {a1,a2} x {b1,b2}: exactly 2, giving 2 w^2
        w = np.array([[0.0, 2.0], [2.0, 0.0]])
        assert wick_pairing_sum((2, 2), w) == pytest.approx(8.0)

    def test_three_vertices_no_self_contraction(self):
        w = np.zeros((3, 3))
        w[0, 2] = w[2, 0] = 5.0
        w[1, 2] = w[2, 1] = 7.0
        w[0, 1] = w[1, 0] = 11.0
        # degrees (1,1,2): vertex 3's two legs must hit vertices 1 and 2
        assert wick_pairing_sum((1, 1, 2), w) == pytest.approx(2 * 5.0 * 7.0)

    def test_odd_degree_vanishes(self):
        w = np.ones((2, 2))
        assert wick_pairing_sum((1, 2), w) == 0.0

    def test_multiplicities_match_leg_enumeration_exactly(self):
        # integer-exact comparison of the combinatorial factors for all
        # degree vectors with n <= 3 and k_j <= 4
        for n in (2, 3):
            for degrees in itertools.product(range(5), repeat=n):
                if sum(degrees) % 2 == 1 or sum(degrees) == 0:
                    continue
                oracle = matching_contraction_counts(degrees)
                ours = {}
                for kmat in enumerate_contraction_matrices(degrees):
                    key = tuple(sorted((pair, v) for pair, v in kmat.items()
                                       if v > 0))
                    ours[key] = contraction_multiplicity(degrees, kmat)
                oracle = {k: v for k, v in oracle.items() if v > 0}
                assert ours.keys() == oracle.keys(), degrees
                for key in oracle:
                    assert ours[key] == oracle[key], (degrees, key)

    def test_sum_matches_leg_enumeration_on_random_kernels(self):
        rng = np.random.default_rng(5)
        for degrees in ((2, 2), (1, 3, 2), (4, 2, 2)):
            w = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
            w = (w + w.T) / 2.0
            mine = wick_pairing_sum(degrees, w)
            from oracles import matching_expectation
            oracle = matching_expectation(degrees, lambda j, m: w[j, m])
            assert mine == pytest.approx(oracle, rel=1e-12)


class TestCoefficients:
    def test_inverse_factorial_passes_with_one_two(self):
        d = WickCoefficients.inverse_factorial(1.0, k_max=40)
        rep = check_coefficient_conditions(d, candidates=[(1.0, 2.0)])
        assert rep.passed
        assert rep.constants == {"C": 1.0, "H": 2.0}
        assert rep.notes["candidates"]["C=1.0, H=2.0"] is True

    def test_constant_coefficients_fail_trend(self):
        d = WickCoefficients.constant_one(k_max=40)
        rep = check_coefficient_conditions(d)
        assert rep.status == "fail"
        assert rep.witness["condition"] == 3
        trend = rep.witness["trend_tail"]
        assert trend[-1] > trend[0]      # the reported trend grows

    def test_power_06_passes_with_fractional_h(self):
        d = WickCoefficients.inverse_factorial(0.6, k_max=40)
        rep = check_coefficient_conditions(d, candidates=[(1.0, 2.0 ** 0.6)])
        assert rep.passed
        assert rep.notes["candidates"][f"C=1.0, H={2.0 ** 0.6}"] is True

    def test_exact_pair_verifier(self):
        d = WickCoefficients.inverse_factorial(1.0, k_max=30)
        assert verify_growth_pair(d, 1.0, 2.0)
        assert not verify_growth_pair(d, 1.0, 1.1)

    def test_d0_enforced(self):
        with pytest.raises(ValueError):
            WickCoefficients.from_table([2.0, 1.0])


class TestModels:
    @pytest.mark.parametrize("model", [
        TwoPointModel.mock_massless_2d(),
        TwoPointModel.rational(1.0, 1),
        TwoPointModel.positive_frequency_mock(),
    ], ids=["massless", "rational", "posfreq"])
    def test_cauchy_schwarz_domination(self, model):
        rep = cauchy_schwarz_check(model)
        assert rep.passed, rep.witness

    def test_w_holomorphic_on_tube(self):
        from oracles import finite_difference_cr_residual
        model = TwoPointModel.mock_massless_2d()
        for (x0, x1, e0, e1) in ((0.3, 1.0, 0.5, 0.1), (2.0, -1.0, 1.0, 0.3)):
            zeta = np.array([x0 - 1j * e0, x1 - 1j * e1])
            # vary the first complex coordinate only
            res = finite_difference_cr_residual(
                lambda u: model.w(np.array([u, zeta[1]])), zeta[0])
            assert res < 1e-6

    def test_massless_majorant_envelope(self):
        rep = majorant_bound_check(TwoPointModel.mock_massless_2d())
        assert rep.passed
        assert all(math.isfinite(rep.constants[k]) for k in ("C0", "C1", "C2"))

    def test_rational_majorant_envelope(self):
        rep = majorant_bound_check(TwoPointModel.rational(1.0, 1))
        assert rep.passed

    def test_uv_constant_grows_toward_cone_boundary(self):
        model = TwoPointModel.mock_massless_2d()
        c2 = []
        for margin in (0.5, 0.25, 0.1, 0.04):
            rep = majorant_bound_check(model, margin=margin, count=300)
            c2.append(rep.constants["C0"] + rep.constants["C2"])
        assert c2[-1] > c2[0]


class TestSeries:
    def test_exponential_identity(self):
        d = WickCoefficients.inverse_factorial(1.0, k_max=60)
        for w in (0.5, -2.0, 5.0, 3.0 + 4.0j, -1.0 - 2.5j):
            val = two_point_series(d, complex(w), n_max=30)
            assert val == pytest.approx(np.exp(w), abs=1e-10)

    def test_w_zero_gives_identity_term(self):
        d = WickCoefficients.inverse_factorial(1.0)
        assert two_point_series(d, 0.0, 10) == pytest.approx(1.0)

    def test_truncated_npoint_matches_two_vertex_reduction(self):
        d = WickCoefficients.inverse_factorial(1.0, k_max=60)
        w = 0.7 - 0.2j
        pair = np.array([[0.0, w], [w, 0.0]])
        total, tail, sums = truncated_npoint(d, pair, n_max=25)
        assert total == pytest.approx(two_point_series(d, w, 25), rel=1e-12)
        assert tail < 1e-12

    def test_tail_bound_decreases_with_order(self):
        d = WickCoefficients.inverse_factorial(1.0, k_max=80)
        w = 2.0 + 1.0j
        pair = np.array([[0.0, w], [w, 0.0]])
        tails = [truncated_npoint(d, pair, n_max=n)[1] for n in (10, 15,
                                                                 20, 25)]
        assert all(b < a for a, b in zip(tails, tails[1:]))

    def test_wick_symmetry_under_permutation(self):
        d = WickCoefficients.inverse_factorial(1.0, k_max=40)
        rng = np.random.default_rng(2)
        w = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        w = (w + w.T) / 2.0
        np.fill_diagonal(w, 0.0)
        perm = [2, 0, 3, 1]
        w_perm = w[np.ix_(perm, perm)]
        t1 = truncated_npoint(d, w, n_max=6)[0]
        t2 = truncated_npoint(d, w_perm, n_max=6)[0]
        assert t1 == pytest.approx(t2, rel=1e-12)

    def test_four_point_series_on_tube(self):
        model = TwoPointModel.positive_frequency_mock()
        d = WickCoefficients.inverse_factorial(1.0, k_max=40)
        pts = tube_points(2, np.array([0.3, 0.0]),
                          [np.array([0.0, 0.0]), np.array([1.0, 0.5]),
                           np.array([-0.5, 0.2]), np.array([0.3, -0.1])])
        vals = pair_matrix(model, pts)
        total, tail, _ = truncated_npoint(d, vals, n_max=8)
        assert np.isfinite(tail)
        assert abs(total) > 0


class TestProductBound:
    def test_empty_contraction(self):
        model = TwoPointModel.mock_massless_2d()
        rep = product_bound_check(model, {}, n=1, count=40)
        assert rep.passed

    def test_single_cross_factor_reduces_to_envelope(self):
        model = TwoPointModel.mock_massless_2d()
        rep = product_bound_check(model, {(0, 1): 1}, n=1, count=80)
        assert rep.passed

    def test_cubed_factor(self):
        model = TwoPointModel.mock_massless_2d()
        rep = product_bound_check(model, {(0, 1): 3}, n=1, count=80)
        assert rep.passed

    def test_chain_consistency_same_constants(self):
        # envelope constants must make the power bound pass as-is
        model = TwoPointModel.rational(1.0, 1)
        env = majorant_bound_check(model)
        assert env.passed
        rep = product_bound_check(model, {(0, 1): 2}, n=1, count=80,
                                  constants=env.constants)
        assert rep.passed, rep.witness


class TestTheorem10:
    def test_reference_scenario_passes(self):
        d = WickCoefficients.inverse_factorial(1.0)
        model = TwoPointModel.mock_massless_2d()
        rep = theorem10_indicator_check(
            d, model, FunctionProfile.quadratic(), FunctionProfile.power(0.5),
            l_list=(1.0, 10.0), eps_list=(0.5, 0.1))
        assert rep.passed
        assert len(rep.constants) == 8    # 2 L x 2 eps x 2 sides

    def test_l_zero_trivial(self):
        d = WickCoefficients.inverse_factorial(1.0)
        model = TwoPointModel.mock_massless_2d()
        rep = theorem10_indicator_check(
            d, model, FunctionProfile.quadratic(), FunctionProfile.power(0.5),
            l_list=(0.0,), eps_list=(0.5,))
        assert rep.passed
        assert rep.constants["L=0.0,eps=0.5:log_C_infrared"] <= \
            math.log(1.0) + 1e-9


class TestSpectralDemo:
    def test_free_field_mass_localizes(self):
        # free term only: d_1 = 1, the rest zero (d_0 = 1 is structural)
        model = TwoPointModel.rational(1.0, 1)
        free = WickCoefficients.from_table([1.0, 1.0])
        out = spectral_fft_demo(model, free, lattice_sizes=(128, 256, 512),
                                n_max=1)
        assert out["strictly_decreasing"], out["fractions"]

    def test_series_mass_localizes(self):
        model = TwoPointModel.rational(1.0, 1)
        d = WickCoefficients.inverse_factorial(1.0, k_max=40)
        out = spectral_fft_demo(model, d, lattice_sizes=(128, 256, 512),
                                n_max=10)
        assert out["strictly_decreasing"], out["fractions"]

    def test_pure_kernel_localizes(self):
        out = spectral_fft_demo(TwoPointModel.rational(1.0, 1), None,
                                lattice_sizes=(128, 256))
        assert out["strictly_decreasing"], out["fractions"]
