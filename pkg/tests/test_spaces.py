"""Function catalog and space-membership machinery."""

import math

import numpy as np
import pytest

from wickspec.cones import Cone
from wickspec.functions import (Constant, CoshDecay, Gaussian, Modulated,
                                PolyGaussian, RiemannMollifier, Scaled,
                                TensorProduct, cauchy_derivative,
                                cauchy_riemann_residual, validate_entire)
from wickspec.profiles import FunctionProfile
from wickspec.sequences import defining_sequence
from wickspec.spaces import (SpaceSpec, check_membership_entire,
                             check_membership_smooth, cone_decompose,
                             estimate_norm, normalize_unit_mass,
                             riemann_approximate, theorem1_crosscheck)

ALPHA = FunctionProfile.quadratic()
BETA = FunctionProfile.power(0.5)
SPEC1 = SpaceSpec(ALPHA, BETA, dim=1)


class TestCatalog:
    def test_gaussian_modulus_identity(self):
        g = Gaussian(1.0, 1)
        for p, q in ((0.3, 0.7), (2.0, -1.5), (-4.0, 0.1)):
            val = abs(g(np.array([p + 1j * q])))
            assert val == pytest.approx(math.exp(q * q - p * p), rel=1e-12)

    def test_cosh_decay_strip_majorant(self):
        # |e^{-4 cosh z}| <= e^{-e^{|x|}} on the strip |y| < pi/3 (n = 1)
        g = CoshDecay(1)
        for x in (0.0, 1.0, 3.0, -2.5):
            for y in (0.0, 0.9, -1.0):
                val = abs(g(np.array([x + 1j * y])))
                assert val <= math.exp(-math.exp(abs(x))) * 1.0001

    def test_entire_validation(self):
        for f in (Gaussian(1.0, 1), CoshDecay(1),
                  Modulated([3.0], Gaussian(0.5, 1)),
                  PolyGaussian((2,), 1.0)):
            assert validate_entire(f)

    def test_cr_residual_catches_nonanalytic(self):
        class AbsSquare(Gaussian):
            def eval(self, z):
                return complex(np.sum(np.abs(z) ** 2))

        bad = AbsSquare(1.0, 1)
        res = max(cauchy_riemann_residual(bad, np.array([0.7 + 0.4j])),
                  cauchy_riemann_residual(bad, np.array([1.1 - 0.2j])))
        assert res > 1e-3

    def test_products_factorize(self):
        g2 = TensorProduct([Gaussian(1.0, 1), Gaussian(2.0, 1)])
        z = np.array([0.5 + 0.2j, -1.0 + 0.3j])
        expected = (Gaussian(1.0, 1)(z[:1]) * Gaussian(2.0, 1)(z[1:]))
        assert g2(z) == pytest.approx(expected, rel=1e-14)

    def test_eval_many_matches_eval(self):
        g = Modulated([1.5], Gaussian(1.0, 1)) - Scaled(0.3, Gaussian(2.0, 1))
        zs = np.array([[0.1 + 0.2j], [1.0 - 0.5j], [-2.0 + 0.0j]])
        many = g.eval_many(zs)
        for z, v in zip(zs, many):
            assert v == pytest.approx(g.eval(z), rel=1e-13)

    def test_cauchy_derivative_of_gaussian(self):
        # d^2/dz^2 e^{-z^2} = (4z^2 - 2) e^{-z^2}
        g = Gaussian(1.0, 1)
        for p in (0.0, 0.7, -1.3):
            d2 = cauchy_derivative(g, np.array([p]), (2,), radius=1.0)
            expected = (4 * p * p - 2.0) * math.exp(-p * p)
            assert d2 == pytest.approx(expected, rel=1e-8, abs=1e-10)

    def test_cauchy_derivative_2d(self):
        g = TensorProduct([Gaussian(1.0, 1), Gaussian(1.0, 1)])
        d = cauchy_derivative(g, np.array([0.5, 0.0]), (1, 2), radius=1.0)
        expected = (-2 * 0.5) * math.exp(-0.25) * (-2.0)
        assert d == pytest.approx(expected, rel=1e-9)


class TestEstimateNorm:
    def test_zero_function(self):
        rep = estimate_norm(Scaled(0.0, Gaussian(1.0, 1)), SPEC1, 2.0, 1.0)
        assert rep.passed
        assert rep.constants["norm"] == 0.0

    def test_homogeneity(self):
        base = estimate_norm(Gaussian(1.0, 1), SPEC1, 2.0, 1.0)
        scaled = estimate_norm(Scaled(3.5, Gaussian(1.0, 1)), SPEC1, 2.0, 1.0)
        assert scaled.constants["norm"] == pytest.approx(
            3.5 * base.constants["norm"], rel=1e-12)

    def test_gaussian_norm_matches_grid_oracle(self):
        # weight e^{q^2-p^2-4q^2+sqrt(p)}: dense-grid supremum oracle
        rep = estimate_norm(Gaussian(1.0, 1), SPEC1, 2.0, 1.0)
        assert rep.passed
        p = np.linspace(-30, 30, 4001)
        q = np.linspace(-30, 30, 4001)
        lp = -p * p + np.sqrt(np.abs(p))
        lq = q * q - 4.0 * q * q
        oracle = math.exp(lp.max() + lq.max())
        assert rep.constants["norm"] == pytest.approx(oracle, rel=1e-3)

    def test_monotone_in_constants(self):
        small = estimate_norm(Gaussian(1.0, 1), SPEC1, 1.5, 1.0)
        large = estimate_norm(Gaussian(1.0, 1), SPEC1, 3.0, 2.0)
        assert large.constants["norm"] <= small.constants["norm"] * (1 + 1e-9)

    def test_constant_function_fails(self):
        rep = estimate_norm(Constant(1.0, 1), SPEC1, 2.0, 1.0)
        assert rep.status == "fail"
        assert "p" in rep.witness


class TestMembership:
    def test_gaussian_in_quadratic_sqrt_space(self):
        rep = check_membership_entire(Gaussian(1.0, 1), SPEC1)
        assert rep.passed
        assert rep.constants["A"] >= 1.0

    def test_constant_not_member(self):
        rep = check_membership_entire(Constant(1.0, 1), SPEC1)
        assert rep.status == "fail"

    def test_cosh_decay_in_strip_space(self):
        # step alpha (strip analyticity) with exponential-type beta
        spec = SpaceSpec(FunctionProfile.step(1.0),
                         FunctionProfile.exp_minus_one(), dim=1)
        rep = check_membership_entire(CoshDecay(1), spec)
        assert rep.passed

    def test_smooth_route_gaussian(self):
        a_seq = defining_sequence(ALPHA, "a-from-alpha", 12)
        b_seq = defining_sequence(BETA, "b-from-beta", 12)
        rep = check_membership_smooth(Gaussian(1.0, 1), a_seq, b_seq,
                                      kappa_max=8, lambda_max=8)
        assert rep.passed

    def test_smooth_route_rejects_constant(self):
        a_seq = defining_sequence(ALPHA, "a-from-alpha", 12)
        b_seq = defining_sequence(BETA, "b-from-beta", 12)
        rep = check_membership_smooth(Constant(1.0, 1), a_seq, b_seq,
                                      kappa_max=4, lambda_max=6)
        assert rep.status == "fail"

    def test_crosscheck_agreement(self):
        catalog = (Gaussian(1.0, 1), Constant(1.0, 1),
                   Modulated([3.0], Gaussian(1.0, 1)), PolyGaussian((2,), 1.0))
        for g in catalog:
            out = theorem1_crosscheck(g, SPEC1, k_max=12)
            assert out["agree"], (type(g).__name__, out["entire"].status,
                                  out["smooth"].status)

    def test_embedding_constant_chain_bounds_smooth_fit(self):
        # the entire-to-smooth embedding constants 2(A + H/B + eps) and 2B
        # must dominate the lattice-fitted smooth constants on the gaussian
        from wickspec.profiles import check_precedes
        g = Gaussian(1.0, 1)
        entire = check_membership_entire(g, SPEC1)
        assert entire.passed
        pair, _ = check_precedes(BETA, ALPHA)
        a_ent, b_ent = entire.constants["A"], entire.constants["B"]
        chain_a = 2.0 * (a_ent + pair[1] / b_ent + 0.5)
        chain_b = 2.0 * b_ent
        a_seq = defining_sequence(ALPHA, "a-from-alpha", 12)
        b_seq = defining_sequence(BETA, "b-from-beta", 12)
        smooth = check_membership_smooth(g, a_seq, b_seq)
        assert smooth.passed
        assert smooth.constants["A"] <= chain_a
        assert smooth.constants["B"] <= chain_b

    def test_modulated_needs_larger_constants(self):
        # the momentum shift enters the q-growth side: with a capped C the
        # fitted A grows with p0
        mild = check_membership_entire(Modulated([1.0], Gaussian(1.0, 1)),
                                       SPEC1, c_cap=50.0)
        wild = check_membership_entire(Modulated([12.0], Gaussian(1.0, 1)),
                                       SPEC1, c_cap=50.0)
        assert mild.passed and wild.passed
        assert wild.constants["A"] >= mild.constants["A"]


class TestRiemann:
    def test_mollifier_approaches_one_at_origin(self):
        e0 = normalize_unit_mass(Gaussian(1.0, 1))
        vals = [abs(RiemannMollifier(e0, nu)(np.array([0.0 + 0j])))
                for nu in (2, 4, 8, 16)]
        errs = [abs(v - 1.0) for v in vals]
        assert errs[-1] < 1e-6
        assert errs[-1] <= errs[0]

    def test_zero_function_stays_zero(self):
        zero = Scaled(0.0, Gaussian(1.0, 1))
        g_nu, trace = riemann_approximate(zero, Gaussian(1.0, 1), [2, 4],
                                          SPEC1)
        assert trace[-1]["log_error"] == -math.inf

    def test_error_trace_decreases(self):
        g = Gaussian(1.0, 1)
        _, trace = riemann_approximate(g, Gaussian(1.0, 1), [2, 4, 8, 16],
                                       SPEC1, a_const=2.0, b_const=2.0)
        errs = [t["log_error"] for t in trace]
        assert errs[-1] < errs[0]
        assert all(e2 <= e1 + 1e-9 for e1, e2 in zip(errs, errs[1:]))


class TestConeDecompose:
    def test_half_line_split(self):
        k1, k2 = Cone.ray([1.0]), Cone.ray([-1.0])
        g = Gaussian(1.0, 1)
        g1, g2, rep = cone_decompose(g, k1, k2, Gaussian(1.0, 1), SPEC1)
        # symmetric bump: e(0) = 1/2
        assert abs(g1(np.array([0.0 + 0j]))) == pytest.approx(0.5, rel=1e-6)
        assert rep.passed

    def test_identity_everywhere_sampled(self):
        # the identity is float-exact only where the smear weight stays
        # within cancellation range (it grows like e^{y^2} off the axis)
        k1, k2 = Cone.ray([1.0]), Cone.ray([-1.0])
        g = Modulated([2.0], Gaussian(1.0, 1))
        g1, g2, _ = cone_decompose(g, k1, k2, Gaussian(1.0, 1), SPEC1)
        rng = np.random.default_rng(0)
        for x, y in rng.normal(size=(25, 2)) * np.array([2.0, 0.7]):
            z = np.array([x + 1j * y])
            total = g1(z) + g2(z)
            assert total == pytest.approx(g(z), rel=1e-12, abs=1e-300)

    def test_e_decays_inside_k1(self):
        k1, k2 = Cone.ray([1.0]), Cone.ray([-1.0])
        g1, g2, rep = cone_decompose(Gaussian(1.0, 1), k1, k2,
                                     Gaussian(1.0, 1), SPEC1)
        assert rep.constants["A_e_decay"] > 0.0
