"""Scenario files: named inputs plus an ordered list of checks.

A scenario is a JSON document (schema shipped as scenario.schema.json)
declaring profiles, cones, coefficients, two-point models and test
functions by name, and invoking registered checks against them.  Running
one produces a deterministic report bundle: identical scenario + seed
gives byte-identical JSON (timestamps live in a separate metadata file),
CSV tables for the trace-producing checks, and figures when the
"png" format is enabled.
"""

from __future__ import annotations

import json
import math
import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from . import __version__
from .cones import Cone, angular_separation, contains, distance_to_cone, \
    dual_contains, is_compact_subcone
from .functions import (Constant, CoshDecay, Gaussian, Modulated,
                        PolyGaussian, TestFunction)
from .profiles import (FunctionProfile, check_doubling,
                       check_nonquasianalytic, check_precedes,
                       conjugate_profile, convex_conjugate, lemma2_margin)
from .report import FAIL, PASS, UNDETERMINED, BoundReport, _jsonable
from .sequences import (IndicatorFunction, defining_sequence, lemma1_check,
                        lemma3_sandwich, check_regularity)
from .spaces import (SpaceSpec, check_membership_entire, cone_decompose,
                     estimate_norm, riemann_approximate)
from .wick import (TwoPointModel, WickCoefficients,
                   check_coefficient_conditions, majorant_bound_check,
                   spectral_fft_demo, theorem10_indicator_check,
                   two_point_series)
from .laplace import (ConeDensity, bound23_check, convolution_bound_check,
                      gamma_constant, gamma_inverse_power, gamma_log_inverse,
                      theorem9_gamma_check)

SCHEMA_VERSION = 1
OUTPUT_DIR_ENV = "WICKSPEC_OUTPUT_DIR"


class ScenarioError(ValueError):
    pass


@dataclass
class Scenario:
    seed: int
    profiles: dict[str, FunctionProfile]
    cones: dict[str, Cone]
    coefficients: dict[str, WickCoefficients]
    models: dict[str, TwoPointModel]
    functions: dict[str, TestFunction]
    checks: list[dict]
    output: dict
    raw: dict = field(default_factory=dict)

    # -- construction --------------------------------------------------------

    @staticmethod
    def from_file(path) -> "Scenario":
        with open(path) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ScenarioError(f"scenario parse error: {exc}") from exc
        return Scenario.from_dict(doc)

    @staticmethod
    def from_dict(doc: dict) -> "Scenario":
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise ScenarioError(
                f"unsupported schema_version {doc.get('schema_version')!r} "
                f"(expected {SCHEMA_VERSION})")
        seed = int(doc.get("seed", 0))
        profiles = {name: FunctionProfile.from_dict(spec)
                    for name, spec in (doc.get("profiles") or {}).items()}
        cones = {name: _cone_from_spec(spec)
                 for name, spec in (doc.get("cones") or {}).items()}
        coefficients = {name: _coefficients_from_spec(spec)
                        for name, spec in (doc.get("coefficients") or {}).items()}
        models = {name: _model_from_spec(spec)
                  for name, spec in (doc.get("models") or {}).items()}
        functions = {name: _function_from_spec(spec)
                     for name, spec in (doc.get("functions") or {}).items()}
        checks = list(doc.get("checks") or [])
        seen = set()
        for check in checks:
            if "id" not in check or "op" not in check:
                raise ScenarioError(f"check needs 'id' and 'op': {check}")
            if check["id"] in seen:
                raise ScenarioError(f"duplicate check id {check['id']!r}")
            seen.add(check["id"])
            if check["op"] not in CHECK_REGISTRY:
                raise ScenarioError(f"unknown op {check['op']!r} "
                                    f"in check {check['id']!r}")
        return Scenario(seed=seed, profiles=profiles, cones=cones,
                        coefficients=coefficients, models=models,
                        functions=functions, checks=checks,
                        output=dict(doc.get("output") or {}), raw=doc)

    # -- reference resolution -------------------------------------------------

    def profile(self, name: str) -> FunctionProfile:
        return self._lookup(self.profiles, name, "profile")

    def cone(self, name: str) -> Cone:
        return self._lookup(self.cones, name, "cone")

    def coeffs(self, name: str) -> WickCoefficients:
        return self._lookup(self.coefficients, name, "coefficients")

    def model(self, name: str) -> TwoPointModel:
        return self._lookup(self.models, name, "model")

    def function(self, name: str) -> TestFunction:
        return self._lookup(self.functions, name, "function")

    @staticmethod
    def _lookup(table: dict, name: str, kind: str):
        if name not in table:
            raise ScenarioError(f"unresolved {kind} reference {name!r}")
        return table[name]


# ---------------------------------------------------------------------------
# spec parsers for the non-profile sections
# ---------------------------------------------------------------------------

def _cone_from_spec(spec: dict) -> Cone:
    variant = spec["variant"]
    if variant == "lorentz-forward":
        return Cone.lorentz_forward(spec["dim"])
    if variant == "lorentz-backward":
        return Cone.lorentz_backward(spec["dim"])
    if variant == "circular":
        return Cone.circular(spec["axis"], spec["half_angle"])
    if variant == "half-space":
        return Cone.half_space(spec["normal"])
    if variant == "ray":
        return Cone.ray(spec["direction"])
    if variant == "polyhedral":
        if "generators" in spec:
            return Cone.from_generators(spec["generators"])
        return Cone.from_normals(spec["normals"])
    if variant == "spectral":
        return Cone.spectral(spec["n"], spec["d"], spec.get("sign", "-"))
    if variant == "product":
        return Cone.product([_cone_from_spec(s) for s in spec["factors"]])
    if variant == "origin":
        return Cone.origin(spec["dim"])
    if variant == "full-space":
        return Cone.full(spec["dim"])
    raise ScenarioError(f"unknown cone variant {variant!r}")


def _coefficients_from_spec(spec: dict) -> WickCoefficients:
    kind = spec["kind"]
    k_max = int(spec.get("k_max", 200))
    if kind == "inverse-factorial-power":
        return WickCoefficients.inverse_factorial(float(spec.get("sigma", 1.0)),
                                                  k_max)
    if kind == "geometric-damped":
        return WickCoefficients.geometric_damped(float(spec["rho"]),
                                                 float(spec.get("sigma", 1.0)),
                                                 k_max)
    if kind == "table":
        return WickCoefficients.from_table(spec["values"])
    raise ScenarioError(f"unknown coefficient kind {kind!r}")


def _model_from_spec(spec: dict) -> TwoPointModel:
    kind = spec["kind"]
    if kind == "mock-massless-2d":
        return TwoPointModel.mock_massless_2d(float(spec.get("c_maj", 12.0)))
    if kind == "rational":
        return TwoPointModel.rational(float(spec.get("c", 1.0)),
                                      int(spec.get("m", 1)))
    if kind == "positive-frequency-mock":
        return TwoPointModel.positive_frequency_mock(
            tuple(spec.get("center", (3.0, 0.0))),
            float(spec.get("width", 0.6)), int(spec.get("modes", 5)))
    raise ScenarioError(f"unknown model kind {kind!r}")


def _function_from_spec(spec: dict) -> TestFunction:
    kind = spec["kind"]
    if kind == "gaussian":
        return Gaussian(float(spec.get("c", 1.0)), int(spec.get("dim", 1)))
    if kind == "cosh-decay":
        return CoshDecay(int(spec.get("dim", 1)))
    if kind == "modulated":
        return Modulated(spec["p0"], _function_from_spec(spec["base"]))
    if kind == "poly-gaussian":
        return PolyGaussian(spec["kappa"], float(spec.get("c", 1.0)))
    if kind == "constant":
        return Constant(complex(spec.get("value", 1.0)),
                        int(spec.get("dim", 1)))
    raise ScenarioError(f"unknown function kind {kind!r}")


# ---------------------------------------------------------------------------
# check registry
# ---------------------------------------------------------------------------

CHECK_REGISTRY: dict[str, Callable] = {}


def register(op: str):
    def wrap(fn):
        CHECK_REGISTRY[op] = fn
        return fn
    return wrap


@register("conjugate-involution")
def _run_involution(sc: Scenario, check: dict):
    alpha = sc.profile(check["alpha"])
    rel_tol = float(check.get("rel_tol", 1e-6))
    grid = np.geomspace(float(check.get("s_lo", 1e-2)),
                        float(check.get("s_hi", 1e3)),
                        int(check.get("points", 512)))
    star = conjugate_profile(alpha)
    worst, worst_s = 0.0, None
    trace = []
    for s in grid:
        target = alpha.value(float(s))
        twice = convex_conjugate(star, float(s))
        err = abs(twice - target) / (1.0 + abs(target))
        trace.append((float(s), err))
        if err > worst:
            worst, worst_s = err, float(s)
    sub_ok = True
    for s in grid:
        one = convex_conjugate(alpha, float(s))
        two = convex_conjugate(alpha, 2.0 * float(s))
        if math.isfinite(two) and 2.0 * one > two + 1e-9 * (1 + abs(two)):
            sub_ok = False
            worst_s = float(s)
    ok = worst <= rel_tol and sub_ok
    return BoundReport(
        check["id"], PASS if ok else FAIL,
        constants={"max_rel_error": worst},
        witness=None if ok else {"s": worst_s, "subadditivity_ok": sub_ok},
        budgets={"points": len(grid)}), {"involution_error": trace}


@register("check-doubling")
def _run_doubling(sc: Scenario, check: dict):
    beta = sc.profile(check["beta"])
    h, witness = check_doubling(beta, float(check.get("h_max", 64.0)))
    ok = h is not None
    return BoundReport(check["id"], PASS if ok else FAIL,
                       constants={"h": h} if ok else {},
                       witness=None if ok else {"s": witness},
                       budgets={"h_max": check.get("h_max", 64.0)}), None


@register("nonquasianalytic")
def _run_nqa(sc: Scenario, check: dict):
    beta = sc.profile(check["beta"])
    status, value = check_nonquasianalytic(beta)
    expected = check.get("expected")       # "finite" | "divergent"
    if expected is None:
        ok = status != "undetermined"
    else:
        ok = status == expected
    report_status = PASS if ok else (UNDETERMINED if status == "undetermined"
                                     else FAIL)
    return BoundReport(check["id"], report_status,
                       constants={"integral": value,
                                  "classification_matches": ok},
                       witness=None if report_status != FAIL else
                       {"classified": status, "expected": expected},
                       budgets={"status": status}), None


@register("precedes")
def _run_precedes(sc: Scenario, check: dict):
    pair, witness = check_precedes(sc.profile(check["alpha1"]),
                                   sc.profile(check["alpha"]))
    expect = check.get("expected", "holds")
    holds = pair is not None
    ok = holds == (expect == "holds")
    constants = {"C": pair[0], "H": pair[1]} if holds else {}
    return BoundReport(check["id"], PASS if ok else FAIL,
                       constants=constants,
                       witness=None if ok else {"s": witness,
                                                "expected": expect},
                       budgets={"grid": 512}), None


@register("lemma2-margin")
def _run_lemma2(sc: Scenario, check: dict):
    c_eps, witness = lemma2_margin(sc.profile(check["beta"]),
                                   float(check["eps"]))
    ok = c_eps is not None
    return BoundReport(check["id"], PASS if ok else FAIL,
                       constants={"C_eps": c_eps} if ok else {},
                       witness=None if ok else {"s": witness},
                       budgets={"eps": check["eps"]}), None


@register("lemma1")
def _run_lemma1(sc: Scenario, check: dict):
    alpha = sc.profile(check["alpha"])
    k_lo, k_hi = check.get("k_range", [0, 40])
    tol = float(check.get("tol", 1e-6))
    trace = []
    worst, worst_k = 0.0, None
    for k in range(int(k_lo), int(k_hi) + 1):
        diff = lemma1_check(alpha, k)
        trace.append((k, diff))
        if diff > worst:
            worst, worst_k = diff, k
    ok = worst <= tol
    return BoundReport(check["id"], PASS if ok else FAIL,
                       constants={"max_log_difference": worst},
                       witness=None if ok else {"k": worst_k},
                       budgets={"k_range": [k_lo, k_hi]}), \
        {"lemma1_difference": trace}


@register("defining-sequence")
def _run_sequence(sc: Scenario, check: dict):
    seq = defining_sequence(sc.profile(check["profile"]), check["role"],
                            int(check.get("k_max", 60)))
    trace = [(k, float(v)) for k, v in enumerate(seq.values)]
    return BoundReport(check["id"], PASS,
                       constants={"k_max": seq.k_max},
                       budgets={"role": check["role"]}), \
        {"log_sequence": trace}


@register("lemma3-sandwich")
def _run_lemma3(sc: Scenario, check: dict):
    rep = lemma3_sandwich(sc.profile(check["beta"]), float(check["eps"]))
    rep.check_id = check["id"]
    return rep, None


@register("regularity")
def _run_regularity(sc: Scenario, check: dict):
    seq = defining_sequence(sc.profile(check["profile"]), check["role"],
                            int(check.get("k_max", 120)))
    pair, witness = check_regularity(seq)
    ok = pair is not None
    return BoundReport(check["id"], PASS if ok else FAIL,
                       constants={"C": pair[0], "h": pair[1]} if ok else {},
                       witness=None if ok else {"pair": list(witness)},
                       budgets={"k_max": seq.k_max}), None


@register("indicator-trace")
def _run_indicator(sc: Scenario, check: dict):
    seq = defining_sequence(sc.profile(check["profile"]),
                            check.get("role", "b-from-beta"),
                            int(check.get("k_max", 200)))
    ind = IndicatorFunction(seq)
    grid = np.geomspace(float(check.get("s_lo", 1e-3)),
                        float(check.get("s_hi", 1e4)),
                        int(check.get("points", 256)))
    trace = [(float(s), ind.log_eval(float(s))) for s in grid]
    return BoundReport(check["id"], PASS,
                       constants={"k_max": seq.k_max},
                       budgets={"points": len(grid)}), \
        {"indicator_trace": trace}


@register("cone-contains")
def _run_contains(sc: Scenario, check: dict):
    cone = sc.cone(check["cone"])
    point = np.asarray(check["point"], dtype=float)
    got = contains(cone, point)
    expected = check.get("expected")
    ok = got == expected if expected is not None else True
    return BoundReport(check["id"], PASS if ok else FAIL,
                       constants={"contains": got},
                       witness=None if ok else {"point": point.tolist()},
                       budgets={"norm": "euclidean"}), None


@register("cone-distance")
def _run_distance(sc: Scenario, check: dict):
    cone = sc.cone(check["cone"])
    point = np.asarray(check["point"], dtype=float)
    got = distance_to_cone(cone, point)
    expected = check.get("expected")
    tol = float(check.get("tol", 1e-9))
    ok = expected is None or abs(got - expected) <= tol * (1 + abs(expected))
    return BoundReport(check["id"], PASS if ok else FAIL,
                       constants={"distance": got},
                       witness=None if ok else {"point": point.tolist(),
                                                "expected": expected},
                       budgets={"norm": "euclidean"}), None


@register("cone-self-dual")
def _run_self_dual(sc: Scenario, check: dict):
    cone = sc.cone(check["cone"])
    count = int(check.get("samples", 10_000))
    rng = np.random.default_rng(sc.seed)
    pts = rng.normal(size=(count, cone.dim))
    mismatches = sum(
        1 for p in pts
        if dual_contains(cone, p) != contains(cone, p,
                                              tol=1e-9 * np.linalg.norm(p)))
    ok = mismatches == 0
    return BoundReport(check["id"], PASS if ok else FAIL,
                       constants={"mismatches": mismatches},
                       witness=None if ok else {"count": mismatches},
                       budgets={"samples": count, "seed": sc.seed}), None


@register("angular-separation")
def _run_separation(sc: Scenario, check: dict):
    theta = angular_separation(sc.cone(check["cone1"]),
                               sc.cone(check["cone2"]),
                               samples=int(check.get("samples", 10_000)),
                               seed=sc.seed)
    expected = check.get("expected")
    tol = float(check.get("tol", 1e-6))
    ok = expected is None or abs(theta - expected) <= tol
    return BoundReport(check["id"], PASS if ok else FAIL,
                       constants={"theta": theta},
                       witness=None if ok else {"expected": expected},
                       budgets={"samples": check.get("samples", 10_000),
                                "seed": sc.seed}), None


@register("compact-subcone")
def _run_subcone(sc: Scenario, check: dict):
    got = is_compact_subcone(sc.cone(check["sub"]), sc.cone(check["big"]),
                             samples=int(check.get("samples", 10_000)),
                             seed=sc.seed)
    expected = check.get("expected", True)
    ok = got == expected
    return BoundReport(check["id"], PASS if ok else FAIL,
                       constants={"compact": got},
                       witness=None if ok else {"expected": expected},
                       budgets={"samples": check.get("samples", 10_000),
                                "seed": sc.seed}), None


@register("membership-entire")
def _run_membership(sc: Scenario, check: dict):
    spec = SpaceSpec(sc.profile(check["alpha"]), sc.profile(check["beta"]),
                     sc.cone(check["cone"]) if "cone" in check else None,
                     dim=int(check.get("dim", 1)))
    rep = check_membership_entire(sc.function(check["function"]), spec)
    expected = check.get("expected", "member")
    ok = rep.passed == (expected == "member")
    out = BoundReport(check["id"], PASS if ok else FAIL,
                      constants=rep.constants,
                      witness=None if ok else (rep.witness or
                                               {"expected": expected}),
                      budgets=rep.budgets or {"lattice": "default"})
    return out, None


@register("estimate-norm")
def _run_norm(sc: Scenario, check: dict):
    spec = SpaceSpec(sc.profile(check["alpha"]), sc.profile(check["beta"]),
                     sc.cone(check["cone"]) if "cone" in check else None,
                     dim=int(check.get("dim", 1)))
    rep = estimate_norm(sc.function(check["function"]), spec,
                        float(check["A"]), float(check["B"]))
    rep.check_id = check["id"]
    return rep, None


@register("cone-decompose")
def _run_decompose(sc: Scenario, check: dict):
    spec = SpaceSpec(sc.profile(check["alpha"]), sc.profile(check["beta"]),
                     dim=1)
    g1, g2, rep = cone_decompose(sc.function(check["function"]),
                                 sc.cone(check["k1"]), sc.cone(check["k2"]),
                                 sc.function(check["e0"]), spec)
    g = sc.function(check["function"])
    rng = np.random.default_rng(sc.seed)
    worst = 0.0
    for x, y in rng.normal(size=(int(check.get("identity_samples", 20)), 2)):
        z = np.array([complex(x, y)])
        expected = g.eval(z)
        got = g1.eval(z) + g2.eval(z)
        worst = max(worst, abs(got - expected) / (1.0 + abs(expected)))
    ok = rep.passed and worst <= float(check.get("identity_tol", 1e-12))
    out = BoundReport(check["id"], PASS if ok else FAIL,
                      constants=dict(rep.constants,
                                     identity_error=worst),
                      witness=None if ok else {"identity_error": worst},
                      budgets=rep.budgets, notes=rep.notes)
    return out, None


@register("riemann-trace")
def _run_riemann(sc: Scenario, check: dict):
    spec = SpaceSpec(sc.profile(check["alpha"]), sc.profile(check["beta"]),
                     dim=1)
    _, trace = riemann_approximate(sc.function(check["function"]),
                                   sc.function(check["e0"]),
                                   check.get("nus", [2, 4, 8, 16]), spec)
    errs = [t["log_error"] for t in trace]
    ok = all(b <= a + 1e-9 for a, b in zip(errs, errs[1:]))
    return BoundReport(check["id"], PASS if ok else FAIL,
                       constants={"log_errors": errs},
                       witness=None if ok else {"trace": errs},
                       budgets={"nus": check.get("nus", [2, 4, 8, 16])}), \
        {"riemann_error": [(t["nu"], t["log_error"]) for t in trace]}


@register("wick-coefficient-conditions")
def _run_coeffs(sc: Scenario, check: dict):
    candidates = [tuple(c) for c in check.get("candidates", [])]
    rep = check_coefficient_conditions(sc.coeffs(check["coefficients"]),
                                       candidates=candidates)
    expected = check.get("expected", "pass")
    ok = rep.passed == (expected == "pass")
    out = BoundReport(check["id"], PASS if ok else FAIL,
                      constants=rep.constants,
                      witness=None if ok else (rep.witness or
                                               {"expected": expected}),
                      budgets=rep.budgets or {}, notes=rep.notes)
    return out, None


@register("exponential-identity")
def _run_exp_identity(sc: Scenario, check: dict):
    coeffs = sc.coeffs(check["coefficients"])
    n_max = int(check.get("n_max", 30))
    tol = float(check.get("tol", 1e-10))
    worst, worst_w = 0.0, None
    for re in np.linspace(-5.0, 5.0, 9):
        for im in np.linspace(-5.0, 5.0, 9):
            w = complex(re, im)
            if abs(w) > 5.0:
                continue
            got = two_point_series(coeffs, w, n_max)
            err = abs(got - np.exp(w))
            if err > worst:
                worst, worst_w = err, w
    ok = worst <= tol
    return BoundReport(check["id"], PASS if ok else FAIL,
                       constants={"max_abs_error": worst},
                       witness=None if ok else {"w": [worst_w.real,
                                                      worst_w.imag]},
                       budgets={"n_max": n_max}), None


@register("majorant-envelope")
def _run_majorant(sc: Scenario, check: dict):
    rep = majorant_bound_check(sc.model(check["model"]),
                               margin=float(check.get("margin", 0.25)),
                               seed=sc.seed)
    rep.check_id = check["id"]
    return rep, None


@register("theorem10-indicator")
def _run_theorem10(sc: Scenario, check: dict):
    rep = theorem10_indicator_check(
        sc.coeffs(check["coefficients"]), sc.model(check["model"]),
        sc.profile(check["alpha"]), sc.profile(check["beta"]),
        l_list=tuple(check.get("L_list", (1.0, 10.0))),
        eps_list=tuple(check.get("eps_list", (0.5, 0.1))))
    rep.check_id = check["id"]
    return rep, None


@register("spectral-fft")
def _run_fft(sc: Scenario, check: dict):
    coeffs = sc.coeffs(check["coefficients"]) if "coefficients" in check \
        else None
    out = spectral_fft_demo(sc.model(check["model"]), coeffs,
                            lattice_sizes=tuple(check.get(
                                "lattice_sizes", (256, 512, 1024))),
                            n_max=int(check.get("n_max", 10)))
    ok = out["strictly_decreasing"]
    return BoundReport(check["id"], PASS if ok else FAIL,
                       constants={"fractions": out["fractions"]},
                       witness=None if ok else {"fractions": out["fractions"]},
                       budgets={"lattice_sizes": out["lattice_sizes"],
                                "eps": out["eps"], "cone": out["cone"]}), \
        {"spectral_mass": list(zip(out["lattice_sizes"], out["fractions"]))}


@register("laplace-closed-form")
def _run_laplace_cf(sc: Scenario, check: dict):
    rate = float(check.get("rate", 1.0))
    u = ConeDensity.exponential(rate)
    count = int(check.get("points", 100))
    rng = np.random.default_rng(sc.seed)
    worst = 0.0
    for _ in range(count):
        x = float(rng.uniform(-10.0, 10.0))
        y = float(rng.uniform(0.1, 5.0))
        z = complex(x, y)
        got = u.transform(np.array([z]))
        closed = rate / (rate - 1j * z) if rate != 1.0 else 1.0 / (1.0 - 1j * z)
        worst = max(worst, abs(got - closed) / abs(closed))
    tol = float(check.get("rel_tol", 1e-8))
    ok = worst <= tol
    return BoundReport(check["id"], PASS if ok else FAIL,
                       constants={"max_rel_error": worst},
                       witness=None if ok else {"rel_error": worst},
                       budgets={"points": count, "seed": sc.seed}), None


@register("bound23")
def _run_bound23(sc: Scenario, check: dict):
    rate = float(check.get("rate", 1.0))
    u = ConeDensity.exponential(rate)
    rep = bound23_check(lambda z: u.transform(z),
                        sc.profile(check["alpha"]), sc.profile(check["beta"]),
                        sc.cone(check["cone"]), float(check.get("eps", 0.5)),
                        samples=int(check.get("samples", 200)), seed=sc.seed)
    rep.check_id = check["id"]
    return rep, None


@register("convolution-bound")
def _run_convolution(sc: Scenario, check: dict):
    u = ConeDensity.exponential(float(check.get("rate", 1.0)))
    rep = convolution_bound_check(u, sc.function(check["function"]),
                                  sc.profile(check["beta"]),
                                  float(check.get("eps", 0.5)))
    rep.check_id = check["id"]
    return rep, None


@register("theorem9")
def _run_theorem9(sc: Scenario, check: dict):
    gammas = {"log-inverse": gamma_log_inverse(),
              "inverse-power": gamma_inverse_power(
                  float(check.get("m", 1.0))),
              "constant": gamma_constant(float(check.get("c", 1.0)))}
    rep = theorem9_gamma_check(gammas[check.get("gamma", "log-inverse")],
                               sc.profile(check["beta"]))
    rep.check_id = check["id"]
    return rep, None


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------

def run_scenario(path, output_dir: Optional[str] = None,
                 make_plots: Optional[bool] = None) -> int:
    """Execute a scenario file; returns the process exit status.

    Writes report.json (deterministic), run_meta.json (timestamps), CSV
    tables for trace-producing checks, and figures under figures/ when
    the scenario (or caller) enables the png format.
    """
    sc = Scenario.from_file(path)
    out_dir = Path(output_dir
                   or sc.output.get("directory")
                   or os.environ.get(OUTPUT_DIR_ENV, "wickspec-out"))
    out_dir.mkdir(parents=True, exist_ok=True)
    formats = set(sc.output.get("formats", ["json", "csv", "png"]))
    if make_plots is not None:
        formats.discard("png")
        if make_plots:
            formats.add("png")

    results = []
    tables: dict[str, dict] = {}
    for check in sc.checks:
        runner = CHECK_REGISTRY[check["op"]]
        report, trace = runner(sc, check)
        results.append(report)
        if trace:
            tables[check["id"]] = trace

    bundle = {
        "schema_version": SCHEMA_VERSION,
        "seed": sc.seed,
        "results": [r.to_dict() for r in results],
        "summary": {
            "pass": sum(r.status == PASS for r in results),
            "fail": sum(r.status == FAIL for r in results),
            "undetermined": sum(r.status == UNDETERMINED for r in results),
        },
    }
    if "json" in formats:
        (out_dir / "report.json").write_text(
            json.dumps(_jsonable(bundle), sort_keys=True, indent=2) + "\n")
        (out_dir / "run_meta.json").write_text(json.dumps({
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"),
            "version": __version__,
            "scenario_path": str(path),
        }, indent=2) + "\n")
    if "csv" in formats:
        for check_id, trace in tables.items():
            for label, rows in trace.items():
                csv_path = out_dir / f"{check_id}.{label}.csv"
                with open(csv_path, "w") as fh:
                    fh.write("x,value\n")
                    for x, v in rows:
                        fh.write(f"{x!r},{v!r}\n")
    if "png" in formats and tables:
        from .plots import render_tables
        render_tables(tables, out_dir / "figures")
    return 0 if bundle["summary"]["fail"] == 0 else 1
