"""Command-line front end.

Subcommands mirror the library areas (profile, sequence, cone, space,
wick, laplace) plus the scenario runner (run).  Output is JSON on stdout
unless --csv <path> redirects a trace-producing command to a CSV file.

Compound commands take compact profile/function strings: "quadratic",
"power:0.5", "step:1.0", "gaussian:1.0", "constant:1".  The `profile`
subcommand keeps one flag per parameter (--kind power --gamma 0.5).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .cones import (Cone, angular_separation, contains, distance_to_cone,
                    dual_contains, is_compact_subcone)
from .functions import Constant, CoshDecay, Gaussian, PolyGaussian
from .profiles import (FunctionProfile, check_doubling,
                       check_nonquasianalytic, check_precedes,
                       concave_conjugate, convex_conjugate, lemma2_margin)
from .report import _jsonable
from .scenario import run_scenario
from .sequences import (IndicatorFunction, defining_sequence, lemma1_check,
                        lemma3_sandwich, check_regularity)
from .spaces import SpaceSpec, check_membership_entire, estimate_norm
from .wick import (TwoPointModel, WickCoefficients,
                   check_coefficient_conditions, majorant_bound_check,
                   spectral_fft_demo, theorem10_indicator_check,
                   two_point_series, wick_pairing_sum)
from .laplace import (ConeDensity, bound23_check, convolution_bound_check,
                      gamma_constant, gamma_inverse_power, gamma_log_inverse,
                      theorem9_gamma_check)


def _emit(payload, csv_path=None, csv_rows=None, csv_header=("x", "value")):
    if csv_path and csv_rows is not None:
        with open(csv_path, "w") as fh:
            fh.write(",".join(csv_header) + "\n")
            for row in csv_rows:
                fh.write(",".join(repr(v) for v in row) + "\n")
        return
    json.dump(_jsonable(payload), sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def parse_profile(text: str) -> FunctionProfile:
    """Compact syntax: 'quadratic', 'power:0.5', 'step:1.0'."""
    kind, _, param = text.partition(":")
    if kind == "power":
        return FunctionProfile.power(float(param or 1.0))
    if kind == "step":
        return FunctionProfile.step(float(param or 1.0))
    return FunctionProfile(kind)


def parse_function(text: str):
    kind, _, param = text.partition(":")
    if kind == "gaussian":
        return Gaussian(float(param or 1.0), 1)
    if kind == "cosh-decay":
        return CoshDecay(1)
    if kind == "constant":
        return Constant(complex(param or 1.0), 1)
    if kind == "poly-gaussian":
        return PolyGaussian((int(param or 1),), 1.0)
    raise SystemExit(f"unknown function spec {text!r}")


def parse_model(text: str) -> TwoPointModel:
    kind, _, param = text.partition(":")
    if kind == "mock-massless-2d":
        return TwoPointModel.mock_massless_2d()
    if kind == "rational":
        return TwoPointModel.rational(1.0, int(param or 1))
    if kind == "positive-frequency-mock":
        return TwoPointModel.positive_frequency_mock()
    raise SystemExit(f"unknown model spec {text!r}")


def _profile_from_flags(args, suffix="") -> FunctionProfile:
    kind = getattr(args, f"kind{suffix}")
    if kind == "power":
        return FunctionProfile.power(getattr(args, f"gamma{suffix}"))
    if kind == "step":
        return FunctionProfile.step(getattr(args, f"radius{suffix}") or 1.0)
    return FunctionProfile(kind)


def _add_profile_flags(parser, suffix=""):
    parser.add_argument(f"--kind{suffix}", required=True,
                        choices=["power", "quadratic", "linear",
                                 "exp-minus-one", "entropy", "log-growth",
                                 "step"])
    parser.add_argument(f"--gamma{suffix}", type=float, default=1.0)
    parser.add_argument(f"--radius{suffix}", type=float, default=None)


def _cone_from_flags(args, suffix="") -> Cone:
    variant = getattr(args, f"variant{suffix}")
    if variant == "lorentz-forward":
        return Cone.lorentz_forward(getattr(args, f"d{suffix}") or 2)
    if variant == "lorentz-backward":
        return Cone.lorentz_backward(getattr(args, f"d{suffix}") or 2)
    if variant == "spectral":
        return Cone.spectral(getattr(args, f"n{suffix}") or 2,
                             getattr(args, f"d{suffix}") or 2,
                             getattr(args, f"sign{suffix}") or "-")
    if variant == "half-space":
        return Cone.half_space(_vector(getattr(args, f"normal{suffix}")))
    if variant == "ray":
        return Cone.ray(_vector(getattr(args, f"direction{suffix}")))
    if variant == "circular":
        return Cone.circular(_vector(getattr(args, f"axis{suffix}")),
                             getattr(args, f"half_angle{suffix}"))
    if variant == "full-space":
        return Cone.full(getattr(args, f"d{suffix}") or 2)
    if variant == "origin":
        return Cone.origin(getattr(args, f"d{suffix}") or 2)
    raise SystemExit(f"unknown cone variant {variant!r}")


def _add_cone_flags(parser, suffix=""):
    parser.add_argument(f"--variant{suffix}", required=(suffix == ""),
                        choices=["lorentz-forward", "lorentz-backward",
                                 "spectral", "half-space", "ray", "circular",
                                 "full-space", "origin"])
    parser.add_argument(f"--n{suffix}", type=int, default=None)
    parser.add_argument(f"--d{suffix}", type=int, default=None)
    parser.add_argument(f"--sign{suffix}", choices=["+", "-"], default="-")
    parser.add_argument(f"--normal{suffix}", default=None)
    parser.add_argument(f"--direction{suffix}", default=None)
    parser.add_argument(f"--axis{suffix}", default=None)
    parser.add_argument(f"--half-angle{suffix}", dest=f"half_angle{suffix}",
                        type=float, default=None)


def _vector(text):
    if text is None:
        raise SystemExit("missing vector flag")
    return [float(v) for v in str(text).replace(";", ",").split(",") if v]


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="wickspec",
                                  description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="group", required=True)

    # profile ----------------------------------------------------------------
    prof = sub.add_parser("profile", help="scale-function calculus")
    psub = prof.add_subparsers(dest="cmd", required=True)

    p = psub.add_parser("conjugate")
    _add_profile_flags(p)
    p.add_argument("--r", type=float, required=True)

    p = psub.add_parser("concave-conjugate")
    _add_profile_flags(p)
    p.add_argument("--t", type=float, required=True)

    p = psub.add_parser("doubling")
    _add_profile_flags(p)
    p.add_argument("--h-max", type=float, default=64.0)

    p = psub.add_parser("nonquasianalytic")
    _add_profile_flags(p)

    p = psub.add_parser("precedes")
    _add_profile_flags(p)
    _add_profile_flags(p, suffix="2")

    p = psub.add_parser("lemma2")
    _add_profile_flags(p)
    p.add_argument("--eps", type=float, required=True)

    # sequence ----------------------------------------------------------------
    seq = sub.add_parser("sequence", help="defining sequences and indicators")
    ssub = seq.add_subparsers(dest="cmd", required=True)

    p = ssub.add_parser("defining")
    _add_profile_flags(p)
    p.add_argument("--role", required=True,
                   choices=["a-from-alpha", "b-from-beta"])
    p.add_argument("--k-max", type=int, default=60)
    p.add_argument("--csv", default=None)

    p = ssub.add_parser("lemma1")
    _add_profile_flags(p)
    p.add_argument("--k", type=int, required=True)

    p = ssub.add_parser("lemma3")
    _add_profile_flags(p)
    p.add_argument("--eps", type=float, required=True)

    p = ssub.add_parser("regularity")
    _add_profile_flags(p)
    p.add_argument("--role", required=True,
                   choices=["a-from-alpha", "b-from-beta"])
    p.add_argument("--k-max", type=int, default=120)

    p = ssub.add_parser("indicator")
    _add_profile_flags(p)
    p.add_argument("--role", default="b-from-beta",
                   choices=["a-from-alpha", "b-from-beta"])
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--k-max", type=int, default=200)

    # cone ----------------------------------------------------------------
    cone = sub.add_parser("cone", help="cone geometry")
    csub = cone.add_subparsers(dest="cmd", required=True)
    for name in ("contains", "distance", "dual-contains"):
        p = csub.add_parser(name)
        _add_cone_flags(p)
        p.add_argument("--point", required=True)
    p = csub.add_parser("separation")
    _add_cone_flags(p)
    _add_cone_flags(p, suffix="2")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p = csub.add_parser("subcone")
    _add_cone_flags(p)            # the candidate subcone
    _add_cone_flags(p, suffix="2")  # the ambient cone
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)

    # space ----------------------------------------------------------------
    space = sub.add_parser("space", help="membership and norms")
    spsub = space.add_subparsers(dest="cmd", required=True)
    p = spsub.add_parser("norm")
    p.add_argument("--function", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--A", type=float, required=True)
    p.add_argument("--B", type=float, required=True)
    p = spsub.add_parser("membership")
    p.add_argument("--function", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p = spsub.add_parser("trace")
    p.add_argument("--function", required=True)
    p.add_argument("--lo", type=float, default=-8.0)
    p.add_argument("--hi", type=float, default=8.0)
    p.add_argument("--imag", type=float, default=0.0)
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--csv", default=None)

    # wick ----------------------------------------------------------------
    wick = sub.add_parser("wick", help="Wick series machinery")
    wsub = wick.add_subparsers(dest="cmd", required=True)
    p = wsub.add_parser("coeffs")
    p.add_argument("--kind", required=True,
                   choices=["inverse-factorial", "inverse-factorial-power",
                            "geometric-damped", "table"])
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--rho", type=float, default=0.5)
    p.add_argument("--values", default=None)
    p.add_argument("--k-max", type=int, default=60)
    p = wsub.add_parser("pairing")
    p.add_argument("--degrees", required=True)
    p.add_argument("--w", required=True,
                   help="pair kernel matrix, rows ';'-separated")
    p = wsub.add_parser("exp-identity")
    p.add_argument("--w-re", type=float, default=2.0)
    p.add_argument("--w-im", type=float, default=0.0)
    p.add_argument("--n-max", type=int, default=30)
    p = wsub.add_parser("majorant")
    p.add_argument("--model", required=True)
    p.add_argument("--margin", type=float, default=0.25)
    p = wsub.add_parser("theorem10")
    p.add_argument("--model", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--sigma", type=float, default=1.0)
    p = wsub.add_parser("npoint-trace")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--w-max", type=float, default=5.0)
    p.add_argument("--points", type=int, default=51)
    p.add_argument("--n-max", type=int, default=30)
    p.add_argument("--csv", default=None)
    p = wsub.add_parser("fft-demo")
    p.add_argument("--model", default="rational")
    p.add_argument("--sizes", default="256,512,1024")
    p.add_argument("--series", action="store_true",
                   help="full 1/k! series instead of the free term")
    p.add_argument("--csv", default=None)

    # laplace ----------------------------------------------------------------
    lap = sub.add_parser("laplace", help="transforms and growth bounds")
    lsub = lap.add_subparsers(dest="cmd", required=True)
    p = lsub.add_parser("transform")
    p.add_argument("--rate", type=float, default=1.0)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p = lsub.add_parser("trace")
    p.add_argument("--rate", type=float, default=1.0)
    p.add_argument("--y", type=float, default=0.5)
    p.add_argument("--lo", type=float, default=-10.0)
    p.add_argument("--hi", type=float, default=10.0)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--csv", default=None)
    p = lsub.add_parser("bound23")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--eps", type=float, default=0.5)
    p.add_argument("--rate", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p = lsub.add_parser("convolution")
    p.add_argument("--function", default="gaussian:1")
    p.add_argument("--beta", required=True)
    p.add_argument("--eps", type=float, default=0.5)
    p.add_argument("--rate", type=float, default=1.0)
    p = lsub.add_parser("theorem9")
    p.add_argument("--gamma", default="log-inverse",
                   choices=["log-inverse", "inverse-power", "constant"])
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--beta", required=True)

    # run ----------------------------------------------------------------
    runp = sub.add_parser("run", help="execute a scenario file")
    runp.add_argument("scenario")
    runp.add_argument("--output", default=None)
    plots = runp.add_mutually_exclusive_group()
    plots.add_argument("--plots", dest="plots", action="store_true",
                       default=None)
    plots.add_argument("--no-plots", dest="plots", action="store_false")

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.group == "profile":
        prof = _profile_from_flags(args)
        if args.cmd == "conjugate":
            _emit(convex_conjugate(prof, args.r))
        elif args.cmd == "concave-conjugate":
            _emit(concave_conjugate(prof, args.t))
        elif args.cmd == "doubling":
            h, witness = check_doubling(prof, args.h_max)
            _emit({"h": h, "witness_s": witness})
        elif args.cmd == "nonquasianalytic":
            status, value = check_nonquasianalytic(prof)
            _emit({"status": status, "integral": value})
        elif args.cmd == "precedes":
            pair, witness = check_precedes(prof, _profile_from_flags(args, "2"))
            _emit({"holds": pair is not None,
                   "C": pair[0] if pair else None,
                   "H": pair[1] if pair else None,
                   "witness_s": witness})
        elif args.cmd == "lemma2":
            c_eps, witness = lemma2_margin(prof, args.eps)
            _emit({"C_eps": c_eps, "witness_s": witness})
        return 0

    if args.group == "sequence":
        prof = _profile_from_flags(args)
        if args.cmd == "defining":
            seq = defining_sequence(prof, args.role, args.k_max)
            rows = list(enumerate(seq.values))
            _emit({"log_values": [float(v) for v in seq.values]},
                  csv_path=args.csv, csv_rows=rows,
                  csv_header=("k", "ln_a_k"))
        elif args.cmd == "lemma1":
            _emit(lemma1_check(prof, args.k))
        elif args.cmd == "lemma3":
            _emit(lemma3_sandwich(prof, args.eps).to_dict())
        elif args.cmd == "regularity":
            seq = defining_sequence(prof, args.role, args.k_max)
            pair, witness = check_regularity(seq)
            _emit({"C": pair[0] if pair else None,
                   "h": pair[1] if pair else None,
                   "witness_pair": list(witness) if witness else None})
        elif args.cmd == "indicator":
            seq = defining_sequence(prof, args.role, args.k_max)
            out = IndicatorFunction(seq).eval_report(args.s)
            _emit({"value": out.value, "log_value": out.log_value,
                   "argmax": out.argmax, "truncated": out.truncated})
        return 0

    if args.group == "cone":
        cone = _cone_from_flags(args)
        if args.cmd == "contains":
            _emit(contains(cone, _vector(args.point)))
        elif args.cmd == "distance":
            _emit(distance_to_cone(cone, _vector(args.point)))
        elif args.cmd == "dual-contains":
            _emit(dual_contains(cone, _vector(args.point)))
        elif args.cmd == "separation":
            other = _cone_from_flags(args, "2")
            _emit(angular_separation(cone, other, samples=args.samples,
                                     seed=args.seed))
        elif args.cmd == "subcone":
            other = _cone_from_flags(args, "2")
            _emit(is_compact_subcone(cone, other, samples=args.samples,
                                     seed=args.seed))
        return 0

    if args.group == "space" and args.cmd != "trace":
        spec = SpaceSpec(parse_profile(args.alpha), parse_profile(args.beta),
                         dim=1)
        g = parse_function(args.function)
        if args.cmd == "norm":
            _emit(estimate_norm(g, spec, args.A, args.B).to_dict())
        elif args.cmd == "membership":
            _emit(check_membership_entire(g, spec).to_dict())
        return 0

    if args.group == "space" and args.cmd == "trace":
        g = parse_function(args.function)
        xs = np.linspace(args.lo, args.hi, args.points)
        vals = g.eval_many((xs + 1j * args.imag)[:, None])
        rows = [(float(x), float(v.real), float(v.imag))
                for x, v in zip(xs, vals)]
        _emit({"trace": rows}, csv_path=args.csv, csv_rows=rows,
              csv_header=("x", "re", "im"))
        return 0

    if args.group == "wick":
        if args.cmd == "coeffs":
            kind = args.kind
            if kind in ("inverse-factorial", "inverse-factorial-power"):
                coeffs = WickCoefficients.inverse_factorial(args.sigma,
                                                            args.k_max)
            elif kind == "geometric-damped":
                coeffs = WickCoefficients.geometric_damped(args.rho,
                                                           args.sigma,
                                                           args.k_max)
            else:
                coeffs = WickCoefficients.from_table(_vector(args.values))
            _emit(check_coefficient_conditions(coeffs).to_dict())
        elif args.cmd == "pairing":
            degrees = [int(v) for v in _vector(args.degrees)]
            rows = [r for r in args.w.split(";") if r]
            w = np.array([[float(v) for v in r.split(",")] for r in rows])
            _emit(wick_pairing_sum(degrees, w))
        elif args.cmd == "exp-identity":
            d = WickCoefficients.inverse_factorial(1.0, 80)
            w = complex(args.w_re, args.w_im)
            got = two_point_series(d, w, args.n_max)
            _emit({"value": got, "exp_w": np.exp(w),
                   "abs_error": abs(got - np.exp(w))})
        elif args.cmd == "majorant":
            _emit(majorant_bound_check(parse_model(args.model),
                                       margin=args.margin).to_dict())
        elif args.cmd == "theorem10":
            d = WickCoefficients.inverse_factorial(args.sigma)
            rep = theorem10_indicator_check(d, parse_model(args.model),
                                            parse_profile(args.alpha),
                                            parse_profile(args.beta))
            _emit(rep.to_dict())
        elif args.cmd == "npoint-trace":
            d = WickCoefficients.inverse_factorial(args.sigma, 80)
            ws = np.linspace(-args.w_max, args.w_max, args.points)
            rows = []
            for w in ws:
                val = two_point_series(d, complex(w), args.n_max)
                rows.append((float(w), float(val.real), float(val.imag)))
            _emit({"trace": rows}, csv_path=args.csv, csv_rows=rows,
                  csv_header=("w", "re", "im"))
        elif args.cmd == "fft-demo":
            sizes = tuple(int(v) for v in _vector(args.sizes))
            coeffs = WickCoefficients.inverse_factorial(1.0, 40) \
                if args.series else WickCoefficients.from_table([1.0, 1.0])
            out = spectral_fft_demo(parse_model(args.model), coeffs,
                                    lattice_sizes=sizes,
                                    n_max=10 if args.series else 1)
            _emit(out, csv_path=args.csv,
                  csv_rows=list(zip(out["lattice_sizes"], out["fractions"])),
                  csv_header=("lattice", "outside_fraction"))
        return 0

    if args.group == "laplace":
        if args.cmd == "transform":
            u = ConeDensity.exponential(args.rate)
            _emit(u.transform(np.array([complex(args.x, args.y)])))
        elif args.cmd == "trace":
            u = ConeDensity.exponential(args.rate)
            xs = np.linspace(args.lo, args.hi, args.points)
            rows = []
            for x in xs:
                val = u.transform(np.array([complex(x, args.y)]))
                rows.append((float(x), float(val.real), float(val.imag)))
            _emit({"trace": rows}, csv_path=args.csv, csv_rows=rows,
                  csv_header=("x", "re", "im"))
        elif args.cmd == "bound23":
            u = ConeDensity.exponential(args.rate)
            rep = bound23_check(lambda z: u.transform(z),
                                parse_profile(args.alpha),
                                parse_profile(args.beta),
                                Cone.ray([1.0]), args.eps,
                                samples=args.samples, seed=args.seed)
            _emit(rep.to_dict())
        elif args.cmd == "convolution":
            u = ConeDensity.exponential(args.rate)
            rep = convolution_bound_check(u, parse_function(args.function),
                                          parse_profile(args.beta), args.eps)
            _emit(rep.to_dict())
        elif args.cmd == "theorem9":
            gamma = {"log-inverse": gamma_log_inverse(),
                     "inverse-power": gamma_inverse_power(args.m),
                     "constant": gamma_constant(args.c)}[args.gamma]
            _emit(theorem9_gamma_check(gamma,
                                       parse_profile(args.beta)).to_dict())
        return 0

    if args.group == "run":
        return run_scenario(args.scenario, output_dir=args.output,
                            make_plots=args.plots)

    return 2


if __name__ == "__main__":
    raise SystemExit(main())
