"""Growth/decay space checks for the test-function catalog.

The central object is the weighted tube supremum

    ||g||_{U,A,B} = sup_{p,q} |g(p+iq)| exp{-alpha(A|q|)
                    - alpha(dist_U(A p)) + beta(|p|/B)},

estimated on expanding grids with a certified-by-decay stopping rule: the
boundary shell of the grid must fall three orders of magnitude below the
interior maximum before the supremum is trusted.  Membership checkers
search an (A, B) lattice for a finite norm (the entire-function route) or
fit the derivative/decay constants of the smooth route, and the
cross-check demands the two verdicts agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline

from .cones import Cone, angular_separation, distance_to_cone
from .functions import (PointwiseProduct, RiemannMollifier, Scaled,
                        TestFunction, WeightedFunction, cauchy_derivative)
from .profiles import FunctionProfile
from .report import FAIL, PASS, UNDETERMINED, BoundReport
from .search import sphere_points
from .sequences import LogSequence

NORM_DECAY_FACTOR = 1e-3       # boundary shell must sit below this x interior
DEFAULT_LATTICE = tuple(2.0 ** j for j in range(-2, 7))


@dataclass(frozen=True)
class SpaceSpec:
    """The scale pair (alpha, beta) and the cone of permitted real growth."""

    alpha: FunctionProfile
    beta: FunctionProfile
    cone: Optional[Cone] = None       # None = full space (no cone weight)
    dim: int = 1

    def cone_or_full(self) -> Cone:
        return self.cone if self.cone is not None else Cone.full(self.dim)


def _direction_set(dim: int, count: int = 8) -> np.ndarray:
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    dirs = [np.eye(dim)[j] for j in range(dim)]
    dirs += [-d for d in dirs]
    dirs += list(sphere_points(count, dim, seed=17))
    return np.array(dirs)


def _radial_points(dim: int, radius: float, n_r: int = 32) -> np.ndarray:
    radii = np.concatenate([[0.0], np.geomspace(1e-3, radius, n_r)])
    dirs = _direction_set(dim)
    pts = (radii[:, None, None] * dirs[None, :, :]).reshape(-1, dim)
    return np.unique(pts, axis=0)


def _log_weight_terms(spec: SpaceSpec, a_const: float, b_const: float,
                      p_pts: np.ndarray, q_pts: np.ndarray):
    """(-alpha(A|q|)) per q and (-alpha(dist_U(A p)) + beta(|p|/B)) per p."""
    cone = spec.cone
    p_norm = np.linalg.norm(p_pts, axis=1)
    q_norm = np.linalg.norm(q_pts, axis=1)
    beta_term = spec.beta.values(p_norm / b_const)
    if cone is None or cone.variant == "full-space":
        delta_term = np.zeros(len(p_pts))
    else:
        delta = np.array([distance_to_cone(cone, p) for p in p_pts])
        delta_term = spec.alpha.values(a_const * delta)
    alpha_q = spec.alpha.values(a_const * q_norm)
    return -alpha_q, beta_term - delta_term


def estimate_norm(g: TestFunction, spec: SpaceSpec, a_const: float,
                  b_const: float, *, p_radius: float = 10.0,
                  q_radius: float = 10.0, expansions: int = 5,
                  expand: bool = True) -> BoundReport:
    """Certified tube-supremum estimate of the weighted norm.

    Pass: the supremum with a decay certificate (boundary shell below
    1e-3 of the interior max).  Fail: the weighted integrand is still
    growing at the largest grid after all expansions ("norm presumed
    infinite") with the boundary witness.
    """
    if a_const <= 0 or b_const <= 0:
        raise ValueError("A and B must be positive")
    budgets = {"p_radius": p_radius, "q_radius": q_radius, "norm": "euclidean"}
    for attempt in range(expansions):
        p_pts = _radial_points(spec.dim, p_radius)
        q_pts = _radial_points(spec.dim, q_radius)
        q_term, p_term = _log_weight_terms(spec, a_const, b_const, p_pts, q_pts)

        zs = (p_pts[:, None, :] + 1j * q_pts[None, :, :]).reshape(-1, spec.dim)
        log_vals = g.log_abs_many(zs).reshape(len(p_pts), len(q_pts))
        with np.errstate(invalid="ignore"):
            weight = p_term[:, None] + q_term[None, :]
        # an indeterminate weight (inf - inf) must block certification
        weight = np.where(np.isnan(weight), np.inf, weight)
        total = np.where(log_vals == -np.inf, -np.inf, log_vals + weight)

        flat = int(np.argmax(total))
        i, j = np.unravel_index(flat, total.shape)
        peak = float(total[i, j])
        if peak == -math.inf:
            return BoundReport("estimate-norm", PASS,
                               constants={"norm": 0.0, "log_norm": -math.inf},
                               budgets=budgets)

        p_norm = np.linalg.norm(p_pts, axis=1)
        q_norm = np.linalg.norm(q_pts, axis=1)
        shell = (p_norm[:, None] >= 0.5 * p_radius) | \
                (q_norm[None, :] >= 0.5 * q_radius)
        shell_max = float(np.max(np.where(shell, total, -np.inf)))
        if math.isfinite(peak) and \
                shell_max <= peak + math.log(NORM_DECAY_FACTOR):
            return BoundReport(
                "estimate-norm", PASS,
                constants={"norm": math.exp(peak) if peak < 700 else math.inf,
                           "log_norm": peak},
                witness={"p": p_pts[i].tolist(), "q": q_pts[j].tolist()},
                budgets=dict(budgets, grid=(len(p_pts), len(q_pts)),
                             expansions=attempt))
        if not expand:
            break
        p_radius *= 4.0
        q_radius *= 2.0
        budgets.update(p_radius=p_radius, q_radius=q_radius)

    si, sj = np.unravel_index(
        int(np.argmax(np.where(shell, total, -np.inf))), total.shape)
    return BoundReport(
        "estimate-norm", FAIL,
        constants={"log_sup_grid": peak},
        witness={"p": p_pts[si].tolist(), "q": q_pts[sj].tolist(),
                 "log_weighted_value": float(total[si, sj]),
                 "reason": "norm presumed infinite: no decay at boundary"},
        budgets=budgets)


def check_membership_entire(g: TestFunction, spec: SpaceSpec,
                            lattice=DEFAULT_LATTICE,
                            c_cap: float = math.inf) -> BoundReport:
    """Search the (A, B) lattice for a finite certified norm."""
    pairs = sorted(((a, b) for a in lattice for b in lattice),
                   key=lambda ab: (ab[0] * ab[1], ab[0]))
    last_witness = None
    for a_const, b_const in pairs:
        rep = estimate_norm(g, spec, a_const, b_const, expansions=3)
        if rep.passed and rep.constants["norm"] <= c_cap:
            return BoundReport(
                "membership-entire", PASS,
                constants={"A": a_const, "B": b_const,
                           "C": rep.constants["norm"]},
                budgets=rep.budgets)
        last_witness = rep.witness
    return BoundReport("membership-entire", FAIL,
                       witness=last_witness or {"reason": "no finite norm"},
                       budgets={"lattice": len(pairs)})


# ---------------------------------------------------------------------------
# smooth-side membership via Cauchy-formula derivatives
# ---------------------------------------------------------------------------

def _multi_indices(dim: int, max_total: int):
    if dim == 1:
        return [(k,) for k in range(max_total + 1)]
    out = []
    for total in range(max_total + 1):
        for first in range(total + 1):
            out.append((first, total - first))
    return out


def _derivative_table(g: TestFunction, p_pts: np.ndarray, kappas,
                      a_guess: float):
    """|d^kappa g| at every point per kappa, with a node-doubling noise check."""
    table, noisy = {}, []
    for kappa in kappas:
        total = sum(kappa)
        radius = max(1.0, total / (math.e * a_guess))
        table[kappa] = np.array([abs(cauchy_derivative(g, p, kappa, radius))
                                 for p in p_pts])
        # noise probe at the largest point only (cost control)
        probe = p_pts[np.argmax(np.linalg.norm(p_pts, axis=1))]
        d1 = cauchy_derivative(g, probe, kappa, radius)
        d2 = cauchy_derivative(g, probe, kappa, radius,
                               nodes=2 * (4 * total + 16))
        if abs(d1 - d2) > 1e-6 * (1.0 + abs(d1)):
            noisy.append(kappa)
    return table, noisy


def check_membership_smooth(g: TestFunction, a_seq: LogSequence,
                            b_seq: LogSequence, kappa_max: int = 8,
                            lambda_max: int = 8, p_radius: float = 8.0,
                            lattice=DEFAULT_LATTICE, c_cap: float = 1e6,
                            a_guess: float = 1.0) -> BoundReport:
    """Fit |p^lambda d^kappa g| <= C A^|kappa| B^|lambda| a_|kappa| b_|lambda|.

    Derivatives come from circle quadrature (radius grows with the order);
    the fit must be stable when the sampled range doubles, which is what
    rules out functions with no decay (their lambda side grows with the
    range instead of stabilizing).
    """
    dim = g.dim
    kappas = _multi_indices(dim, kappa_max)
    warnings = []

    def range_fit(pts):
        table, noisy = _derivative_table(g, pts, kappas, a_guess)
        if noisy:
            warnings.append(f"derivative noise at orders {noisy}; "
                            "those orders were dropped")
        p_norm = np.linalg.norm(pts, axis=1)
        out = {}
        for kappa, dvals in table.items():
            if kappa in noisy:
                continue
            for lam in range(lambda_max + 1):
                # |p^lambda| bounded by |p|^lambda for total degree lambda
                m = float(np.max(p_norm ** lam * dvals))
                out[(sum(kappa), lam)] = max(out.get((sum(kappa), lam), 0.0), m)
        return out

    # nested grids: the extension adds an outer shell only, so per-cell
    # growth means the supremum migrated to the new boundary
    pts_small = _radial_points(dim, p_radius, n_r=10)
    dirs = _direction_set(dim)
    shell_radii = np.geomspace(p_radius, 2.0 * p_radius, 5)[1:]
    shell = (shell_radii[:, None, None] * dirs[None, :, :]).reshape(-1, dim)
    m_small = range_fit(pts_small)
    m_shell = range_fit(shell)
    m_large = {kl: max(m_small.get(kl, 0.0), m_shell.get(kl, 0.0))
               for kl in set(m_small) | set(m_shell)}

    # any cell still growing under range doubling means the supremum over
    # p is infinite: no constants can exist
    growing = [kl for kl, big in m_large.items()
               if big > 1.5 * m_small.get(kl, 0.0) and big > 1e-12]
    if growing:
        worst_key = max(growing, key=lambda kl: m_large[kl])
        return BoundReport(
            "membership-smooth", FAIL,
            witness={"kappa_lambda": list(worst_key),
                     "value": m_large[worst_key],
                     "reason": "moment keeps growing under range doubling"},
            budgets={"kappa_max": kappa_max, "lambda_max": lambda_max},
            warnings=warnings)

    ln_a = a_seq.values
    ln_b = b_seq.values

    def fitted_log_c(a_const, b_const):
        worst = -math.inf
        for (k, l), val in m_large.items():
            val = max(val, m_small.get((k, l), 0.0))
            if val == 0.0:
                continue
            denom = (k * math.log(a_const) + l * math.log(b_const)
                     + float(ln_a[k]) + float(ln_b[l]))
            worst = max(worst, math.log(val) - denom)
        return worst

    pairs = sorted(((a, b) for a in lattice for b in lattice),
                   key=lambda ab: (ab[0] * ab[1], ab[0]))
    for a_const, b_const in pairs:
        log_c = fitted_log_c(a_const, b_const)
        if log_c <= math.log(c_cap):
            return BoundReport(
                "membership-smooth", PASS,
                constants={"A": a_const, "B": b_const,
                           "C": math.exp(log_c)},
                budgets={"kappa_max": kappa_max, "lambda_max": lambda_max,
                         "p_radius": p_radius},
                warnings=warnings)
    return BoundReport(
        "membership-smooth", FAIL,
        witness={"reason": f"no lattice pair fits below C = {c_cap}"},
        budgets={"kappa_max": kappa_max, "lambda_max": lambda_max},
        warnings=warnings)


def theorem1_crosscheck(g: TestFunction, spec: SpaceSpec,
                        k_max: int = 40) -> dict:
    """Entire-route and smooth-route membership verdicts must agree."""
    from .sequences import defining_sequence

    entire = check_membership_entire(g, spec)
    a_seq = defining_sequence(spec.alpha, "a-from-alpha", k_max)
    b_seq = defining_sequence(spec.beta, "b-from-beta", k_max)
    smooth = check_membership_smooth(g, a_seq, b_seq)
    return {"entire": entire, "smooth": smooth,
            "agree": entire.passed == smooth.passed}


# ---------------------------------------------------------------------------
# Riemann-sum approximation
# ---------------------------------------------------------------------------

def normalize_unit_mass(e0: TestFunction, half_width: float = 14.0) -> TestFunction:
    """Scale e0 so its real-space integral is 1 (numerical quadrature)."""
    if e0.dim == 1:
        total = quad(lambda x: float(np.real(e0.eval(np.array([x + 0j])))),
                     -half_width, half_width, limit=200)[0]
    elif e0.dim == 2:
        def inner(x):
            return quad(lambda y: float(np.real(
                e0.eval(np.array([x, y], dtype=complex)))),
                -half_width, half_width, limit=100)[0]
        total = quad(inner, -half_width, half_width, limit=100)[0]
    else:
        raise ValueError("normalization supports dims 1 and 2")
    if abs(total) < 1e-12:
        raise ValueError("e0 has (numerically) zero mass")
    return Scaled(1.0 / total, e0)


def riemann_approximate(g: TestFunction, e0: TestFunction, nus,
                        spec: SpaceSpec, a_const: float = 2.0,
                        b_const: float = 2.0):
    """g_nu = e_nu * g for the Riemann-sum mollifiers; error trace over nu.

    Returns (g_nu for the largest nu, trace) where the trace lists the
    weighted-norm error of g_nu - g per nu on a fixed certified grid.
    """
    e0n = normalize_unit_mass(e0)
    trace = []
    g_nu = None
    for nu in nus:
        g_nu = PointwiseProduct(RiemannMollifier(e0n, int(nu)), g)
        err = estimate_norm(g_nu - g, spec, a_const, b_const,
                            p_radius=10.0, q_radius=5.0, expand=False)
        log_err = err.constants.get("log_norm",
                                    err.constants.get("log_sup_grid",
                                                      math.inf))
        trace.append({"nu": int(nu), "log_error": log_err,
                      "certified": err.passed})
    return g_nu, trace


# ---------------------------------------------------------------------------
# constructive cone decomposition
# ---------------------------------------------------------------------------

class _ConeSmear:
    """e(p) = integral over the cone W2 of e0(p - eta) d eta.

    Quadrature per evaluation point; real-axis evaluations cache into a
    cubic spline (the decomposition identity is immune to interpolation
    error because g2 is formed as (1 - e) g with the same e values).
    """

    def __init__(self, e0n: TestFunction, w2: Cone, reach: float = 16.0):
        self.e0n, self.w2, self.reach = e0n, w2, reach
        if w2.dim != e0n.dim:
            raise ValueError("cone/function dimension mismatch")
        if e0n.dim != 1:
            raise ValueError("cone smearing implemented for dimension 1")
        if w2.variant == "half-space":
            self.direction = -float(np.array(w2.payload["normal"])[0])
        elif w2.variant == "polyhedral" and "generators" in w2.payload:
            gens = w2.payload["generators"]
            if len(gens) != 1:
                raise ValueError("1-d cones are rays")
            self.direction = float(np.sign(gens[0][0]))
        else:
            raise ValueError(f"unsupported 1-d cone variant {w2.variant!r}")
        self._spline: Optional[CubicSpline] = None
        self._spline_range = (0.0, 0.0)

    def exact(self, z: complex) -> complex:
        # eta = t * direction, t >= 0: integrate e0(z - eta) with a reach
        # window past the decay of e0 around Re z
        t_max = abs(z.real) + self.reach

        def re_part(t):
            return float(np.real(self.e0n.eval(
                np.array([z - self.direction * t], dtype=complex))))

        def im_part(t):
            return float(np.imag(self.e0n.eval(
                np.array([z - self.direction * t], dtype=complex))))

        re, re_err = quad(re_part, 0.0, t_max, limit=200)
        im, im_err = quad(im_part, 0.0, t_max, limit=200)
        value = complex(re, im)
        # converging to zero (deep inside the opposite cone) is fine; an
        # error estimate that dwarfs the value is not
        if re_err + im_err > 1e-6 * (1.0 + abs(value)):
            raise ArithmeticError(
                f"cone smear quadrature did not converge at z = {z}")
        return value

    def build_cache(self, radius: float, points: int = 257):
        xs = np.linspace(-radius, radius, points)
        ys = np.array([self.exact(complex(x)) for x in xs])
        self._spline = CubicSpline(xs, np.real(ys))
        self._spline_range = (-radius, radius)

    def __call__(self, z: np.ndarray) -> complex:
        z0 = complex(z[0])
        if z0.imag == 0.0 and self._spline is not None and \
                self._spline_range[0] <= z0.real <= self._spline_range[1]:
            return complex(float(self._spline(z0.real)))
        return self.exact(z0)


def cone_decompose(g: TestFunction, k1: Cone, k2: Cone, e0: TestFunction,
                   spec: SpaceSpec, w2: Optional[Cone] = None,
                   grid_radius: float = 8.0):
    """Split g = g1 + g2 with g1 = e g carried near k1, g2 = (1-e) g.

    e integrates a normalized bump over the cone W2 (default: k2 itself),
    so e ~ 1 deep in k2 and decays inside k1 at a rate the report fits
    against exp(-alpha(A_e |p|)).  The identity g1 + g2 = g holds to float
    rounding at every point because both weights come from the same e
    evaluation.
    """
    theta = angular_separation(k1, k2, samples=2000)
    if theta <= 0.0:
        raise ValueError("cones must have positive angular separation")
    e0n = normalize_unit_mass(e0)
    smear = _ConeSmear(e0n, w2 if w2 is not None else k2)
    smear.build_cache(grid_radius * 2.0)

    g1 = WeightedFunction(lambda z: smear(z), g, label="e*g")
    g2 = WeightedFunction(lambda z: 1.0 - smear(z), g, label="(1-e)*g")

    # membership constants of the mollifier in the alpha-alpha space and
    # of g in the target space: the proof-side constraint is 2 B0 < theta/A
    alpha_space = SpaceSpec(spec.alpha, spec.alpha, dim=spec.dim)
    e0_fit = check_membership_entire(e0n, alpha_space)
    g_fit = check_membership_entire(g, SpaceSpec(spec.alpha, spec.beta,
                                                 dim=spec.dim))
    constraint_ok = None
    if e0_fit.passed and g_fit.passed:
        constraint_ok = bool(2.0 * e0_fit.constants["B"]
                             < theta / g_fit.constants["A"])

    # cone bound for g1 on a k1-neighborhood grid (real axis)
    a_fit = g_fit.constants["A"] if g_fit.passed else 2.0
    b_fit = g_fit.constants["B"] if g_fit.passed else 2.0
    xs = np.concatenate([-np.geomspace(1e-3, grid_radius, 64)[::-1],
                         [0.0], np.geomspace(1e-3, grid_radius, 64)])
    lng1 = np.array([_log_abs(g1.eval(np.array([x], dtype=complex)))
                     for x in xs])
    delta = np.array([distance_to_cone(k1, np.array([x])) for x in xs])
    allowed = (spec.alpha.values(a_fit * delta)
               - spec.beta.values(np.abs(xs) / b_fit))
    excess = lng1 - allowed
    log_c = float(np.max(excess))
    interior = np.abs(xs) <= 0.5 * grid_radius
    edge_ok = float(np.max(excess[~interior])) <= \
        float(np.max(excess[interior])) + 1e-9

    # decay rate of e deep inside k1: fit largest lattice A_e with
    # e(p) <= C_e exp(-alpha(A_e |p|)) on the sampled ray
    deep = unit_ray_samples(k1, grid_radius)
    e_vals = np.array([abs(smear(np.array([x], dtype=complex))) for x in deep])
    fitted_a_e = 0.0
    for cand in (4.0, 2.0, 1.0, 0.5, 0.25):
        bound = np.exp(-spec.alpha.values(cand * np.abs(deep)))
        if np.all(e_vals <= 10.0 * bound + 1e-300):
            fitted_a_e = cand
            break

    status = PASS if edge_ok else UNDETERMINED
    report = BoundReport(
        "cone-decompose", status,
        constants={"theta": theta, "log_C": log_c, "A": a_fit, "B": b_fit,
                   "A_e_decay": fitted_a_e},
        budgets={"grid": len(xs), "grid_radius": grid_radius,
                 "norm": "euclidean"},
        warnings=[] if edge_ok else ["cone bound not decaying at grid edge"],
        notes={"constraint_2B0_lt_theta_over_A": constraint_ok,
               "e0_fit": e0_fit.constants if e0_fit.passed else None,
               "g_fit": g_fit.constants if g_fit.passed else None})
    return g1, g2, report


def unit_ray_samples(cone: Cone, radius: float, count: int = 24) -> np.ndarray:
    """Points along the deepest 1-d ray of the cone (positive or negative)."""
    if cone.dim != 1:
        raise ValueError("ray samples are 1-d")
    if cone.variant == "half-space":
        sign = float(np.array(cone.payload["normal"])[0])
    elif cone.variant == "polyhedral":
        sign = float(np.sign(cone.payload["generators"][0][0]))
    else:
        raise ValueError("unsupported 1-d cone")
    return sign * np.geomspace(0.25, radius, count)


def _log_abs(value: complex) -> float:
    mag = abs(value)
    return math.log(mag) if mag > 0 else -math.inf
