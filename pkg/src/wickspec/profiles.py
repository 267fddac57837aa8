"""Indicator-scale function calculus.

A :class:`FunctionProfile` is a nonnegative, nondecreasing function on
s >= 0 used as a growth scale: either the "analytic side" scale (convex,
differentiable, vanishing at 0, written ``alpha`` throughout) or the
"decay side" scale (convex in ln s and doubling-controlled, written
``beta``).  The module implements the two monotone conjugations

    conjugate_sup:  alpha_*(r) = sup_{s>0} (r*s - alpha(s))
    conjugate_inf:  beta^*(t)  = inf_{s>0} (s*t - beta(s))

together with the structural checks the rest of the package relies on:
the doubling condition 2*beta(s) <= beta(h*s), the nonquasianalyticity
integral  int_1^inf beta(s)/s^2 ds < inf, the order relation
alpha1(s) <= C + alpha(H*s), and the log-margin inequality
beta(s) + ln s <= C_eps + beta((1+eps)*s).

All searches run in ln s per the package-wide convention (see search.py);
closed forms are used where the catalog admits them and are cross-checked
against the generic search path in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .search import (T_CEIL, T_FLOOR, bisect_increasing, adaptive_simpson,
                     maximize_unimodal, minimize_unimodal)

INF = math.inf

#: default verification grid: 512 log-spaced points on [1e-3, 1e6]
GRID_POINTS = 512
GRID_LO = 1e-3
GRID_HI = 1e6

REL_TOL_CLOSED = 1e-9   # closed-form comparisons
REL_TOL_FITTED = 1e-6   # fitted constants


class ProfileError(ValueError):
    """Raised when a profile violates its declared attributes."""


@dataclass(frozen=True)
class ProfileAttributes:
    convex: bool = False
    concave: bool = False
    convex_in_log: bool = False
    differentiable: bool = False
    increasing: bool = True
    nonneg: bool = True
    value_at_0: float = 0.0


def default_grid(lo: float = GRID_LO, hi: float = GRID_HI,
                 points: int = GRID_POINTS) -> np.ndarray:
    return np.geomspace(lo, hi, points)


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

def _power_value(gamma: float):
    def f(s):
        return s ** gamma
    return f


_CATALOG: dict[str, dict] = {
    "power": {
        "value": lambda p: (lambda s: s ** p["gamma"]),
        "deriv": lambda p: (lambda s: p["gamma"] * s ** (p["gamma"] - 1.0)),
        "attrs": lambda p: ProfileAttributes(
            convex=p["gamma"] >= 1.0, concave=p["gamma"] <= 1.0,
            convex_in_log=True, differentiable=True),
    },
    "quadratic": {
        "value": lambda p: (lambda s: s * s),
        "deriv": lambda p: (lambda s: 2.0 * s),
        "attrs": lambda p: ProfileAttributes(
            convex=True, convex_in_log=True, differentiable=True),
    },
    "linear": {
        "value": lambda p: (lambda s: s),
        "deriv": lambda p: (lambda s: 1.0),
        "attrs": lambda p: ProfileAttributes(
            convex=True, concave=True, convex_in_log=True,
            differentiable=True),
    },
    "exp-minus-one": {
        "value": lambda p: (lambda s: math.expm1(s) if s < 700 else INF),
        "deriv": lambda p: (lambda s: math.exp(s) if s < 700 else INF),
        "attrs": lambda p: ProfileAttributes(
            convex=True, convex_in_log=True, differentiable=True),
    },
    "entropy": {
        "value": lambda p: (lambda s: s * math.log1p(s)),
        "deriv": lambda p: (lambda s: math.log1p(s) + s / (1.0 + s)),
        "attrs": lambda p: ProfileAttributes(
            convex=True, convex_in_log=True, differentiable=True),
    },
    "log-growth": {
        "value": lambda p: (lambda s: math.log1p(s)),
        "deriv": lambda p: (lambda s: 1.0 / (1.0 + s)),
        "attrs": lambda p: ProfileAttributes(
            concave=True, convex_in_log=True, differentiable=True),
    },
    "step": {
        # 0 on [0, radius], +inf beyond: the discontinuous scale that gives
        # the strip-analytic spaces with a_k ~ (k/e)^k
        "value": lambda p: (lambda s: 0.0 if s <= p["radius"] else INF),
        "deriv": lambda p: None,
        "attrs": lambda p: ProfileAttributes(convex=True, convex_in_log=True),
    },
}


class FunctionProfile:
    """A scale function from the catalog, a sample grid, or a wrapped callable.

    Serializable kinds follow the JSON convention
    ``{"kind": "...", "params": {...}}``; sampled profiles use
    ``{"kind": "sampled", "s": [...], "v": [...]}`` with strictly
    increasing ``s``.
    """

    def __init__(self, kind: str, params: Optional[dict] = None, *,
                 attributes: Optional[ProfileAttributes] = None,
                 fn: Optional[Callable[[float], float]] = None,
                 deriv: Optional[Callable[[float], float]] = None,
                 validate: bool = True):
        self.kind = kind
        self.params = dict(params or {})
        if kind in _CATALOG:
            entry = _CATALOG[kind]
            self._fn = entry["value"](self.params)
            self._deriv = entry["deriv"](self.params)
            self.attributes = attributes or entry["attrs"](self.params)
        elif kind == "sampled":
            s = np.asarray(self.params["s"], dtype=float)
            v = np.asarray(self.params["v"], dtype=float)
            if s.ndim != 1 or s.shape != v.shape or len(s) < 2:
                raise ProfileError("sampled profile needs matching 1-d s, v")
            if not np.all(np.diff(s) > 0):
                raise ProfileError("sampled grid must be strictly increasing")
            if s[0] <= 0:
                raise ProfileError("sampled grid must be positive")
            self._log_s = np.log(s)
            self._v = v
            self._fn = self._sampled_value
            self._deriv = None
            self.attributes = attributes or ProfileAttributes()
        elif kind in ("custom", "conjugate"):
            if fn is None:
                raise ProfileError(f"{kind} profile requires fn")
            self._fn = fn
            self._deriv = deriv
            self.attributes = attributes or ProfileAttributes()
        else:
            raise ProfileError(f"unknown profile kind {kind!r}")
        if validate:
            self._validate_attributes()

    # -- constructors -------------------------------------------------------

    @staticmethod
    def power(gamma: float) -> "FunctionProfile":
        if gamma <= 0:
            raise ProfileError("power profile needs gamma > 0")
        return FunctionProfile("power", {"gamma": float(gamma)})

    @staticmethod
    def quadratic() -> "FunctionProfile":
        return FunctionProfile("quadratic")

    @staticmethod
    def linear() -> "FunctionProfile":
        return FunctionProfile("linear")

    @staticmethod
    def exp_minus_one() -> "FunctionProfile":
        return FunctionProfile("exp-minus-one")

    @staticmethod
    def entropy() -> "FunctionProfile":
        return FunctionProfile("entropy")

    @staticmethod
    def log_growth() -> "FunctionProfile":
        return FunctionProfile("log-growth")

    @staticmethod
    def step(radius: float = 1.0) -> "FunctionProfile":
        return FunctionProfile("step", {"radius": float(radius)})

    @staticmethod
    def sampled(s, v, normalize: bool = True, **attr_flags) -> "FunctionProfile":
        """Grid profile; by default the leading value is subtracted so the
        scale vanishes at the origin (the closest available stand-in for
        the value at 0, which the grid cannot contain)."""
        v = list(map(float, v))
        offset = v[0] if normalize else 0.0
        attrs = ProfileAttributes(**attr_flags) if attr_flags else None
        prof = FunctionProfile("sampled",
                               {"s": list(map(float, s)),
                                "v": [x - offset for x in v],
                                "offset": offset},
                               attributes=attrs)
        return prof

    @staticmethod
    def from_callable(fn, *, deriv=None, **attr_flags) -> "FunctionProfile":
        attrs = ProfileAttributes(**attr_flags)
        return FunctionProfile("custom", attributes=attrs, fn=fn, deriv=deriv,
                               validate=False)

    # -- evaluation ---------------------------------------------------------

    def _sampled_value(self, s: float) -> float:
        # piecewise linear in ln s; flat-slope extrapolation beyond the grid
        t = math.log(max(s, 1e-300))
        return float(np.interp(t, self._log_s, self._v))

    def value(self, s: float) -> float:
        if s < 0:
            raise ProfileError("profiles are defined on s >= 0")
        if s == 0:
            return self.attributes.value_at_0
        v = self._fn(s)
        if isinstance(v, float) and math.isnan(v):
            raise ProfileError(f"profile {self.kind} produced NaN at s={s}")
        return v

    def values(self, s: np.ndarray) -> np.ndarray:
        return np.array([self.value(float(x)) for x in np.asarray(s).ravel()])

    def derivative(self, s: float) -> Optional[float]:
        if self._deriv is None:
            return None
        return self._deriv(s)

    @property
    def has_derivative(self) -> bool:
        return self._deriv is not None

    # -- validation ---------------------------------------------------------

    def _validate_attributes(self):
        """Sampled finite-difference tests of the declared flags."""
        if self.kind == "sampled":
            s = np.exp(self._log_s)
            v = self._v
        else:
            s = default_grid(1e-3, 1e3, 97)
            v = self.values(s)
        finite = np.isfinite(v)
        sf, vf = s[finite], v[finite]
        if len(sf) < 3:
            return
        a = self.attributes
        tol = 1e-9 * (1.0 + np.max(np.abs(vf)))
        if a.nonneg and np.any(vf < -tol):
            i = int(np.argmin(vf))
            raise ProfileError(f"declared nonneg but value {vf[i]} at s={sf[i]}")
        dv = np.diff(vf)
        if a.increasing and np.any(dv < -tol):
            i = int(np.argmin(dv))
            raise ProfileError(f"declared increasing but decreases at s={sf[i]}")
        slopes = dv / np.diff(sf)
        if a.convex and np.any(np.diff(slopes) < -1e-7 * (1 + np.abs(slopes[1:]))):
            raise ProfileError("declared convex-in-s but slope test fails")
        if a.concave and np.any(np.diff(slopes) > 1e-7 * (1 + np.abs(slopes[1:]))):
            raise ProfileError("declared concave-in-s but slope test fails")
        if a.convex_in_log:
            tslopes = dv / np.diff(np.log(sf))
            if np.any(np.diff(tslopes) < -1e-7 * (1 + np.abs(tslopes[1:]))):
                raise ProfileError("declared convex-in-ln-s but slope test fails")

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        if self.kind in ("custom", "conjugate"):
            raise ProfileError(f"{self.kind} profiles are not serializable")
        if self.kind == "sampled":
            return {"kind": "sampled", "s": self.params["s"],
                    "v": self.params["v"]}
        return {"kind": self.kind, "params": dict(self.params)}

    @staticmethod
    def from_dict(d: dict) -> "FunctionProfile":
        kind = d["kind"]
        if kind == "sampled":
            return FunctionProfile("sampled", {"s": d["s"], "v": d["v"]})
        return FunctionProfile(kind, d.get("params") or {})

    def __repr__(self):
        return f"FunctionProfile({self.kind!r}, {self.params!r})"


# ---------------------------------------------------------------------------
# conjugations
# ---------------------------------------------------------------------------

def _closed_form_sup_conjugate(alpha: FunctionProfile, r: float) -> Optional[float]:
    kind = alpha.kind
    if kind == "linear":
        return 0.0 if r <= 1.0 else INF
    if kind == "quadratic":
        return r * r / 4.0
    if kind == "power":
        g = alpha.params["gamma"]
        if g <= 1.0:
            return None
        # stationary point s = (r/g)^(1/(g-1))
        return (g - 1.0) * (r / g) ** (g / (g - 1.0)) if r > 0 else 0.0
    if kind == "exp-minus-one":
        if r <= 1.0:
            return 0.0
        return r * math.log(r) - r + 1.0
    if kind == "step":
        return alpha.params["radius"] * r
    return None


def convex_conjugate(alpha: FunctionProfile, r: float) -> float:
    """Monotone conjugate alpha_*(r) = sup_{s>0} (r*s - alpha(s)).

    Requires alpha increasing and convex with alpha(0) = 0 (validated at
    profile construction).  Returns +inf when the objective is unbounded,
    detected once the bracket passes s = 1e12 while still climbing.
    """
    if r < 0:
        raise ValueError("conjugate argument r must be >= 0")
    if not alpha.attributes.convex:
        raise ProfileError("convex_conjugate needs a convex profile")
    closed = _closed_form_sup_conjugate(alpha, r)
    if closed is not None:
        return closed
    if r == 0.0:
        return 0.0
    if alpha.has_derivative:
        # stationarity: alpha'(s) = r, alpha' nondecreasing
        d_lo = alpha.derivative(math.exp(T_FLOOR))
        if d_lo is not None and d_lo >= r:
            return 0.0      # objective decreasing from the s->0 boundary
        d_hi = alpha.derivative(math.exp(T_CEIL))
        if d_hi is not None and math.isfinite(d_hi) and d_hi <= r:
            return INF      # derivative never catches up: linear-side growth
        t_star = bisect_increasing(
            lambda t: alpha.derivative(math.exp(t)) - r, T_FLOOR, T_CEIL)
        s_star = math.exp(t_star)
        return max(0.0, r * s_star - alpha.value(s_star))

    def objective(t: float) -> float:
        s = math.exp(t)
        v = alpha.value(s)
        return -INF if v == INF else r * s - v

    res = maximize_unimodal(objective)
    if res.diverged:
        return INF
    return max(0.0, res.value)


def concave_conjugate(beta: FunctionProfile, t: float) -> float:
    """Lower conjugate beta^*(t) = inf_{s>0} (s*t - beta(s)) for t > 0.

    Finite whenever beta is sublinear (guaranteed by the
    nonquasianalyticity condition); nonpositive, concave and nondecreasing
    in t, and -> -inf as t -> 0 (checked as properties in the tests, not
    enforced pointwise here).
    """
    if t <= 0:
        raise ValueError("concave_conjugate requires t > 0")
    kind = beta.kind
    if kind == "power" and beta.params["gamma"] < 1.0:
        g = beta.params["gamma"]
        # stationary point: t = g*s^(g-1)
        s_star = (t / g) ** (1.0 / (g - 1.0))
        return s_star * t - s_star ** g

    def objective(u: float) -> float:
        s = math.exp(u)
        return s * t - beta.value(s)

    res = minimize_unimodal(objective)
    if res.diverged:
        return -INF
    return min(0.0, res.value)


def conjugate_profile(alpha: FunctionProfile) -> FunctionProfile:
    """alpha_* wrapped as a profile (convex, increasing, zero at zero)."""
    attrs = ProfileAttributes(convex=True, convex_in_log=False,
                              differentiable=False)
    return FunctionProfile(
        "conjugate", {"base_kind": alpha.kind},
        attributes=attrs, fn=lambda r: convex_conjugate(alpha, r),
        validate=False)


# ---------------------------------------------------------------------------
# structural checks
# ---------------------------------------------------------------------------

def check_doubling(beta: FunctionProfile, h_max: float = 64.0,
                   grid: Optional[np.ndarray] = None):
    """Smallest h in (1, h_max] with 2*beta(s) <= beta(h*s) on the grid.

    The predicate is monotone in h for increasing beta, so the smallest
    admissible h is located by bisection to relative width 1e-6 and then
    re-validated.  Returns (h, None) on success, (None, witness_s) on
    failure everywhere up to h_max.
    """
    s = default_grid() if grid is None else np.asarray(grid)
    v = beta.values(s)
    tol = 1e-9 * (1.0 + np.abs(v))

    def holds(h: float) -> bool:
        return bool(np.all(2.0 * v <= beta.values(h * s) + tol))

    if not holds(h_max):
        gap = 2.0 * v - beta.values(h_max * s)
        return None, float(s[int(np.argmax(gap))])
    lo, hi = 1.0 + 1e-9, h_max
    for _ in range(60):
        mid = math.sqrt(lo * hi)
        if holds(mid):
            hi = mid
        else:
            lo = mid
    h = hi * (1.0 + 1e-9)
    if not holds(h):           # guard against the final rounding step
        h = hi * (1.0 + 1e-6)
    return float(h), None


def check_nonquasianalytic(beta: FunctionProfile, u_max: float = 400.0):
    """Classify the integral  int_1^inf beta(s)/s^2 ds.

    Returns a (status, value) pair with status in {"finite", "divergent",
    "undetermined"}: value is the integral estimate (quadrature on
    [1, e^U] plus a power-envelope tail), +inf for a certified divergence
    (local log-log slope >= 1 on the tail, which is conclusive for
    profiles convex in ln s), and nan when the budget is exhausted.
    """

    def log_beta(u: float) -> float:
        v = beta.value(math.exp(u))
        return math.log(v) if v > 0 else -INF

    def local_exponent(u: float, h: float = 1e-4) -> float:
        return (log_beta(u + h) - log_beta(u - h)) / (2.0 * h)

    # divergence certificate: slope >= 1 somewhere; conclusive when the
    # slope is nondecreasing (convex in ln s)
    for u_probe in (0.5, 1.0, 2.0, 4.0, 8.0, 16.0):
        g = local_exponent(u_probe)
        if g >= 1.0 - 1e-12:
            if beta.attributes.convex_in_log:
                return "divergent", INF
            # without convexity, require the slope to stay >= 1 on a decade
            tail = [local_exponent(u_probe + d) for d in (0.5, 1.0, 2.0)]
            if all(x >= 1.0 - 1e-12 for x in tail):
                return "divergent", INF

    def integrand(u: float) -> float:
        v = beta.value(math.exp(u))
        return v * math.exp(-u)

    u_hi = 20.0
    while u_hi <= u_max:
        g_end = local_exponent(u_hi)
        if g_end >= 1.0 - 1e-12 and beta.attributes.convex_in_log:
            return "divergent", INF
        decay = 1.0 - g_end
        if decay <= 1e-6:
            u_hi *= 2.0
            continue
        tail = integrand(u_hi) / decay
        drift = abs(g_end - local_exponent(u_hi * 0.75))
        if tail <= 1e-9 * (1.0 + abs(tail)) or (tail < 1e-6 and drift < 0.02):
            body = adaptive_simpson(integrand, 0.0, u_hi, tol=1e-11)
            return "finite", body + tail
        if drift < 0.02:
            # stable power envelope: the extrapolated tail is trustworthy
            body = adaptive_simpson(integrand, 0.0, u_hi, tol=1e-11)
            return "finite", body + tail
        u_hi *= 2.0
    return "undetermined", math.nan


def check_precedes(alpha1: FunctionProfile, alpha: FunctionProfile,
                   grid: Optional[np.ndarray] = None):
    """Order relation: alpha1(s) <= C + alpha(H*s) on a log grid.

    Scans H ascending over powers of two, and for each H the constants C
    ascending over {0, 1, 2, 4, ...}; a candidate pair must also survive a
    tail grid six decades past the base grid (rejecting fits that only hold
    because the base grid is finite).  Returns the first validated (C, H)
    or (None, witness_s).
    """
    base = default_grid() if grid is None else np.asarray(grid)
    tail = np.geomspace(base[-1], base[-1] * 1e6, 128)
    s = np.concatenate([base, tail])
    v1 = alpha1.values(s)
    h_lattice = [2.0 ** j for j in range(0, 11)]
    c_lattice = [0.0] + [2.0 ** j for j in range(0, 21)]
    for h in h_lattice:
        vh = alpha.values(h * s)
        tol = 1e-9 * (1.0 + np.abs(vh))
        gap = np.where(np.isinf(vh), -INF, v1 - vh)
        for c in c_lattice:
            if np.all(gap <= c + tol):
                return (c, h), None
    witness = float(s[int(np.argmax(v1 - alpha.values(h_lattice[-1] * s)))])
    return None, witness


def lemma2_margin(beta: FunctionProfile, eps: float,
                  grid: Optional[np.ndarray] = None):
    """Fit C_eps with beta(s) + ln s <= C_eps + beta((1+eps)*s).

    Returns (C_eps, None) or (None, witness_s) when the excess keeps
    growing at the far end of the extended grid (possible only when the
    doubling precondition is violated).
    """
    if eps <= 0:
        raise ValueError("lemma2_margin needs eps > 0")
    s = default_grid() if grid is None else np.asarray(grid)

    def excess_at(t: float) -> float:
        x = math.exp(t)
        return beta.value(x) + t - beta.value((1.0 + eps) * x)

    for _ in range(3):
        excess = beta.values(s) + np.log(s) - beta.values((1.0 + eps) * s)
        i = int(np.argmax(excess))
        if i < len(s) - 2:
            # polish around the grid argmax so the constant is an envelope
            lo = math.log(s[max(i - 1, 0)])
            hi = math.log(s[i + 1])
            peak = maximize_unimodal(excess_at, lo, hi).value
            return float(max(peak, excess[i], 0.0)), None
        # argmax at the edge: extend the grid (up to s = 1e12)
        if s[-1] >= 1e12:
            break
        s = np.geomspace(s[0], min(s[-1] * 1e3, 1e12), len(s))
    return None, float(s[-1])


def log_domination_threshold(beta: FunctionProfile, c: float,
                             s_hi: float = 1e9) -> Optional[float]:
    """Smallest grid point beyond which beta(s) >= c*ln(s) holds.

    Scans a fine log grid; None when the inequality still fails at s_hi.
    """
    s = np.geomspace(1.0 + 1e-9, s_hi, 4096)
    ok = beta.values(s) >= c * np.log(s)
    if not ok[-1]:
        return None
    # last violation index
    bad = np.nonzero(~ok)[0]
    if len(bad) == 0:
        return float(s[0])
    if bad[-1] == len(s) - 1:
        return None
    return float(s[bad[-1] + 1])
