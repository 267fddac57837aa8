"""Defining sequences and indicator functions.

From a pair of scale profiles the package builds the sequences

    a_k = sup_{r>=0} r^k exp(-alpha_*(r)),    b_l = sup_{s>=0} s^l exp(-beta(s)),

stores them as natural logarithms (b_l ~ l^{2l} overflows double precision
near l = 85), and exposes the indicator function b(s) = sup_l s^l / b_l.
The saddle-value identity

    sup_{r>=0} r^k exp(-alpha_*(r)) = (k/e)^k inf_{s>0} s^{-k} exp(alpha(s))

is verified two-sidedly by ``lemma1_check``; the sandwich
b(s) <= exp(beta(s)) <= C' b((1+eps) s) by ``lemma3_sandwich``; and the
regularity condition a_{k+l} <= C h^{k+l} a_k a_l by ``check_regularity``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .profiles import FunctionProfile, convex_conjugate
from .report import FAIL, PASS, UNDETERMINED, BoundReport
from .search import maximize_unimodal, minimize_unimodal

DEFAULT_K_MAX = 200


class SequenceError(ValueError):
    pass


@dataclass(frozen=True)
class LogSequence:
    """ln a_k for k = 0..k_max; entries finite or +inf, never NaN."""

    values: np.ndarray
    source: str = "user"

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if np.any(np.isnan(v)):
            raise SequenceError("log sequence contains NaN")
        if np.any(np.isneginf(v)):
            raise SequenceError("log sequence contains -inf (a_k = 0)")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.values)

    @property
    def k_max(self) -> int:
        return len(self.values) - 1

    @staticmethod
    def from_terms(terms, source: str = "closed-form") -> "LogSequence":
        """Build from plain a_k terms (converted to logs; a_k > 0)."""
        arr = np.asarray(terms, dtype=float)
        if np.any(arr <= 0):
            raise SequenceError("sequence terms must be positive")
        return LogSequence(np.log(arr), source)

    def write_csv(self, path, label: str = "ln_a_k"):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["k", label])
            for k, v in enumerate(self.values):
                w.writerow([k, repr(float(v))])


# ---------------------------------------------------------------------------
# defining sequences (a_k from alpha, b_l from beta)
# ---------------------------------------------------------------------------

def _closed_form_log_a(alpha: FunctionProfile, k: int) -> Optional[float]:
    if alpha.kind == "linear":
        return 0.0
    if alpha.kind == "quadratic":
        # alpha_* = r^2/4; stationary ln r = ln(2k)/2
        return 0.0 if k == 0 else 0.5 * k * (math.log(2.0 * k) - 1.0)
    if alpha.kind == "step":
        radius = alpha.params["radius"]
        # alpha_* = radius * r: sup r^k e^{-R r} at r = k/R
        return 0.0 if k == 0 else k * (math.log(k / radius) - 1.0)
    return None


def _closed_form_log_b(beta: FunctionProfile, l: int) -> Optional[float]:
    if beta.kind == "power":
        g = beta.params["gamma"]
        # sup s^l e^{-s^g} at s^g = l/g
        return 0.0 if l == 0 else (l / g) * (math.log(l / g) - 1.0)
    return None


def defining_sequence(profile: FunctionProfile, role: str,
                      k_max: int = DEFAULT_K_MAX) -> LogSequence:
    """Sequences of the space built from a profile pair.

    role "a-from-alpha": ln a_k = sup_r (k ln r - alpha_*(r));
    role "b-from-beta":  ln b_l = sup_s (l ln s - beta(s)).
    Both objectives are concave in the log coordinate.  Closed forms are
    used when the catalog admits them (cross-checked against the search
    path in the tests).  A divergent supremum means the profile is unfit
    for the role and raises, naming the offending index.
    """
    if role == "a-from-alpha":
        closed = _closed_form_log_a
        if not profile.attributes.convex:
            raise SequenceError("a-from-alpha requires a convex profile")

        def objective_factory(k):
            def f(t):
                v = convex_conjugate(profile, math.exp(t))
                return -math.inf if v == math.inf else k * t - v
            return f
    elif role == "b-from-beta":
        closed = _closed_form_log_b

        def objective_factory(l):
            def f(t):
                v = profile.value(math.exp(t))
                return -math.inf if v == math.inf else l * t - v
            return f
    else:
        raise SequenceError(f"unknown role {role!r}")

    out = np.empty(k_max + 1)
    for k in range(k_max + 1):
        cf = closed(profile, k)
        if cf is not None:
            out[k] = cf
            continue
        if k == 0:
            # sup e^{-alpha_*} = e^0 (alpha_*(0) = 0); same for beta(0) = 0
            out[k] = -profile.attributes.value_at_0 if role == "b-from-beta" else 0.0
            continue
        res = maximize_unimodal(objective_factory(k))
        if res.diverged:
            raise SequenceError(
                f"divergent supremum at index {k}: profile {profile.kind!r} "
                f"is unfit for role {role!r}")
        out[k] = max(res.value, 0.0) if k == 0 else res.value
    return LogSequence(out, source="from-profile")


def lemma1_check(alpha: FunctionProfile, k: int) -> float:
    """Two-sided saddle-value check; returns |ln LHS - ln RHS|.

    LHS goes through the conjugate and an outer supremum search; RHS is
    (k/e)^k inf_{s>0} s^{-k} e^{alpha(s)} by direct infimum search.  The
    two routes share no intermediate values.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return 0.0

    def lhs_obj(t):
        v = convex_conjugate(alpha, math.exp(t))
        return -math.inf if v == math.inf else k * t - v

    lhs = maximize_unimodal(lhs_obj)
    ln_lhs = lhs.value if not lhs.diverged else math.inf

    def rhs_obj(t):
        v = alpha.value(math.exp(t))
        return math.inf if v == math.inf else v - k * t

    rhs = minimize_unimodal(rhs_obj)
    ln_rhs = k * (math.log(k) - 1.0) + rhs.value
    return abs(ln_lhs - ln_rhs)


# ---------------------------------------------------------------------------
# indicator functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IndicatorValue:
    log_value: float
    value: float
    argmax: int
    truncated: bool


class IndicatorFunction:
    """b(s) = sup_l s^l / b_l over the stored range of l.

    Argmax ties resolve to the smallest l (determinism for report
    diffing); an argmax landing on the boundary index is flagged as
    truncated -- the dominant silent failure mode of the finite range.
    """

    def __init__(self, seq: LogSequence):
        self.seq = seq
        self._ls = np.arange(len(seq.values), dtype=float)
        self._cache: dict[float, IndicatorValue] = {}

    def eval_report(self, s: float) -> IndicatorValue:
        if s < 0:
            raise ValueError("indicator argument must be >= 0")
        hit = self._cache.get(s)
        if hit is not None:
            return hit
        if s == 0.0:
            # only l = 0 survives: b(0) = 1/b_0
            out = IndicatorValue(-float(self.seq.values[0]),
                                 math.exp(-float(self.seq.values[0])), 0, False)
        else:
            scores = self._ls * math.log(s) - self.seq.values
            arg = int(np.argmax(scores))   # first occurrence = smallest l
            log_v = float(scores[arg])
            value = math.exp(log_v) if log_v < 709.0 else math.inf
            out = IndicatorValue(log_v, value, arg, arg == self.seq.k_max)
        self._cache[s] = out
        return out

    def log_eval(self, s: float) -> float:
        return self.eval_report(s).log_value

    def eval(self, s: float) -> float:
        return self.eval_report(s).value

    def log_eval_grid(self, s: np.ndarray) -> np.ndarray:
        scores = np.log(s)[:, None] * self._ls[None, :] - self.seq.values[None, :]
        return np.max(scores, axis=1)

    def argmax_grid(self, s: np.ndarray) -> np.ndarray:
        scores = np.log(s)[:, None] * self._ls[None, :] - self.seq.values[None, :]
        return np.argmax(scores, axis=1)

    def write_csv(self, path, s_grid):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["s", "ln_b"])
            for s in s_grid:
                w.writerow([repr(float(s)), repr(self.log_eval(float(s)))])


def indicator_eval(seq: LogSequence, s: float) -> IndicatorValue:
    return IndicatorFunction(seq).eval_report(s)


# ---------------------------------------------------------------------------
# lemma 3 sandwich and regularity
# ---------------------------------------------------------------------------

def lemma3_sandwich(beta: FunctionProfile, eps: float,
                    s_grid: Optional[np.ndarray] = None,
                    k_max: int = DEFAULT_K_MAX) -> BoundReport:
    """b(s) <= e^{beta(s)} <= C' b((1+eps) s) on a log grid.

    The left inequality is exact (up to float rounding) by construction of
    the supremum; the right constant is fitted and must be stable under
    grid doubling (ratio below 1.1).  A supremum truncated at the top
    index retries with a doubled range before giving up as undetermined.
    """
    if eps <= 0:
        raise ValueError("lemma3_sandwich needs eps > 0")
    s = np.geomspace(1e-3, 1e4, 512) if s_grid is None else np.asarray(s_grid)

    for attempt in range(6):
        seq = defining_sequence(beta, "b-from-beta", k_max)
        ind = IndicatorFunction(seq)
        scaled = (1.0 + eps) * s
        if np.any(ind.argmax_grid(scaled) >= seq.k_max):
            # jump past the needed range: the supremum over l saturates once
            # the slope of ln b_l reaches ln s_max, and that slope grows
            # roughly like the slope at the current top
            slope_top = float(seq.values[-1] - seq.values[-2])
            need = math.log(float(scaled[-1]))
            factor = 2.0 if slope_top <= 0 else max(2.0, need / slope_top)
            k_max = int(k_max * min(factor, 8.0)) + 1
            continue

        beta_vals = beta.values(s)
        left_gap = ind.log_eval_grid(s) - beta_vals
        left_tol = 1e-9 * (1.0 + np.abs(beta_vals))
        if np.any(left_gap > left_tol):
            i = int(np.argmax(left_gap))
            return BoundReport("lemma3-sandwich", FAIL,
                               witness={"s": float(s[i]),
                                        "excess": float(left_gap[i])},
                               budgets={"k_max": k_max, "grid": len(s)})

        def fit_log_c(grid):
            return float(np.max(beta.values(grid)
                                - ind.log_eval_grid((1.0 + eps) * grid)))

        log_c = fit_log_c(s)
        fine = np.geomspace(s[0], s[-1], 2 * len(s))
        if np.any(ind.argmax_grid((1.0 + eps) * fine) >= seq.k_max):
            k_max *= 2
            continue
        log_c_fine = fit_log_c(fine)
        ratio = math.exp(abs(log_c_fine - log_c))
        status = PASS if ratio < 1.1 else UNDETERMINED
        return BoundReport(
            "lemma3-sandwich", status,
            constants={"C_prime": math.exp(max(log_c, log_c_fine, 0.0)),
                       "log_C_prime": max(log_c, log_c_fine, 0.0),
                       "refinement_ratio": ratio},
            budgets={"k_max": k_max, "grid": len(s), "eps": eps},
            warnings=[] if status == PASS else ["fit unstable under refinement"])

    return BoundReport("lemma3-sandwich", UNDETERMINED,
                       budgets={"k_max": k_max},
                       warnings=["indicator supremum truncated at every retry"])


def check_regularity(seq: LogSequence, h_lattice=(1.0, 2.0, 4.0, 8.0, 16.0),
                     c_cap: float = 1e6):
    """Fit (C, h) with a_{k+l} <= C h^{k+l} a_k a_l over all k+l <= k_max.

    Returns ((C, h), None) for the smallest lattice h whose fitted C stays
    below the cap, else (None, (k, l) witness pair).
    """
    v = seq.values
    n = len(v)
    # D_m = max_{k+l=m} ln a_m - ln a_k - ln a_l
    d = np.full(n, -np.inf)
    arg: dict[int, tuple[int, int]] = {}
    for m in range(n):
        best, best_pair = -np.inf, (0, m)
        for k in range(m // 2 + 1):
            if not np.isfinite(v[m]) or not np.isfinite(v[k]) or \
               not np.isfinite(v[m - k]):
                continue
            gap = v[m] - v[k] - v[m - k]
            if gap > best:
                best, best_pair = gap, (k, m - k)
        d[m] = best
        arg[m] = best_pair
    ms = np.arange(n)
    for h in h_lattice:
        log_c = float(np.max(d - ms * math.log(h)))
        if log_c <= math.log(c_cap):
            return (max(math.exp(log_c), 1.0), h), None
    worst = int(np.argmax(d - ms * math.log(h_lattice[-1])))
    return None, arg[worst]
