"""Log-domain search and quadrature kernels.

All sup/inf searches over the half-axis s > 0 run in t = ln s coordinates.
Objectives are assumed unimodal there (the callers guarantee this through
declared convexity attributes); brackets are expanded by factor 10 until the
maximum is interior, and a ternary search refines to relative width 1e-12.
Divergence is declared when the objective is still increasing past
s = 1e270 (a documented detection limit near the double-precision range,
not a proof).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

LN10 = math.log(10.0)

#: bracket limits: searches never look below s = 1e-280 or above s = 1e285;
#: divergence is declared once the climbing edge passes s = 1e270.  The
#: wide range keeps double conjugation exact for exponential-type scales,
#: whose conjugate argmax sits at s ~ e^r.
T_FLOOR = math.log(1e-280)
T_CEIL = math.log(1e285)
T_DIVERGE = math.log(1e270)

TERNARY_REL_WIDTH = 1e-12


@dataclass(frozen=True)
class SearchResult:
    value: float          # supremum (or infimum for minimize)
    arg: float            # t = ln s at the optimum; nan when divergent
    diverged: bool        # objective still climbing at the detection limit
    at_lower_edge: bool   # optimum pinned at the lower bracket limit
    evaluations: int


def maximize_unimodal(f: Callable[[float], float], t_lo: float = -3.0,
                      t_hi: float = 3.0) -> SearchResult:
    """Maximize a unimodal f(t), t = ln s, with bracket expansion.

    Returns +inf with ``diverged=True`` when f keeps increasing beyond the
    divergence limit.  -inf plateaus (extended-real objectives) are handled:
    the bracket shrinks toward the finite region.
    """
    nev = 0

    def ev(t: float) -> float:
        nonlocal nev
        nev += 1
        return f(t)

    lo, hi = float(t_lo), float(t_hi)
    f_lo, f_hi = ev(lo), ev(hi)

    # expand right while the right edge dominates; on the last step the
    # bracket widens to include the probe (the peak may sit between the
    # old edge and the probe)
    while f_hi >= f_lo and f_hi > -math.inf:
        probe = hi + LN10
        if probe > T_CEIL:
            if ev(hi - 0.25 * LN10) < f_hi:
                return SearchResult(math.inf, math.nan, True, False, nev)
            break
        f_probe = ev(probe)
        if f_probe <= f_hi:
            hi, f_hi = probe, f_probe
            break
        lo, f_lo = hi, f_hi
        hi, f_hi = probe, f_probe
        if hi >= T_DIVERGE and ev(hi + LN10) > f_hi:
            # still climbing at the detection limit
            return SearchResult(math.inf, math.nan, True, False, nev)

    # expand left while the left edge dominates
    at_edge = False
    while f_lo >= f_hi and f_lo > -math.inf:
        probe = lo - LN10
        if probe < T_FLOOR:
            at_edge = True
            break
        f_probe = ev(probe)
        if f_probe <= f_lo:
            lo, f_lo = probe, f_probe
            break
        hi, f_hi = lo, f_lo
        lo, f_lo = probe, f_probe

    # ternary refinement on [lo, hi]
    width_goal = TERNARY_REL_WIDTH * max(1.0, abs(lo), abs(hi))
    while hi - lo > width_goal:
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if ev(m1) < ev(m2):
            lo = m1
        else:
            hi = m2
    t_best = 0.5 * (lo + hi)
    return SearchResult(ev(t_best), t_best, False, at_edge, nev)


def minimize_unimodal(f: Callable[[float], float], t_lo: float = -3.0,
                      t_hi: float = 3.0) -> SearchResult:
    res = maximize_unimodal(lambda t: -f(t), t_lo, t_hi)
    value = -res.value if not res.diverged else -math.inf
    return SearchResult(value, res.arg, res.diverged, res.at_lower_edge,
                        res.evaluations)


def maximize_scan_refine(f: Callable[[float], float], t_lo: float, t_hi: float,
                         coarse: int = 257) -> SearchResult:
    """Coarse scan then ternary refinement around the best coarse cell.

    Robust variant for objectives that are unimodal only piecewise (used by
    the inner infima of the indicator-domination checks, where the scan
    locates the global basin first).
    """
    step = (t_hi - t_lo) / (coarse - 1)
    best_i, best_v = 0, -math.inf
    nev = 0
    for i in range(coarse):
        v = f(t_lo + i * step)
        nev += 1
        if v > best_v:
            best_i, best_v = i, v
    lo = t_lo + max(0, best_i - 1) * step
    hi = t_lo + min(coarse - 1, best_i + 1) * step
    inner = maximize_unimodal(f, lo, hi)
    return SearchResult(inner.value, inner.arg, inner.diverged,
                        inner.at_lower_edge, inner.evaluations + nev)


def minimize_scan_refine(f: Callable[[float], float], t_lo: float, t_hi: float,
                         coarse: int = 257) -> SearchResult:
    res = maximize_scan_refine(lambda t: -f(t), t_lo, t_hi, coarse)
    value = -res.value if not res.diverged else -math.inf
    return SearchResult(value, res.arg, res.diverged, res.at_lower_edge,
                        res.evaluations)


def bisect_increasing(g: Callable[[float], float], lo: float, hi: float,
                      iters: int = 80) -> float:
    """Root of a nondecreasing g on [lo, hi] with g(lo) <= 0 <= g(hi)."""
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if g(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def adaptive_simpson(f: Callable[[float], float], a: float, b: float,
                     tol: float = 1e-10, max_depth: int = 48) -> float:
    """Adaptive Simpson quadrature with the standard 1/15 error estimate."""

    def simpson(x0: float, x2: float, f0: float, f1: float, f2: float) -> float:
        return (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2)

    def recurse(x0, x2, f0, f1, f2, whole, eps, depth):
        xm = 0.5 * (x0 + x2)
        xl, xr = 0.5 * (x0 + xm), 0.5 * (xm + x2)
        fl, fr = f(xl), f(xr)
        left = simpson(x0, xm, f0, fl, f1)
        right = simpson(xm, x2, f1, fr, f2)
        if depth <= 0 or abs(left + right - whole) <= 15.0 * eps:
            return left + right + (left + right - whole) / 15.0
        return (recurse(x0, xm, f0, fl, f1, left, eps / 2.0, depth - 1) +
                recurse(xm, x2, f1, fr, f2, right, eps / 2.0, depth - 1))

    fa, fb = f(a), f(b)
    fm = f(0.5 * (a + b))
    whole = simpson(a, b, fa, fm, fb)
    return recurse(a, b, fa, fm, fb, whole, tol, max_depth)


def log_sum_exp(terms) -> float:
    """ln(sum(exp(t_i))) without overflow; terms may contain -inf."""
    m = -math.inf
    for t in terms:
        if t > m:
            m = t
    if m == -math.inf:
        return -math.inf
    acc = 0.0
    for t in terms:
        acc += math.exp(t - m)
    return m + math.log(acc)


def halton(index: int, base: int) -> float:
    """Van der Corput radical inverse; deterministic low-discrepancy driver."""
    result, f = 0.0, 1.0
    i = index
    while i > 0:
        f /= base
        result += f * (i % base)
        i //= base
    return result


_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)


def halton_points(count: int, dim: int, seed: int = 0):
    """count x dim array of Halton points, offset deterministically by seed."""
    import numpy as np

    if dim > len(_PRIMES):
        raise ValueError(f"halton_points supports dim <= {len(_PRIMES)}")
    out = np.empty((count, dim))
    offset = 17 + (seed % 65537)
    for j in range(dim):
        b = _PRIMES[j]
        out[:, j] = [halton(i + offset, b) for i in range(count)]
    return out


def sphere_points(count: int, dim: int, seed: int = 0):
    """Deterministic low-discrepancy points on the unit sphere in R^dim."""
    import numpy as np
    from scipy.special import ndtri

    if dim == 1:
        pts = np.ones((count, 1))
        pts[1::2, 0] = -1.0
        return pts
    u = halton_points(count, dim, seed)
    # avoid the exact 0/1 edges of the unit cube before the Gaussian map
    g = ndtri(np.clip(u, 1e-12, 1.0 - 1e-12))
    norms = np.linalg.norm(g, axis=1)
    norms[norms == 0.0] = 1.0
    return g / norms[:, None]
