"""Independent brute-force oracles used across the test suite.

Everything here is deliberately dumb: dense-grid suprema/infima, trapezoid
quadrature, leg-by-leg contraction enumeration.  The oracles never call the
library's search kernels, so agreement is a genuine two-route check.
"""

from __future__ import annotations

import math

import numpy as np


def _safe(fn, x):
    try:
        return fn(x)
    except OverflowError:
        return math.inf


def grid_sup_conjugate(alpha_fn, r, lo=1e-9, hi=1e9, points=200_001):
    """Dense-grid version of sup_{s>0}(r*s - alpha(s))."""
    s = np.geomspace(lo, hi, points)
    vals = r * s - np.array([_safe(alpha_fn, x) for x in s])
    vals = vals[np.isfinite(vals)]
    return max(0.0, float(np.max(vals)))


def grid_inf_conjugate(beta_fn, t, lo=1e-9, hi=1e9, points=200_001):
    """Dense-grid version of inf_{s>0}(s*t - beta(s))."""
    s = np.geomspace(lo, hi, points)
    vals = t * s - np.array([beta_fn(x) for x in s])
    return float(np.min(vals))


def grid_sup_power_weight(k, weight_fn, lo=1e-9, hi=1e9, points=100_001):
    """Dense-grid ln of sup_{r>0} r^k * exp(-weight(r))."""
    r = np.geomspace(lo, hi, points)
    vals = k * np.log(r) - np.array([weight_fn(x) for x in r])
    return float(np.max(vals))


def trapezoid_improper(f, a, b, points=400_001):
    """Plain trapezoid rule on a log-spaced grid of [a, b]."""
    x = np.geomspace(a, b, points)
    y = np.array([f(v) for v in x])
    return float(np.trapezoid(y, x))


def matching_expectation(degrees, weight):
    """Brute-force Wick expectation by perfect matchings of labeled legs.

    degrees: per-vertex leg counts (k_1, ..., k_n); weight(j, m) is the
    pair factor for an edge between vertices j < m.  Legs at the same
    vertex must not pair (normal ordering).  Returns the summed weight.
    """
    counts = matching_contraction_counts(degrees)
    total = 0.0
    for key, cnt in counts.items():
        term = cnt
        for (j, m), power in key:
            term *= weight(j, m) ** power
        total += term
    return total


def matching_contraction_counts(degrees):
    """Map {contraction multiset -> number of leg matchings realizing it}.

    The key is a tuple of ((j, m), power) pairs sorted by (j, m); the value
    counts perfect matchings of the labeled legs avoiding same-vertex pairs.
    """
    legs = []
    for vertex, k in enumerate(degrees):
        legs.extend([vertex] * k)
    n_legs = len(legs)
    counts: dict = {}
    if n_legs % 2 == 1:
        return counts

    def recurse(remaining, edges):
        if not remaining:
            key_counts: dict = {}
            for e in edges:
                key_counts[e] = key_counts.get(e, 0) + 1
            key = tuple(sorted(key_counts.items()))
            counts[key] = counts.get(key, 0) + 1
            return
        first = remaining[0]
        rest = remaining[1:]
        for i, other in enumerate(rest):
            if legs[first] == legs[other]:
                continue
            pair = tuple(sorted((legs[first], legs[other])))
            recurse(rest[:i] + rest[i + 1:], edges + [pair])

    recurse(list(range(n_legs)), [])
    return counts


def finite_difference_cr_residual(f, z, h=1e-6):
    """Max Cauchy-Riemann residual of a C->C function at complex z."""
    dx = (f(z + h) - f(z - h)) / (2 * h)
    dy = (f(z + 1j * h) - f(z - 1j * h)) / (2 * h)
    return abs(dx + 1j * dy) / (1.0 + abs(dx))
