"""Catalog of entire test functions with exact complex evaluation.

Every entry evaluates anywhere on C^n.  The closed-form catalog (gaussian,
cosh-decay, modulated and polynomial gaussians) is closed under the
combinators (sums, shifts, scalar multiples, pointwise and tensor
products), which is what the Riemann-sum approximation and the cone
decomposition build on.  ``z . z`` always means the complex bilinear sum
of squares, never the Hermitian form.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np


class TestFunction:
    """Callable on C^dim; subclasses implement ``eval``."""

    dim: int

    def eval(self, z: np.ndarray) -> complex:
        raise NotImplementedError

    def __call__(self, z) -> complex:
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        if z.shape != (self.dim,):
            raise ValueError(f"expected point in C^{self.dim}, got {z.shape}")
        return self.eval(z)

    def eval_many(self, zs: np.ndarray) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        return np.array([self.eval(z) for z in zs])

    def log_abs_many(self, zs: np.ndarray) -> np.ndarray:
        """ln |f| rowwise; overridden with exact exponents where the closed
        form admits one (avoids overflow in the tube suprema)."""
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            mags = np.abs(self.eval_many(zs))
            return np.where(mags > 0.0,
                            np.log(np.where(mags > 0.0, mags, 1.0)), -np.inf)

    # combinators ------------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, TestFunction):
            return PointwiseProduct(self, other)
        return Scaled(complex(other), self)

    __rmul__ = __mul__

    def __add__(self, other):
        return FiniteSum([self, other])

    def __sub__(self, other):
        return FiniteSum([self, Scaled(-1.0, other)])

    def shifted(self, offset) -> "Shifted":
        return Shifted(self, offset)


class Gaussian(TestFunction):
    """exp(-c * z.z); modulus e^{c(|q|^2 - |p|^2)} at z = p + iq."""

    def __init__(self, c: float = 1.0, dim: int = 1):
        if c <= 0:
            raise ValueError("gaussian needs c > 0")
        self.c, self.dim = float(c), dim

    def eval(self, z):
        return np.exp(-self.c * np.sum(z * z))

    def eval_many(self, zs):
        zs = np.asarray(zs, dtype=complex)
        with np.errstate(over="ignore"):
            return np.exp(-self.c * np.sum(zs * zs, axis=-1))

    def log_abs_many(self, zs):
        zs = np.asarray(zs, dtype=complex)
        return -self.c * np.real(np.sum(zs * zs, axis=-1))


class CoshDecay(TestFunction):
    """prod_j exp(-4 cosh z_j): entire, double-exponential real decay,
    bounded by e^{-n e^{|x|/n}} on the strip |y| < pi/3."""

    def __init__(self, dim: int = 1):
        self.dim = dim

    def eval(self, z):
        return np.exp(-4.0 * np.sum(np.cosh(z)))

    def eval_many(self, zs):
        zs = np.asarray(zs, dtype=complex)
        with np.errstate(over="ignore"):
            return np.exp(-4.0 * np.sum(np.cosh(zs), axis=-1))

    def log_abs_many(self, zs):
        zs = np.asarray(zs, dtype=complex)
        with np.errstate(over="ignore"):
            return -4.0 * np.real(np.sum(np.cosh(zs), axis=-1))


class Modulated(TestFunction):
    """exp(i p0 . z) times a base function (momentum shift)."""

    def __init__(self, p0, base: TestFunction):
        self.p0 = np.asarray(p0, dtype=float)
        self.base = base
        self.dim = base.dim
        if len(self.p0) != self.dim:
            raise ValueError("p0 dimension mismatch")

    def eval(self, z):
        return np.exp(1j * np.dot(self.p0, z)) * self.base.eval(z)

    def eval_many(self, zs):
        zs = np.asarray(zs, dtype=complex)
        return np.exp(1j * (zs @ self.p0)) * self.base.eval_many(zs)

    def log_abs_many(self, zs):
        zs = np.asarray(zs, dtype=complex)
        return -np.imag(zs) @ self.p0 + self.base.log_abs_many(zs)


class PolyGaussian(TestFunction):
    """z^kappa * exp(-c z.z) for a multi-index kappa."""

    def __init__(self, kappa: Sequence[int], c: float = 1.0):
        self.kappa = tuple(int(k) for k in kappa)
        if any(k < 0 for k in self.kappa):
            raise ValueError("multi-index must be nonnegative")
        self.c = float(c)
        self.dim = len(self.kappa)

    def eval(self, z):
        mono = np.prod([zj ** k for zj, k in zip(z, self.kappa)])
        return mono * np.exp(-self.c * np.sum(z * z))


class Constant(TestFunction):
    def __init__(self, value: complex = 1.0, dim: int = 1):
        self.value, self.dim = complex(value), dim

    def eval(self, z):
        return self.value

    def eval_many(self, zs):
        return np.full(len(zs), self.value, dtype=complex)

    def log_abs_many(self, zs):
        out = math.log(abs(self.value)) if self.value != 0.0 else -math.inf
        return np.full(len(zs), out)


class Scaled(TestFunction):
    def __init__(self, factor: complex, base: TestFunction):
        self.factor, self.base = complex(factor), base
        self.dim = base.dim

    def eval(self, z):
        return self.factor * self.base.eval(z)

    def eval_many(self, zs):
        return self.factor * self.base.eval_many(zs)

    def log_abs_many(self, zs):
        if self.factor == 0.0:
            return np.full(len(zs), -np.inf)
        return math.log(abs(self.factor)) + self.base.log_abs_many(zs)


class Shifted(TestFunction):
    """base(z - offset) for a real offset."""

    def __init__(self, base: TestFunction, offset):
        self.base = base
        self.offset = np.asarray(offset, dtype=float)
        self.dim = base.dim

    def eval(self, z):
        return self.base.eval(z - self.offset)

    def eval_many(self, zs):
        return self.base.eval_many(np.asarray(zs, dtype=complex) - self.offset)

    def log_abs_many(self, zs):
        return self.base.log_abs_many(np.asarray(zs, dtype=complex)
                                      - self.offset)


class FiniteSum(TestFunction):
    def __init__(self, terms: Sequence[TestFunction]):
        terms = list(terms)
        self.terms = terms
        self.dim = terms[0].dim
        if any(t.dim != self.dim for t in terms):
            raise ValueError("sum terms must share a dimension")

    def eval(self, z):
        return sum(t.eval(z) for t in self.terms)

    def eval_many(self, zs):
        out = self.terms[0].eval_many(zs)
        for t in self.terms[1:]:
            out = out + t.eval_many(zs)
        return out


class PointwiseProduct(TestFunction):
    def __init__(self, f: TestFunction, g: TestFunction):
        if f.dim != g.dim:
            raise ValueError("pointwise product needs equal dims")
        self.f, self.g = f, g
        self.dim = f.dim

    def eval(self, z):
        return self.f.eval(z) * self.g.eval(z)

    def eval_many(self, zs):
        return self.f.eval_many(zs) * self.g.eval_many(zs)

    def log_abs_many(self, zs):
        return self.f.log_abs_many(zs) + self.g.log_abs_many(zs)


class TensorProduct(TestFunction):
    """f1(z_1..z_k) * f2(z_{k+1}..) ...: dims concatenate."""

    def __init__(self, factors: Sequence[TestFunction]):
        self.factors = list(factors)
        self.dim = sum(f.dim for f in self.factors)

    def eval(self, z):
        out, off = 1.0 + 0.0j, 0
        for f in self.factors:
            out *= f.eval(z[off:off + f.dim])
            off += f.dim
        return out


class WeightedFunction(TestFunction):
    """weight(z) * base(z) for a scalar-valued callable weight.

    Used for the cone decomposition, where the weight is a quadrature
    closure (not necessarily a catalog entry).
    """

    def __init__(self, weight: Callable[[np.ndarray], complex],
                 base: TestFunction, label: str = "weighted"):
        self.weight, self.base = weight, base
        self.dim = base.dim
        self.label = label

    def eval(self, z):
        return self.weight(z) * self.base.eval(z)


class RiemannMollifier(TestFunction):
    """e_nu(p) = sum_{|kappa| < nu^2} e0(p - kappa/nu) nu^{-n}.

    The Riemann-sum approximation to the unit-mass integral of shifted
    copies of e0; entire whenever e0 is.  |kappa| is the max-norm over the
    integer multi-index.
    """

    def __init__(self, e0: TestFunction, nu: int):
        if nu < 1:
            raise ValueError("nu >= 1")
        self.e0, self.nu = e0, int(nu)
        self.dim = e0.dim
        rng = range(-(nu * nu - 1), nu * nu)
        if self.dim == 1:
            self.shifts = np.array([[k / nu] for k in rng])
        elif self.dim == 2:
            self.shifts = np.array([[a / nu, b / nu]
                                    for a in rng for b in rng])
        else:
            raise ValueError("Riemann mollifier supports dims 1 and 2")
        self.weight = nu ** (-self.dim)

    def eval(self, z):
        return self.weight * np.sum(self.e0.eval_many(z[None, :] - self.shifts))

    def eval_many(self, zs):
        zs = np.asarray(zs, dtype=complex)
        block = max(1, 2_000_000 // max(1, len(self.shifts)))
        out = np.empty(len(zs), dtype=complex)
        for i in range(0, len(zs), block):
            chunk = zs[i:i + block, None, :] - self.shifts[None, :, :]
            vals = self.e0.eval_many(chunk.reshape(-1, self.dim))
            out[i:i + block] = vals.reshape(-1, len(self.shifts)).sum(axis=1)
        return self.weight * out


def cauchy_riemann_residual(f: TestFunction, z: np.ndarray,
                            h: float = 1e-5) -> float:
    """Max finite-difference CR residual over the coordinates at z."""
    z = np.asarray(z, dtype=complex)
    worst = 0.0
    for j in range(f.dim):
        e = np.zeros(f.dim)
        e[j] = 1.0
        dx = (f.eval(z + h * e) - f.eval(z - h * e)) / (2 * h)
        dy = (f.eval(z + 1j * h * e) - f.eval(z - 1j * h * e)) / (2 * h)
        worst = max(worst, abs(dx + 1j * dy) / (1.0 + abs(dx)))
    return worst


def validate_entire(f: TestFunction, points: int = 12, seed: int = 0,
                    tol: float = 1e-6) -> bool:
    """Spot-check analyticity by CR residuals at low-discrepancy points."""
    from .search import halton_points

    pts = 4.0 * (halton_points(points, 2 * f.dim, seed) - 0.5)
    for row in pts:
        z = row[:f.dim] + 1j * row[f.dim:]
        if cauchy_riemann_residual(f, z) > tol:
            return False
    return True


def cauchy_derivative(f: TestFunction, p: np.ndarray, kappa: Sequence[int],
                      radius: float = 1.0, nodes: int | None = None) -> complex:
    """partial^kappa f at a real point via circle quadrature per axis.

    Trapezoid on the circle is spectrally accurate for entire functions;
    the node count defaults to 4|kappa| + 16.
    """
    kappa = tuple(int(k) for k in kappa)
    total = sum(kappa)
    m = nodes or (4 * total + 16)
    theta = 2.0 * math.pi * np.arange(m) / m
    ring = radius * np.exp(1j * theta)

    def recurse(z: np.ndarray, axis: int) -> complex:
        if axis == len(kappa):
            return f.eval(z)
        k = kappa[axis]
        if k == 0:
            return recurse(z, axis + 1)
        vals = np.empty(m, dtype=complex)
        for i, w in enumerate(ring):
            zz = z.copy()
            zz[axis] = zz[axis] + w
            vals[i] = recurse(zz, axis + 1)
        # kappa_j! / (2 pi i) contour integral = k!/(m r^k) sum e^{-i k theta}
        return (math.factorial(k) / (m * radius ** k)
                * np.sum(vals * np.exp(-1j * k * theta)))

    return recurse(np.asarray(p, dtype=complex), 0)
