"""Closed cones in R^N: membership, distance, duals, separation.

Conventions.  Vectors are plain numpy arrays.  Minkowski components are
ordered (p_0, p_1, ..., p_{d-1}) with signature (+, -, ..., -); the forward
light cone is p_0 >= |spatial part|.  All distances, norms and dual
pairings are Euclidean, and every report records that convention (the
max-norm alternative is never used here).

The spectral cone of order n collects momenta whose trailing partial sums
p_m + ... + p_n all lie in the closed backward (or forward) light cone.
Its dual has the closed form  y_1 in cone, y_j - y_{j-1} in cone  -- used
directly instead of sampling.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import nnls

from .search import halton_points, sphere_points

NORM_CONVENTION = "euclidean"
DEFAULT_SAMPLES = 10_000
MEMBERSHIP_TOL = 1e-9


def minkowski_square(p: np.ndarray) -> float:
    p = np.asarray(p)
    return float(p[0] ** 2 - np.dot(p[1:], p[1:]))


def _unit(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("zero vector has no direction")
    return v / n


@dataclass(frozen=True)
class Cone:
    """A closed cone in R^dim, one of the catalog variants.

    variant: lorentz-forward | lorentz-backward | circular | half-space |
             polyhedral (generators and/or normals) | product | spectral |
             spectral-dual | dual-of | origin | full-space
    """

    variant: str
    dim: int
    payload: dict = field(default_factory=dict)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def lorentz_forward(d: int) -> "Cone":
        return Cone("lorentz-forward", d)

    @staticmethod
    def lorentz_backward(d: int) -> "Cone":
        return Cone("lorentz-backward", d)

    @staticmethod
    def circular(axis, half_angle: float) -> "Cone":
        """Circular cone {p: p.axis >= |p| cos(half_angle)}, 0 < angle < pi/2."""
        if not 0.0 < half_angle < math.pi / 2:
            raise ValueError("half_angle must lie in (0, pi/2)")
        a = _unit(axis)
        return Cone("circular", len(a), {"axis": tuple(a),
                                         "half_angle": float(half_angle)})

    @staticmethod
    def half_space(normal) -> "Cone":
        n = _unit(normal)
        return Cone("half-space", len(n), {"normal": tuple(n)})

    @staticmethod
    def ray(direction) -> "Cone":
        g = _unit(direction)
        return Cone("polyhedral", len(g), {"generators": (tuple(g),)})

    @staticmethod
    def from_generators(generators) -> "Cone":
        gens = tuple(tuple(_unit(g)) for g in generators)
        return Cone("polyhedral", len(gens[0]), {"generators": gens})

    @staticmethod
    def from_normals(normals) -> "Cone":
        ns = tuple(tuple(_unit(n)) for n in normals)
        return Cone("polyhedral", len(ns[0]), {"normals": ns})

    @staticmethod
    def product(cones) -> "Cone":
        cones = tuple(cones)
        return Cone("product", sum(c.dim for c in cones), {"factors": cones})

    @staticmethod
    def spectral(n: int, d: int, sign: str = "-") -> "Cone":
        if sign not in ("+", "-"):
            raise ValueError("sign must be '+' or '-'")
        return Cone("spectral", n * d, {"n": n, "d": d, "sign": sign})

    @staticmethod
    def spectral_dual(n: int, d: int, sign: str = "-") -> "Cone":
        return Cone("spectral-dual", n * d, {"n": n, "d": d, "sign": sign})

    @staticmethod
    def origin(dim: int) -> "Cone":
        return Cone("origin", dim)

    @staticmethod
    def full(dim: int) -> "Cone":
        return Cone("full-space", dim)

    @staticmethod
    def dual_of(inner: "Cone") -> "Cone":
        closed = dual_cone(inner)
        if closed is not None:
            return closed
        return Cone("dual-of", inner.dim, {"inner": inner})

    # -- helpers ------------------------------------------------------------

    def _blocks(self, p: np.ndarray) -> list[np.ndarray]:
        d = self.payload["d"]
        return [p[i * d:(i + 1) * d] for i in range(self.payload["n"])]

    def _light(self) -> "Cone":
        d = self.payload["d"]
        return (Cone.lorentz_backward(d) if self.payload["sign"] == "-"
                else Cone.lorentz_forward(d))

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        payload = dict(self.payload)
        if self.variant == "product":
            payload["factors"] = [c.to_dict() for c in payload["factors"]]
        if self.variant == "dual-of":
            payload["inner"] = payload["inner"].to_dict()
        return {"variant": self.variant, "dim": self.dim, "payload": payload}

    @staticmethod
    def from_dict(d: dict) -> "Cone":
        payload = dict(d.get("payload") or {})
        if d["variant"] == "product":
            payload["factors"] = tuple(Cone.from_dict(x)
                                       for x in payload["factors"])
        if d["variant"] == "dual-of":
            payload["inner"] = Cone.from_dict(payload["inner"])
        for key in ("generators", "normals"):
            if key in payload:
                payload[key] = tuple(tuple(v) for v in payload[key])
        if "axis" in payload:
            payload["axis"] = tuple(payload["axis"])
        return Cone(d["variant"], d["dim"], payload)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------

def contains(cone: Cone, p, tol: float = 0.0) -> bool:
    p = np.asarray(p, dtype=float)
    if p.shape != (cone.dim,):
        raise ValueError(f"point has dim {p.shape}, cone needs ({cone.dim},)")
    v = cone.variant
    if v == "full-space":
        return True
    if v == "origin":
        return bool(np.all(p == 0.0))
    if v == "lorentz-forward":
        return bool(p[0] + tol >= np.linalg.norm(p[1:]))
    if v == "lorentz-backward":
        return bool(-p[0] + tol >= np.linalg.norm(p[1:]))
    if v == "circular":
        a = np.array(cone.payload["axis"])
        return bool(float(p @ a) + tol >= math.cos(cone.payload["half_angle"])
                    * np.linalg.norm(p))
    if v == "half-space":
        return bool(float(p @ np.array(cone.payload["normal"])) >= -tol)
    if v == "polyhedral":
        if "normals" in cone.payload:
            ns = np.array(cone.payload["normals"])
            return bool(np.all(ns @ p >= -tol - MEMBERSHIP_TOL * np.linalg.norm(p)))
        gens = np.array(cone.payload["generators"]).T
        _, resid = nnls(gens, p)
        return resid <= tol + MEMBERSHIP_TOL * (1.0 + np.linalg.norm(p))
    if v == "product":
        off = 0
        for c in cone.payload["factors"]:
            if not contains(c, p[off:off + c.dim], tol):
                return False
            off += c.dim
        return True
    if v == "spectral":
        light = cone._light()
        blocks = cone._blocks(p)
        tail = np.zeros(cone.payload["d"])
        for b in reversed(blocks):
            tail = tail + b
            if not contains(light, tail, tol):
                return False
        return True
    if v == "spectral-dual":
        light = cone._light()
        blocks = cone._blocks(p)
        prev = np.zeros(cone.payload["d"])
        for b in blocks:
            if not contains(light, b - prev, tol):
                return False
            prev = b
        return True
    if v == "dual-of":
        return dual_contains(cone.payload["inner"], p)
    raise ValueError(f"unknown cone variant {v!r}")


# ---------------------------------------------------------------------------
# duals
# ---------------------------------------------------------------------------

def dual_cone(cone: Cone) -> Optional[Cone]:
    """Closed-form dual when the variant admits one, else None."""
    v = cone.variant
    if v in ("lorentz-forward", "lorentz-backward"):
        return cone                     # self-dual under the Euclidean pairing
    if v == "circular":
        return Cone.circular(cone.payload["axis"],
                             math.pi / 2 - cone.payload["half_angle"])
    if v == "half-space":
        return Cone.ray(cone.payload["normal"])
    if v == "polyhedral":
        if "generators" in cone.payload and "normals" not in cone.payload:
            return Cone.from_normals(cone.payload["generators"])
        if "normals" in cone.payload:
            return Cone.from_generators(cone.payload["normals"])
    if v == "product":
        duals = [dual_cone(c) for c in cone.payload["factors"]]
        if all(d is not None for d in duals):
            return Cone.product(duals)
        return None
    if v == "spectral":
        return Cone.spectral_dual(cone.payload["n"], cone.payload["d"],
                                  cone.payload["sign"])
    if v == "spectral-dual":
        return Cone.spectral(cone.payload["n"], cone.payload["d"],
                             cone.payload["sign"])
    if v == "origin":
        return Cone.full(cone.dim)
    if v == "full-space":
        return Cone.origin(cone.dim)
    if v == "dual-of":
        return cone.payload["inner"]    # biduality for closed convex cones
    return None


def dual_contains(cone: Cone, y, samples: int = DEFAULT_SAMPLES,
                  seed: int = 0) -> bool:
    """y in K^* = {y: p.y >= 0 for all p in K}.

    Closed-form dual when available; otherwise checked against a unit
    sample budget of K (reported-sample certificate, not a proof).
    """
    y = np.asarray(y, dtype=float)
    closed = dual_cone(cone)
    if closed is not None and closed.variant != "dual-of":
        return contains(closed, y, tol=MEMBERSHIP_TOL * (1 + np.linalg.norm(y)))
    pts = unit_samples(cone, samples, seed)
    return bool(np.all(pts @ y >= -MEMBERSHIP_TOL * np.linalg.norm(y)))


# ---------------------------------------------------------------------------
# distance
# ---------------------------------------------------------------------------

def _dykstra_distance(p: np.ndarray, project_fns, iters: int = 400) -> float:
    """Dykstra's alternating projections onto an intersection of convex sets."""
    x = p.copy()
    increments = [np.zeros_like(p) for _ in project_fns]
    for _ in range(iters):
        x_prev = x.copy()
        for i, proj in enumerate(project_fns):
            y = x + increments[i]
            x_new = proj(y)
            increments[i] = y - x_new
            x = x_new
        if np.linalg.norm(x - x_prev) <= 1e-13 * (1.0 + np.linalg.norm(x)):
            break
    return float(np.linalg.norm(p - x))


def _project_lorentz(q: np.ndarray, forward: bool) -> np.ndarray:
    sgn = 1.0 if forward else -1.0
    t = sgn * q[0]
    r = np.linalg.norm(q[1:])
    if t >= r:
        return q.copy()
    if t <= -r:
        return np.zeros_like(q)
    lam = 0.5 * (1.0 + t / r) if r > 0 else 0.0
    out = np.empty_like(q)
    out[0] = sgn * lam * r
    out[1:] = lam * q[1:]
    return out


def distance_to_cone(cone: Cone, p) -> float:
    """Euclidean distance from p to the cone.

    Closed forms for the Lorentz, circular and half-space variants;
    nonnegative least squares for generator cones; Dykstra alternating
    projections for normal-form and spectral cones.
    """
    p = np.asarray(p, dtype=float)
    if p.shape != (cone.dim,):
        raise ValueError("dimension mismatch")
    v = cone.variant
    if v == "full-space":
        return 0.0
    if v == "origin":
        return float(np.linalg.norm(p))
    if v in ("lorentz-forward", "lorentz-backward"):
        return float(np.linalg.norm(p - _project_lorentz(
            p, forward=(v == "lorentz-forward"))))
    if v == "circular":
        a = np.array(cone.payload["axis"])
        psi = cone.payload["half_angle"]
        t = float(p @ a)
        r = float(np.linalg.norm(p - t * a))
        if r <= t * math.tan(psi):
            return 0.0
        if -t >= r * math.tan(psi):
            return float(np.linalg.norm(p))     # apex is nearest
        return r * math.cos(psi) - t * math.sin(psi)
    if v == "half-space":
        n = np.array(cone.payload["normal"])
        return max(0.0, -float(p @ n))
    if v == "polyhedral":
        if "generators" in cone.payload:
            gens = np.array(cone.payload["generators"]).T
            _, resid = nnls(gens, p)
            return float(resid)
        ns = [np.array(n) for n in cone.payload["normals"]]

        def make_proj(n):
            return lambda q: q - min(0.0, float(q @ n)) * n

        return _dykstra_distance(p, [make_proj(n) for n in ns])
    if v == "product":
        off, acc = 0, 0.0
        for c in cone.payload["factors"]:
            acc += distance_to_cone(c, p[off:off + c.dim]) ** 2
            off += c.dim
        return math.sqrt(acc)
    if v == "spectral":
        n, d = cone.payload["n"], cone.payload["d"]
        forward = cone.payload["sign"] == "+"

        def make_proj(m):
            k = n - m          # number of blocks in the trailing sum
            rows = slice(m * d, n * d)

            def proj(q):
                tail = q[rows].reshape(k, d).sum(axis=0)
                corrected = _project_lorentz(tail, forward) - tail
                out = q.copy()
                out[rows] = (q[rows].reshape(k, d) + corrected / k).ravel()
                return out
            return proj

        return _dykstra_distance(p, [make_proj(m) for m in range(n)])
    if v == "spectral-dual":
        n, d = cone.payload["n"], cone.payload["d"]
        forward = cone.payload["sign"] == "+"

        def make_proj(j):
            def proj(q):
                blocks = q.reshape(n, d).copy()
                prev = blocks[j - 1] if j > 0 else np.zeros(d)
                diff = blocks[j] - prev
                fixed = _project_lorentz(diff, forward) - diff
                # distribute the correction over the two blocks involved
                if j == 0:
                    blocks[0] += fixed
                else:
                    blocks[j] += fixed / 2.0
                    blocks[j - 1] -= fixed / 2.0
                return blocks.ravel()
            return proj

        return _dykstra_distance(p, [make_proj(j) for j in range(n)])
    if v == "dual-of":
        inner = cone.payload["inner"]
        gens = unit_samples(inner, 2000, seed=1)
        def make_proj(g):
            return lambda q: q - min(0.0, float(q @ g)) * g
        # K^* = {y: y.g >= 0 for sampled g}: intersection of half-spaces
        return _dykstra_distance(p, [make_proj(g) for g in gens[::40]])
    raise ValueError(f"unknown cone variant {v!r}")


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def unit_samples(cone: Cone, count: int = DEFAULT_SAMPLES,
                 seed: int = 0) -> np.ndarray:
    """Deterministic unit-sphere samples of the cone (its projection).

    Low-discrepancy driven; includes boundary rays where the variant has
    a usable parameterization.  Origin cones have no directions.
    """
    v = cone.variant
    if v == "origin":
        return np.empty((0, cone.dim))
    if v == "full-space":
        return sphere_points(count, cone.dim, seed)
    if v in ("lorentz-forward", "lorentz-backward"):
        axis = np.zeros(cone.dim)
        axis[0] = 1.0 if v == "lorentz-forward" else -1.0
        return _circular_samples(axis, math.pi / 4, count, seed)
    if v == "circular":
        return _circular_samples(np.array(cone.payload["axis"]),
                                 cone.payload["half_angle"], count, seed)
    if v == "half-space":
        n = np.array(cone.payload["normal"])
        pts = sphere_points(count, cone.dim, seed)
        dots = pts @ n
        flip = dots < 0
        pts[flip] -= 2.0 * dots[flip, None] * n[None, :]
        return pts
    if v == "polyhedral":
        if "generators" in cone.payload:
            gens = np.array(cone.payload["generators"])
            k = len(gens)
            if k == 1:
                return gens.copy()
            w = -np.log(np.clip(halton_points(count - k, k, seed), 1e-12, 1.0))
            pts = w @ gens
            pts = np.vstack([gens, pts])
            return pts / np.linalg.norm(pts, axis=1)[:, None]
        # normal form: project sphere samples onto the cone
        ns = [np.array(n) for n in cone.payload["normals"]]
        raw = sphere_points(count, cone.dim, seed)
        out = []
        for q in raw:
            x = q.copy()
            for _ in range(60):
                for n in ns:
                    x = x - min(0.0, float(x @ n)) * n
            norm = np.linalg.norm(x)
            if norm > 1e-9:
                out.append(x / norm)
        if not out:
            raise ValueError("normal-form cone produced no directions")
        return np.array(out)
    if v == "product":
        factors = cone.payload["factors"]
        parts = [unit_samples(c, count, seed + 13 * i)
                 for i, c in enumerate(factors)]
        weights = halton_points(count, len(factors), seed + 7)
        rows = []
        for i in range(count):
            vec = np.concatenate([
                w * part[i % len(part)]
                for w, part in zip(weights[i], parts)])
            norm = np.linalg.norm(vec)
            if norm > 1e-12:
                rows.append(vec / norm)
        # pure-factor edges (zero in the other components)
        for j, part in enumerate(parts):
            off = sum(c.dim for c in factors[:j])
            for g in part[:max(2, count // 50)]:
                vec = np.zeros(cone.dim)
                vec[off:off + factors[j].dim] = g
                rows.append(vec)
        return np.array(rows)
    if v == "spectral":
        n, d = cone.payload["n"], cone.payload["d"]
        light = cone._light()
        qs = [unit_samples(light, count, seed + 31 * m) for m in range(n)]
        weights = halton_points(count, n, seed + 3)
        rows = []
        for i in range(count):
            q = [weights[i][m] * qs[m][i % len(qs[m])] for m in range(n)]
            q.append(np.zeros(d))
            p = np.concatenate([q[m] - q[m + 1] for m in range(n)])
            norm = np.linalg.norm(p)
            if norm > 1e-12:
                rows.append(p / norm)
        return np.array(rows)
    if v == "spectral-dual":
        n, d = cone.payload["n"], cone.payload["d"]
        light = cone._light()
        etas = [unit_samples(light, count, seed + 41 * m) for m in range(n)]
        weights = halton_points(count, n, seed + 5)
        rows = []
        for i in range(count):
            blocks, acc = [], np.zeros(d)
            for m in range(n):
                acc = acc + weights[i][m] * etas[m][i % len(etas[m])]
                blocks.append(acc.copy())
            y = np.concatenate(blocks)
            norm = np.linalg.norm(y)
            if norm > 1e-12:
                rows.append(y / norm)
        return np.array(rows)
    if v == "dual-of":
        inner = cone.payload["inner"]
        raw = sphere_points(20 * count, cone.dim, seed)
        keep = [q for q in raw if dual_contains(inner, q, samples=500)]
        return np.array(keep[:count]) if keep else np.empty((0, cone.dim))
    raise ValueError(f"unknown cone variant {v!r}")


def _circular_samples(axis: np.ndarray, psi: float, count: int,
                      seed: int) -> np.ndarray:
    dim = len(axis)
    if dim == 1:
        return axis[None, :].copy()
    basis = _orthonormal_complement(axis)
    omega = sphere_points(count, dim - 1, seed)
    rho = halton_points(count, 1, seed + 29)[:, 0]
    rho[0] = 0.0            # apex axis
    rho[1::7] = 1.0         # boundary rays
    tan = math.tan(psi)
    pts = axis[None, :] + (rho * tan)[:, None] * (omega @ basis)
    return pts / np.linalg.norm(pts, axis=1)[:, None]


def _orthonormal_complement(axis: np.ndarray) -> np.ndarray:
    dim = len(axis)
    mat = np.eye(dim) - np.outer(axis, axis)
    q, _ = np.linalg.qr(mat)
    cols = [q[:, i] for i in range(dim) if abs(q[:, i] @ axis) < 1e-8]
    return np.array(cols[:dim - 1])


# ---------------------------------------------------------------------------
# margins, separation, compact subcones, acuteness
# ---------------------------------------------------------------------------

def boundary_margin(cone: Cone, p) -> float:
    """Distance from p to the complement of the cone (<= 0 outside).

    For p inside a closed convex cone K this equals
    min_{unit y in K^*} y.p; closed forms cover the catalog variants and
    the product/spectral composites reduce blockwise.
    """
    p = np.asarray(p, dtype=float)
    v = cone.variant
    if v == "full-space":
        return math.inf
    if v == "origin":
        return -float(np.linalg.norm(p))
    if v in ("lorentz-forward", "lorentz-backward"):
        sgn = 1.0 if v == "lorentz-forward" else -1.0
        return float(sgn * p[0] - np.linalg.norm(p[1:])) / math.sqrt(2.0)
    if v == "circular":
        a = np.array(cone.payload["axis"])
        psi = cone.payload["half_angle"]
        t = float(p @ a)
        r = float(np.linalg.norm(p - t * a))
        return t * math.sin(psi) - r * math.cos(psi)
    if v == "half-space":
        return float(p @ np.array(cone.payload["normal"]))
    if v == "polyhedral":
        if "normals" in cone.payload:
            ns = np.array(cone.payload["normals"])
            return float(np.min(ns @ p))
        if len(cone.payload["generators"]) == 1:
            g = np.array(cone.payload["generators"][0])
            t = float(p @ g)
            resid = float(np.linalg.norm(p - t * g))
            return -resid if resid > 1e-12 or t < 0 else 0.0
        dual = dual_cone(cone)
        ys = unit_samples(dual, 2000, seed=11)
        return float(np.min(ys @ p))
    if v == "product":
        off, worst = 0, math.inf
        for c in cone.payload["factors"]:
            worst = min(worst, boundary_margin(c, p[off:off + c.dim]))
            off += c.dim
        return worst
    if v == "spectral":
        n, d = cone.payload["n"], cone.payload["d"]
        light = cone._light()
        blocks = cone._blocks(p)
        worst = math.inf
        tail = np.zeros(d)
        for m in range(n - 1, -1, -1):
            tail = tail + blocks[m]
            k = n - m
            worst = min(worst, boundary_margin(light, tail) / math.sqrt(k))
        return worst
    if v == "spectral-dual":
        n, d = cone.payload["n"], cone.payload["d"]
        light = cone._light()
        blocks = cone._blocks(p)
        worst = math.inf
        prev = np.zeros(d)
        for j in range(n):
            diff = blocks[j] - prev
            scale = 1.0 if j == 0 else math.sqrt(2.0)
            worst = min(worst, boundary_margin(light, diff) / scale)
            prev = blocks[j]
        return worst
    if v == "dual-of":
        ys = unit_samples(cone.payload["inner"], 2000, seed=11)
        return float(np.min(ys @ p))
    raise ValueError(f"unknown cone variant {v!r}")


def angular_separation(k1: Cone, k2: Cone, samples: int = DEFAULT_SAMPLES,
                       seed: int = 0) -> float:
    """Largest theta with |p - eta| >= theta max(|p|, |eta|) on the samples.

    Equals sqrt(1 - c^2) where c is the largest nonnegative cosine between
    sampled unit directions: a validated-on-samples value, zero when the
    projections intersect.
    """
    u = unit_samples(k1, samples, seed)
    w = unit_samples(k2, samples, seed + 1)
    if len(u) == 0 or len(w) == 0:
        raise ValueError("angular separation needs nonzero cones")
    best = 0.0
    block = 2048
    for i in range(0, len(u), block):
        dots = u[i:i + block] @ w.T
        best = max(best, float(np.max(dots)))
    c = min(max(best, 0.0), 1.0)
    return math.sqrt(max(0.0, 1.0 - c * c))


def is_compact_subcone(v_sub: Cone, v_big: Cone,
                       samples: int = DEFAULT_SAMPLES, seed: int = 0,
                       margin_threshold: float = 1e-9) -> bool:
    """closure(V') minus the origin inside V, tested on unit samples.

    Every sampled direction of V' must sit inside V with boundary margin
    above the threshold; the sample budget is the certificate's budget.
    """
    if v_sub.dim != v_big.dim:
        raise ValueError("dimension mismatch")
    pts = unit_samples(v_sub, samples, seed)
    if len(pts) == 0:
        return True          # the zero cone is a compact subcone of anything
    margins = np.array([boundary_margin(v_big, q) for q in pts])
    return bool(np.all(margins >= margin_threshold))


def is_acute(cone: Cone, samples: int = 2000, seed: int = 0) -> bool:
    """Acute = the dual has interior: a strictly positive functional exists.

    Candidate functionals are the normalized means of the dual cone's unit
    samples (when the dual has a closed form) and of the cone's own
    samples; acuteness is certified if either gives min u.y > 0 over the
    cone's samples.
    """
    pts = unit_samples(cone, samples, seed)
    if len(pts) == 0:
        return True
    candidates = []
    dual = dual_cone(cone)
    if dual is not None and dual.variant != "dual-of":
        dual_pts = unit_samples(dual, samples, seed + 1)
        if len(dual_pts):
            candidates.append(dual_pts.mean(axis=0))
    candidates.append(pts.mean(axis=0))
    for center in candidates:
        norm = np.linalg.norm(center)
        if norm < 1e-12:
            continue
        if bool(np.min(pts @ (center / norm)) > 1e-9):
            return True
    return False
