"""Transform pair relating the two norm families, plus the concave hull.

``transform_F`` and ``transform_G`` act on nonnegative sampled functions of a
positive argument:

    F[f](x) = sup_{t>0} f(x t) / (t + 1),
    G[f](x) = inf_{t>0} f(x t) (1 + 1/t).

Between samples ``f`` is linear; beyond the grid it continues with the
boundary slope clamped to nonnegative (values floored at 0).  On each linear
piece the objective is monotone (F) or has one interior extremum (G), so both
transforms are evaluated exactly from knot, per-piece and limit candidates.
G[F[f]] reproduces the least concave majorant of ``f``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyGrid, NonFinite


@dataclass(frozen=True)
class SampledFunction:
    """Nonnegative function sampled on a strictly ascending positive grid."""

    x: np.ndarray
    f: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        f = np.asarray(self.f, dtype=float)
        if x.size == 0:
            raise EmptyGrid("sampled function needs at least one grid point")
        if x.shape != f.shape or x.ndim != 1:
            raise EmptyGrid("grid and values must be 1-D arrays of equal length")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(f))):
            raise NonFinite("grid or values contain NaN or Inf")
        if np.any(x <= 0) or np.any(np.diff(x) <= 0):
            raise EmptyGrid("grid must be strictly ascending and positive")
        if np.any(f < 0):
            raise NonFinite("values must be nonnegative")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "f", f)

    @property
    def size(self) -> int:
        return self.x.size

    def boundary_slopes(self) -> tuple[float, float]:
        """Left and right extrapolation slopes, clamped to nonnegative."""
        if self.size < 2:
            return 0.0, 0.0
        s_left = (self.f[1] - self.f[0]) / (self.x[1] - self.x[0])
        s_right = (self.f[-1] - self.f[-2]) / (self.x[-1] - self.x[-2])
        return max(0.0, s_left), max(0.0, s_right)

    def __call__(self, u: float) -> float:
        """Evaluate with linear interpolation and clamped-slope extrapolation."""
        s_left, s_right = self.boundary_slopes()
        if u <= self.x[0]:
            return max(0.0, self.f[0] - s_left * (self.x[0] - u))
        if u >= self.x[-1]:
            return self.f[-1] + s_right * (u - self.x[-1])
        return float(np.interp(u, self.x, self.f))

    def to_csv(self) -> str:
        lines = ["x,f"]
        lines += [f"{xi!r},{fi!r}" for xi, fi in zip(self.x, self.f)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "SampledFunction":
        rows = [ln for ln in text.strip().splitlines() if ln and not ln.startswith("x,")]
        data = np.array([[float(v) for v in ln.split(",")] for ln in rows])
        return cls(data[:, 0], data[:, 1])


def _pieces(fn: SampledFunction):
    """Linear pieces (u_lo, u_hi, alpha, beta) with f(u) = alpha + beta*u,
    including the clamped extrapolation tails."""
    x, f = fn.x, fn.f
    s_left, s_right = fn.boundary_slopes()
    pieces = []
    # left tail: restrict to where the extension is positive (floored at 0)
    left_val0 = f[0] - s_left * x[0]
    u_zero = 0.0 if left_val0 >= 0 else x[0] - f[0] / s_left
    pieces.append((u_zero, x[0], f[0] - s_left * x[0], s_left))
    for i in range(fn.size - 1):
        beta = (f[i + 1] - f[i]) / (x[i + 1] - x[i])
        pieces.append((x[i], x[i + 1], f[i] - beta * x[i], beta))
    pieces.append((x[-1], np.inf, f[-1] - s_right * x[-1], s_right))
    return pieces


def transform_F(fn: SampledFunction, x: float) -> float:
    """F[f](x) = sup_t f(xt)/(t+1); exact for the piecewise-linear model."""
    if x <= 0:
        raise EmptyGrid(f"argument must be positive, got {x}")
    # substitute u = x t: sup_u x f(u)/(x + u); monotone on linear pieces,
    # so the supremum sits at a knot or at one of the two tail limits
    _, s_right = fn.boundary_slopes()
    best = max(fn(0.0), s_right * x)
    for u in fn.x:
        best = max(best, x * fn(float(u)) / (x + u))
    return best


def transform_G(fn: SampledFunction, x: float) -> float:
    """G[f](x) = inf_t f(xt)(1+1/t); exact for the piecewise-linear model."""
    if x <= 0:
        raise EmptyGrid(f"argument must be positive, got {x}")
    # substitute u = x t: inf_u f(u)(u + x)/u
    cands = []
    for u_lo, u_hi, alpha, beta in _pieces(fn):
        for u in (u_lo, u_hi):
            if 0 < u < np.inf:
                cands.append((alpha + beta * u) * (u + x) / u)
        # interior stationary point of (alpha + beta u)(u + x)/u
        if alpha > 0 and beta > 0:
            u_star = np.sqrt(alpha * x / beta)
            if u_lo < u_star < u_hi:
                cands.append((alpha + beta * u_star) * (u_star + x) / u_star)
        # limits at the open ends of the tail pieces
        if u_lo == 0.0:
            cands.append(beta * x if alpha == 0.0 else np.inf)
        if u_hi == np.inf:
            cands.append(alpha if beta == 0.0 else np.inf)
    val = float(min(cands))
    return max(0.0, val)


def transform_F_sampled(fn: SampledFunction) -> SampledFunction:
    """Apply transform_F at every grid point."""
    return SampledFunction(fn.x, np.array([transform_F(fn, float(x)) for x in fn.x]))


def transform_G_sampled(fn: SampledFunction) -> SampledFunction:
    """Apply transform_G at every grid point."""
    return SampledFunction(fn.x, np.array([transform_G(fn, float(x)) for x in fn.x]))


def transform_GF(fn: SampledFunction, x: float) -> float:
    """G[F[f]](x) with F evaluated exactly (no resampling of F on the grid).

    The objective u -> F[f](u)(u+x)/u is a max of monotone branches, hence
    quasiconvex; a coarse scan plus golden-section refinement in log u nails
    the infimum.  By the hull property of the transform pair this reproduces
    the least concave majorant of f.
    """

    def phi(u: float) -> float:
        return transform_F(fn, u) * (u + x) / u

    lo = fn.x[0] / 1e3
    hi = fn.x[-1] * 1e3
    grid = np.geomspace(lo, hi, 48)
    vals = [phi(float(u)) for u in grid]
    k = int(np.argmin(vals))
    a = np.log(grid[max(0, k - 1)])
    b = np.log(grid[min(len(grid) - 1, k + 1)])
    invphi = (np.sqrt(5.0) - 1) / 2
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = phi(np.exp(c)), phi(np.exp(d))
    for _ in range(60):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = phi(np.exp(c))
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = phi(np.exp(d))
    best = min(min(vals), fc, fd)
    # tail limits of the quasiconvex objective
    _, s_right = fn.boundary_slopes()
    if fn(0.0) == 0.0:
        slope0 = max(s_right, float(np.max(fn.f / fn.x)))
        best = min(best, slope0 * x)
    if s_right == 0.0:
        best = min(best, max(fn(0.0), float(fn.f.max())))
    return best


def upper_hull_indices(x: np.ndarray, y: np.ndarray) -> list[int]:
    """Indices of the upper convex hull of the points (x_i, y_i), x ascending."""
    hull: list[int] = []
    for i in range(len(x)):
        while len(hull) >= 2:
            i0, i1 = hull[-2], hull[-1]
            # drop i1 if it lies on or below the chord i0 -> i
            lhs = (y[i1] - y[i0]) * (x[i] - x[i0])
            rhs = (y[i] - y[i0]) * (x[i1] - x[i0])
            if lhs <= rhs:
                hull.pop()
            else:
                break
        hull.append(i)
    return hull


def concave_hull(fn: SampledFunction) -> SampledFunction:
    """Least concave majorant of the sampled points, on the same grid."""
    idx = upper_hull_indices(fn.x, fn.f)
    hx = fn.x[idx]
    hf = fn.f[idx]
    vals = np.interp(fn.x, hx, hf)
    return SampledFunction(fn.x, np.maximum(vals, fn.f))
