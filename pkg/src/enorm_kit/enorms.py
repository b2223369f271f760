"""Energy-constrained operator norms with dual certificates.

The central problem is

    sup { Tr(H rho) : rho >= 0, Tr rho = 1, Tr(G rho) <= E }

for Hermitian H.  Its Lagrangian dual is the convex scalar function
``h(lam) = lam E + lambda_max(H - lam G)`` minimized over ``lam >= 0``; the
ground energy of G is 0, so a feasible interior exists and the gap closes at
desk scale.  ``enorm`` instantiates H = A*A, giving the constrained operator
norm ``sup{||A phi|| : ||phi|| = 1, <phi|G|phi> <= E}``; the solver returns
the dual value, the multiplier, and a feasible witness vector recovered from
the top eigenspace of ``H - lam* G`` (mirroring the trust-region hard case
when that space is degenerate).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .errors import DimMismatch, Infeasible, NoBracket
from .gspace import GeneratingOperator, sample_feasible_states, vector_energy
from .matcore import as_matrix, operator_norm
from .transforms import upper_hull_indices

_INVPHI = (np.sqrt(5.0) - 1) / 2


@dataclass
class ExpectationResult:
    """Certified solution of the constrained linear-objective problem."""

    value: float            # dual value: certified upper bound on the supremum
    dual_lambda: float
    witness: np.ndarray     # feasible unit vector (ambient basis)
    witness_value: float    # <w|H|w>, certified lower bound
    gap: float              # value - witness_value
    converged: bool
    face: list = None       # feasible near-optimal vectors spanning the
                            # optimizer face (ambient basis), best first


@dataclass
class ENormResult:
    """Energy-constrained operator norm with primal and dual certificates."""

    value: float            # sqrt of the dual value
    dual_lambda: float
    dual_value: float
    witness: np.ndarray
    witness_value: float    # ||A witness||
    gap: float              # dual_value - witness_value**2
    converged: bool


# ---------------------------------------------------------------------------
# dual engine
# ---------------------------------------------------------------------------

class _Dual:
    """Evaluations of h(lam) = lam E + lambda_max(Ht - lam diag(w))."""

    def __init__(self, Ht: np.ndarray, w: np.ndarray, E: float):
        self.Ht = Ht
        self.w = w
        self.E = E
        self.scale = max(1.0, float(np.abs(Ht).sum(axis=1).max()),
                         float(w[-1]))
        self.cache: dict[float, tuple[float, float]] = {}
        self._diag = np.diag_indices(w.size)

    def K(self, lam: float) -> np.ndarray:
        K = self.Ht.copy()
        K[self._diag] -= lam * self.w
        return K

    def eval(self, lam: float) -> tuple[float, float]:
        """Return (h(lam), g) where g = <v|G|v> for a top eigenvector v."""
        hit = self.cache.get(lam)
        if hit is not None:
            return hit
        mu, V = np.linalg.eigh(self.K(lam))
        v = V[:, -1]
        g = float(np.sum(self.w * np.abs(v) ** 2))
        out = (lam * self.E + float(mu[-1]), g)
        self.cache[lam] = out
        return out

    def h(self, lam: float) -> float:
        return self.eval(lam)[0]

    def subgrad(self, lam: float) -> float:
        return self.E - self.eval(lam)[1]

    def best(self) -> tuple[float, float]:
        lam = min(self.cache, key=lambda l: self.cache[l][0])
        return lam, self.cache[lam][0]


def _golden(dual: _Dual, a: float, b: float, width: float) -> tuple[float, float]:
    """Shrink the bracket of the convex dual to the requested width."""
    n = int(np.ceil(np.log(max(width, 1e-300) / max(b - a, 1e-300))
                    / np.log(_INVPHI)))
    if n <= 0:
        return a, b
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = dual.h(c), dual.h(d)
    for _ in range(n):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = dual.h(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = dual.h(d)
    return a, b


def _top_cluster_g_range(dual: _Dual, lam: float, rtol: float = 1e-12):
    """g-range of the top eigenvalue cluster of H - lam G."""
    mu, V = np.linalg.eigh(dual.K(lam))
    sel = mu >= mu[-1] - rtol * dual.scale
    C = V[:, sel]
    B = C.conj().T @ (dual.w[:, None] * C)
    g = np.linalg.eigvalsh((B + B.conj().T) / 2)
    return float(g[0]), float(g[-1])


def _mix_candidates(dual: _Dual, eig, rtol: float):
    """Feasible witness candidates from the top cluster of H - lam G."""
    E, w = dual.E, dual.w
    mu, V = eig
    sel = mu >= mu[-1] - rtol * dual.scale
    C = V[:, sel]
    B = C.conj().T @ (w[:, None] * C)
    g, U = np.linalg.eigh((B + B.conj().T) / 2)
    W = C @ U                      # cluster basis diagonalizing G
    HW = dual.Ht @ W
    M = W.conj().T @ HW            # restricted objective
    k = g.size
    feas_slack = 1e-12 * max(1.0, E)

    cands: list[tuple[float, np.ndarray]] = []

    feasible = np.flatnonzero(g <= E + feas_slack)
    for i in feasible:
        cands.append((float(M[i, i].real), W[:, i]))

    pairs = []
    if feasible.size and g[-1] > E and g[-1] > g[0]:
        i_lo = 0
        j_hi = k - 1
        pairs.append((i_lo, j_hi))
        i_best = int(feasible[np.argmax(M[feasible, feasible].real)])
        j_first = int(np.flatnonzero(g > E + feas_slack)[0])
        if (i_best, j_first) != (i_lo, j_hi):
            pairs.append((i_best, j_first))
    for i, j in pairs:
        if g[j] <= g[i]:
            continue
        s2 = (E - g[i]) / (g[j] - g[i])
        if not (0.0 <= s2 <= 1.0):
            continue
        s = np.sqrt(s2)
        c = np.sqrt(1.0 - s2)
        m01 = M[i, j]
        phase = np.conj(m01) / abs(m01) if abs(m01) > 0 else 1.0
        v = c * W[:, i] + s * phase * W[:, j]
        val = float(np.real(np.vdot(v, dual.Ht @ v)))
        cands.append((val, v))

    if not cands and k:
        # hard case: every cluster vector exceeds the budget; pull the
        # lowest-energy one toward the ground vector until <G> = E
        v = _ground_mix(dual, W[:, 0])
        if v is not None:
            cands.append((float(np.real(np.vdot(v, dual.Ht @ v))), v))
    return cands


def _ground_mix(dual: _Dual, wv: np.ndarray):
    # partner the infeasible cluster vector with a low-energy direction
    u = None
    for i in np.argsort(dual.w, kind="stable"):
        if dual.w[i] > dual.E:
            break
        cand = np.zeros(dual.w.size, dtype=complex)
        cand[i] = 1.0
        cand = cand - np.vdot(wv, cand) * wv
        nu = np.linalg.norm(cand)
        if nu > 1e-7:
            u = cand / nu
            break
    if u is None:
        return None

    def energy(theta: float) -> float:
        v = np.cos(theta) * u + np.sin(theta) * wv
        return float(np.sum(dual.w * np.abs(v) ** 2))

    if energy(0.0) > dual.E:
        return None
    lo, hi = 0.0, np.pi / 2
    for _ in range(80):
        mid = (lo + hi) / 2
        if energy(mid) <= dual.E:
            lo = mid
        else:
            hi = mid
    return np.cos(lo) * u + np.sin(lo) * wv


def _witness_search(dual: _Dual, lam: float, tols: Tolerances,
                    collect: list | None = None):
    eig = np.linalg.eigh(dual.K(lam))
    best_val, best_v = -np.inf, None
    for rtol in (1e-12, 1e-9, tols.cluster_tol, 1e-5):
        for val, v in _mix_candidates(dual, eig, rtol):
            if collect is not None:
                collect.append((val, v))
            if val > best_val:
                best_val, best_v = val, v
    if best_v is None:
        e0 = np.zeros(dual.w.size, dtype=complex)
        e0[0] = 1.0
        best_v = e0
        best_val = float(np.real(dual.Ht[0, 0]))
        if collect is not None:
            collect.append((best_val, best_v))
    return best_val, best_v


def _face_vectors(collect: list, cap: int = 8) -> list:
    """Distinct feasible candidates, best value first."""
    out: list = []
    for _, v in sorted(collect, key=lambda t: -t[0]):
        if all(abs(np.vdot(u, v)) < 1 - 1e-9 for u in out):
            out.append(v)
        if len(out) >= cap:
            break
    return out


def _solve_diagonal(hd: np.ndarray, dual: _Dual):
    """Exact solution when the objective is diagonal in the G eigenbasis.

    The attainable pairs (energy, objective) are the convex hull of the
    points (w_i, h_i); the optimum at budget E sits on its upper hull.
    """
    w, E = dual.w, dual.E
    order = np.argsort(w, kind="stable")
    pts_w, pts_h = [], []
    for i in order:
        if pts_w and w[i] == pts_w[-1][0]:
            if hd[i] > pts_h[-1]:
                pts_w[-1] = (w[i], i)
                pts_h[-1] = hd[i]
        else:
            pts_w.append((w[i], i))
            pts_h.append(hd[i])
    xs = np.array([p[0] for p in pts_w])
    ys = np.array(pts_h)
    idx = [pts_w[j][1] for j in upper_hull_indices(xs, ys)]
    hx = np.array([w[j] for j in idx])
    hy = np.array([hd[j] for j in idx])

    top = int(np.argmax(hy))
    if E >= hx[top]:
        i = idx[top]
        lam = 0.0
        val = float(hy[top])
        mix = (i, i, 0.0)
    else:
        kk = int(np.searchsorted(hx, E, side="right") - 1)
        kk = min(max(kk, 0), top - 1)
        i, j = idx[kk], idx[kk + 1]
        lam = float((hy[kk + 1] - hy[kk]) / (hx[kk + 1] - hx[kk]))
        p = (E - hx[kk]) / (hx[kk + 1] - hx[kk])
        val = float((1 - p) * hy[kk] + p * hy[kk + 1])
        mix = (i, j, p)

    i, j, p = mix
    v = np.zeros(w.size, dtype=complex)
    if i == j:
        v[i] = 1.0
    else:
        v[i] = np.sqrt(1 - p)
        v[j] = np.sqrt(p)
    dual_value = lam * E + float(np.max(hd - lam * w))
    return lam, v, dual_value


def constrained_max_expectation(H, G: GeneratingOperator, E: float,
                                tols: Tolerances = DEFAULT_TOLS,
                                ) -> ExpectationResult:
    """Maximize Tr(H rho) over states with Tr(G rho) <= E, with certificates.

    H must be Hermitian on the space of G.  G is expected in normalized form
    (ground energy 0); any budget E > ground energy is feasible.
    """
    if E <= 0:
        raise Infeasible(f"energy budget must be positive, got {E}")
    H = as_matrix(H)
    if H.shape != (G.dim, G.dim):
        raise DimMismatch(f"objective shape {H.shape} does not match dim {G.dim}")
    if G.eigenvalues[0] > E:
        raise Infeasible(
            f"ground energy {G.eigenvalues[0]} exceeds the budget {E}")

    Ht = G.to_basis(H @ G.basis) if G.basis is not None else H.astype(complex)
    Ht = (Ht + Ht.conj().T) / 2
    w = G.eigenvalues
    dual = _Dual(Ht, w, E)

    offdiag = Ht - np.diag(np.diagonal(Ht))
    if np.linalg.norm(offdiag) <= 1e-12 * dual.scale:
        hd = np.diagonal(Ht).real.copy()
        lam, v_basis, dual_value = _solve_diagonal(hd, dual)
        wval = float(np.real(np.vdot(v_basis, Ht @ v_basis)))
        witness = G.from_basis(v_basis)
        face = [witness]
        nz = np.flatnonzero(np.abs(v_basis) > 1e-12)
        for i in nz:
            if w[i] <= E and abs(abs(v_basis[i]) - 1) > 1e-12:
                pure = np.zeros_like(v_basis)
                pure[i] = 1.0
                face.append(G.from_basis(pure))
        gap = dual_value - wval
        return ExpectationResult(dual_value, lam, witness, wval, gap,
                                 converged=abs(gap) <= tols.gap_tol,
                                 face=face)

    dual.h(0.0)
    collect: list = []
    # multiplier 0 is optimal iff the budget covers the top eigenspace of H
    g_lo, _ = _top_cluster_g_range(dual, 0.0)
    if g_lo <= E or E >= w[-1]:
        witness_best, v_best = _witness_search(dual, 0.0, tols, collect)
    else:
        lam_cap = abs(dual.h(0.0)) / max(_positive_gap(w), 1e-12)
        lam_hi = max(1.0, min(1e12, lam_cap))
        grew = 0
        while dual.subgrad(lam_hi) < 0:
            lam_hi *= 2
            grew += 1
            if grew > 200:
                raise NoBracket("dual objective still decreasing; "
                                "is G normalized with ground energy 0?")
        if grew > 60:
            warnings.warn("multiplier cap raised far beyond the heuristic "
                          "during bracketing", stacklevel=2)

        width = max(np.sqrt(tols.lambda_rel_tol), 1e-8) * max(1.0, lam_hi)
        _golden(dual, 0.0, lam_hi, width)

        # pin the multiplier where the subgradient E - <v|G|v> changes sign:
        # in the smooth case the top eigenvector itself hits <G> = E, at a
        # kink the bracket collapses onto the degenerate cluster
        lo = max((l for l in dual.cache if dual.subgrad(l) < 0), default=0.0)
        hi = min((l for l in dual.cache if dual.subgrad(l) >= 0),
                 default=lam_hi)
        bis_width = max(1e-3 * tols.lambda_rel_tol, 5e-16) * max(1.0, hi)
        for _ in range(100):
            if hi - lo <= bis_width:
                break
            mid = (lo + hi) / 2
            if dual.subgrad(mid) < 0:
                lo = mid
            else:
                hi = mid
        witness_best, v_best = _witness_search(dual, hi, tols, collect)
        if lo != hi:
            wv, v = _witness_search(dual, lo, tols, collect)
            if wv > witness_best:
                witness_best, v_best = wv, v

    lam_hat, dual_value = dual.best()
    witness = G.from_basis(v_best)
    face = [G.from_basis(v) for v in _face_vectors(collect)]
    gap = dual_value - witness_best
    return ExpectationResult(dual_value, lam_hat, witness, witness_best, gap,
                             converged=abs(gap) <= tols.gap_tol, face=face)


def _positive_gap(w: np.ndarray) -> float:
    pos = w[w > 0]
    return float(pos[0]) if pos.size else 1.0


# ---------------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------------

def enorm(A, G: GeneratingOperator, E: float,
          tols: Tolerances = DEFAULT_TOLS) -> ENormResult:
    """Energy-constrained operator norm sup{||A phi|| : <phi|G|phi> <= E}."""
    A = as_matrix(A)
    if A.shape[1] != G.dim:
        raise DimMismatch(f"operator has {A.shape[1]} columns, G has dim {G.dim}")
    M = A.conj().T @ A
    res = constrained_max_expectation(M, G, E, tols)
    wval = float(np.linalg.norm(A @ res.witness))
    return ENormResult(
        value=float(np.sqrt(max(res.value, 0.0))),
        dual_lambda=res.dual_lambda,
        dual_value=res.value,
        witness=res.witness,
        witness_value=wval,
        gap=res.value - wval ** 2,
        converged=res.converged,
    )


def recover_witness(A, G: GeneratingOperator, E: float, dual_lambda: float,
                    tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
    """Feasible unit vector achieving the norm, from a converged multiplier."""
    A = as_matrix(A)
    M = A.conj().T @ A
    Ht = G.to_basis(M @ G.basis) if G.basis is not None else M.astype(complex)
    Ht = (Ht + Ht.conj().T) / 2
    dual = _Dual(Ht, G.eigenvalues, E)
    _, v = _witness_search(dual, dual_lambda, tols)
    return G.from_basis(v)


def enorm_sampled(A, G: GeneratingOperator, E: float, n: int = 1000,
                  seed: int = 0) -> float:
    """Brute-force lower bound: max ||A phi|| over sampled feasible states."""
    A = as_matrix(A)
    best = 0.0
    for phi in sample_feasible_states(G, E, n, seed):
        best = max(best, float(np.linalg.norm(A @ phi)))
    return best


def seminorm(A, G: GeneratingOperator, E: float) -> float:
    """Norm over the ellipsoid ||phi||^2 + <phi|G|phi>/E <= 1.

    Equals the largest singular value of A (I + G/E)^{-1/2}.
    """
    if E <= 0:
        raise Infeasible(f"energy parameter must be positive, got {E}")
    A = as_matrix(A)
    if A.shape[1] != G.dim:
        raise DimMismatch(f"operator has {A.shape[1]} columns, G has dim {G.dim}")
    scale = 1.0 / np.sqrt(1.0 + G.eigenvalues / E)
    B = A if G.basis is None else A @ G.basis
    return operator_norm(B * scale)


# ---------------------------------------------------------------------------
# profiles and transform consistency
# ---------------------------------------------------------------------------

@dataclass
class ProfileTable:
    """Norm profile over an energy grid."""

    E: np.ndarray
    enorm: np.ndarray
    seminorm: np.ndarray
    concavity_violations: list[int]

    def to_csv(self) -> str:
        lines = ["E,enorm,seminorm"]
        lines += [f"{e!r},{a!r},{s!r}"
                  for e, a, s in zip(self.E, self.enorm, self.seminorm)]
        return "\n".join(lines) + "\n"


def profile(A, G: GeneratingOperator, E_grid,
            tols: Tolerances = DEFAULT_TOLS) -> ProfileTable:
    """Both norms over an ascending energy grid.

    Flags every interior grid point where the squared constrained norm dips
    below its chord by more than ``concavity_tol`` (it never should: that
    profile is concave).
    """
    E_grid = np.asarray(E_grid, dtype=float)
    if E_grid.size == 0 or np.any(E_grid <= 0) or np.any(np.diff(E_grid) <= 0):
        raise Infeasible("energy grid must be positive and ascending")
    en = np.array([enorm(A, G, float(e), tols).value for e in E_grid])
    sn = np.array([seminorm(A, G, float(e)) for e in E_grid])
    viol = []
    f = en ** 2
    for i in range(1, E_grid.size - 1):
        chord = f[i - 1] + (f[i + 1] - f[i - 1]) * (
            (E_grid[i] - E_grid[i - 1]) / (E_grid[i + 1] - E_grid[i - 1]))
        if f[i] < chord - tols.concavity_tol * max(1.0, abs(chord)):
            viol.append(i)
    return ProfileTable(E_grid, en, sn, viol)


def _refine_log(fun, ts: np.ndarray, vals: np.ndarray, k: int,
                minimize: bool, iters: int = 48) -> float:
    a = np.log(ts[max(0, k - 1)])
    b = np.log(ts[min(ts.size - 1, k + 1)])
    sgn = 1.0 if minimize else -1.0
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = sgn * fun(np.exp(c)), sgn * fun(np.exp(d))
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = sgn * fun(np.exp(c))
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = sgn * fun(np.exp(d))
    return sgn * min(fc, fd)


def _kernel_restricted_norm(A: np.ndarray, G: GeneratingOperator) -> float:
    """lim_{E->0+} ||A||_E: the norm of A restricted to the kernel of G."""
    mask = G.eigenvalues <= 0.0
    if not np.any(mask):
        return 0.0
    B = A if G.basis is None else A @ G.basis
    return operator_norm(B[:, mask])


def transform_check(A, G: GeneratingOperator, E: float,
                    tols: Tolerances = DEFAULT_TOLS,
                    t_range: tuple[float, float] = (1e-4, 1e4),
                    points_per_decade: int = 9) -> dict:
    """Check the transform pair linking the two norm families.

    The ellipsoid norm equals ``sup_t ||A||_{tE} / sqrt(1+t)`` and the
    constrained norm equals ``inf_t |||A|||_{tE} sqrt(1+1/t)``; both sides are
    evaluated on a log-spaced t-grid with golden-section refinement plus the
    analytic t -> 0 and t -> inf limit values.
    """
    A = as_matrix(A)
    decades = np.log10(t_range[1] / t_range[0])
    ts = np.geomspace(t_range[0], t_range[1],
                      int(round(decades * points_per_decade)) + 1)

    def sup_obj(t: float) -> float:
        return enorm(A, G, t * E, tols).value / np.sqrt(1.0 + t)

    sup_vals = np.array([sup_obj(float(t)) for t in ts])
    k = int(np.argmax(sup_vals))
    sn_via = max(float(sup_vals[k]),
                 _refine_log(sup_obj, ts, sup_vals, k, minimize=False),
                 _kernel_restricted_norm(A, G))  # t -> 0 limit
    sn_direct = seminorm(A, G, E)

    def inf_obj(t: float) -> float:
        return seminorm(A, G, t * E) * np.sqrt(1.0 + 1.0 / t)

    inf_vals = np.array([inf_obj(float(t)) for t in ts])
    en_via = float(inf_vals.min())
    for i in range(ts.size):
        left = inf_vals[i - 1] if i > 0 else np.inf
        right = inf_vals[i + 1] if i < ts.size - 1 else np.inf
        if inf_vals[i] <= left and inf_vals[i] <= right:
            en_via = min(en_via, _refine_log(inf_obj, ts, inf_vals, i,
                                             minimize=True))
    en_via = min(en_via, operator_norm(A))  # t -> inf limit
    ker_norm = _kernel_restricted_norm(A, G)
    if ker_norm <= 1e-9 * max(1.0, operator_norm(A)):
        # A kills the ground space, so the t -> 0 limit is finite
        pos = G.eigenvalues > 0
        scale = np.where(pos, 1.0 / np.sqrt(np.where(pos, G.eigenvalues, 1.0)),
                         0.0)
        B = A if G.basis is None else A @ G.basis
        en_via = min(en_via, operator_norm(B * scale) * np.sqrt(E))
    en_direct = enorm(A, G, E, tols).value

    dev = max(abs(sn_via - sn_direct), abs(en_via - en_direct))
    return {
        "seminorm_direct": sn_direct,
        "seminorm_via_transform": sn_via,
        "enorm_direct": en_direct,
        "enorm_via_transform": en_via,
        "max_deviation": dev,
        "ok": dev <= tols.transform_tol * max(1.0, sn_direct, en_direct),
    }


# ---------------------------------------------------------------------------
# relative boundedness
# ---------------------------------------------------------------------------

def pi_membership(A, G: GeneratingOperator, a: float, b: float,
                  tols: Tolerances = DEFAULT_TOLS) -> bool:
    """Whether (a, b) is an admissible relative bound for A w.r.t. sqrt(G).

    Finite-dimensional criterion: ``a^2 I + b^2 G - A*A`` is PSD, which is
    equivalent to ``||A||_E <= sqrt(a^2 + b^2 E)`` for every E.
    """
    if a < 0 or b < 0:
        raise Infeasible("relative-bound certificate needs a, b >= 0")
    A = as_matrix(A)
    M = a ** 2 * np.eye(G.dim) + b ** 2 * G.matrix() - A.conj().T @ A
    lam_min = float(np.linalg.eigvalsh((M + M.conj().T) / 2)[0])
    return lam_min >= -tols.psd_tol * max(1.0, float(np.linalg.norm(M)))


def sqrtg_bound(A, G: GeneratingOperator, E_list,
                tols: Tolerances = DEFAULT_TOLS) -> float:
    """Estimate of the sqrt(G)-bound: min over the list of ||A||_E / sqrt(E).

    The sequence is nonincreasing (squared profile concavity), which is
    verified within tolerance; the limit over growing E is the bound itself.
    """
    E_list = np.asarray(E_list, dtype=float)
    if np.any(E_list <= 0) or np.any(np.diff(E_list) <= 0):
        raise Infeasible("E_list must be positive ascending")
    vals = np.array([enorm(A, G, float(e), tols).value / np.sqrt(e)
                     for e in E_list])
    drift = np.diff(vals)
    if np.any(drift > 1e-7 * max(1.0, float(vals[0]))):
        warnings.warn("||A||_E / sqrt(E) failed to be nonincreasing within "
                      "tolerance; dual solves may need tightening",
                      stacklevel=2)
    return float(vals.min())


# ---------------------------------------------------------------------------
# channel energy factor
# ---------------------------------------------------------------------------

def channel_energy_factor(phi, G: GeneratingOperator, E: float,
                          tols: Tolerances = DEFAULT_TOLS) -> float:
    """Largest output energy over energy-limited inputs of a CP map.

    Accepts a CPMap or a bare Kraus list; requires matching input and output
    spaces.  Computes ``Ghat = sum_i K_i* G K_i`` and solves the same
    linear-objective dual as the norms.
    """
    kraus = getattr(phi, "kraus", phi)
    Gm = G.matrix()
    Ghat = np.zeros_like(Gm)
    for K in kraus:
        K = as_matrix(K)
        if K.shape != (G.dim, G.dim):
            raise DimMismatch("energy factor needs dim_in == dim_out == dim G")
        Ghat += K.conj().T @ Gm @ K
    res = constrained_max_expectation(Ghat, G, E, tols)
    return max(0.0, res.value)
