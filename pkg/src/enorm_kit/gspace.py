"""The generating operator G, its energy constraint sets, and spectral projectors.

``G`` is stored in spectral form: ascending eigenvalues plus an optional
orthonormal eigenbasis (``None`` means the standard basis, the compact
"diagonal" representation).  After :func:`normalize_ground` the smallest
eigenvalue is 0, so the feasible set ``{rho : Tr rho = 1, Tr G rho <= E}``
contains the ground state for every ``E > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .errors import DimMismatch, Infeasible, NonFinite, NotPSD
from .matcore import hermitian_eig


@dataclass(frozen=True)
class GeneratingOperator:
    """Positive operator in spectral form.

    Attributes:
        eigenvalues: real, ascending, dimensionless energy units.
        basis: orthonormal eigenvector columns, or None for the standard basis.
    """

    eigenvalues: np.ndarray
    basis: np.ndarray | None = None

    def __post_init__(self):
        w = np.asarray(self.eigenvalues, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise DimMismatch("eigenvalues must be a nonempty 1-D array")
        if not np.all(np.isfinite(w)):
            raise NonFinite("eigenvalues contain NaN or Inf")
        if np.any(np.diff(w) < 0):
            raise DimMismatch("eigenvalues must be ascending")
        object.__setattr__(self, "eigenvalues", w)
        if self.basis is not None:
            Q = np.asarray(self.basis, dtype=complex)
            if Q.shape != (w.size, w.size):
                raise DimMismatch("basis shape does not match dimension")
            object.__setattr__(self, "basis", Q)

    @property
    def dim(self) -> int:
        return self.eigenvalues.size

    @property
    def is_diagonal(self) -> bool:
        return self.basis is None

    def matrix(self) -> np.ndarray:
        """Dense matrix of G."""
        if self.basis is None:
            return np.diag(self.eigenvalues).astype(complex)
        return (self.basis * self.eigenvalues) @ self.basis.conj().T

    def ground_vector(self) -> np.ndarray:
        """Canonical ground state: the first eigenvector (determinism under
        degeneracy)."""
        if self.basis is None:
            e = np.zeros(self.dim, dtype=complex)
            e[0] = 1.0
            return e
        return self.basis[:, 0].copy()

    def to_basis(self, M: np.ndarray) -> np.ndarray:
        """Rotate an operator (or stack of column vectors) into the eigenbasis."""
        if self.basis is None:
            return np.asarray(M, dtype=complex)
        return self.basis.conj().T @ M

    def from_basis(self, v: np.ndarray) -> np.ndarray:
        """Rotate a vector expressed in the eigenbasis back to the ambient basis."""
        if self.basis is None:
            return np.asarray(v, dtype=complex)
        return self.basis @ v

    @classmethod
    def from_matrix(cls, G, tols: Tolerances = DEFAULT_TOLS) -> "GeneratingOperator":
        """Spectral form of a dense PSD matrix (no ground-energy shift)."""
        w, Q = hermitian_eig(G, tols)
        if w[0] < -tols.psd_tol * max(1.0, abs(w[-1])):
            raise NotPSD(f"G has eigenvalue {w[0]:.3e}")
        return cls(np.clip(w, 0.0, None), Q)

    def to_json(self) -> dict:
        obj: dict = {"dim": self.dim, "eigenvalues": self.eigenvalues.tolist()}
        if self.basis is not None:
            obj["basis"] = [[[float(z.real), float(z.imag)] for z in row]
                            for row in self.basis]
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "GeneratingOperator":
        w = np.asarray(obj["eigenvalues"], dtype=float)
        if int(obj["dim"]) != w.size:
            raise DimMismatch("dim field does not match eigenvalue count")
        basis = None
        if obj.get("basis") is not None:
            raw = np.asarray(obj["basis"], dtype=float)
            basis = raw[..., 0] + 1j * raw[..., 1]
        return cls(w, basis)


def normalize_ground(G: GeneratingOperator) -> tuple[GeneratingOperator, float]:
    """Shift G so the smallest eigenvalue is 0.

    Returns ``(G', shift)`` with ``G' = G - E_0 I``; callers mapping budgets
    should use ``E -> E - shift``.
    """
    shift = float(G.eigenvalues[0])
    if shift < 0:
        raise NotPSD(f"ground energy {shift:.3e} is negative")
    if shift == 0.0:
        return G, 0.0
    return GeneratingOperator(G.eigenvalues - shift, G.basis), shift


def spectral_projector(G: GeneratingOperator, lo: float, hi: float) -> np.ndarray:
    """Projector onto the eigenspaces of G with eigenvalue in [lo, hi]."""
    if lo > hi:
        raise DimMismatch(f"empty interval [{lo}, {hi}]")
    mask = (G.eigenvalues >= lo) & (G.eigenvalues <= hi)
    if G.basis is None:
        return np.diag(mask.astype(complex))
    Q = G.basis[:, mask]
    return Q @ Q.conj().T


def mean_energy(G: GeneratingOperator, rho: np.ndarray,
                tols: Tolerances = DEFAULT_TOLS) -> float:
    """Tr(G rho) for a PSD operator rho with trace at most 1."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (G.dim, G.dim):
        raise DimMismatch(f"state shape {rho.shape} does not match dim {G.dim}")
    w = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
    if w[0] < -tols.psd_tol * max(1.0, float(np.linalg.norm(rho))):
        raise NotPSD(f"state has eigenvalue {w[0]:.3e}")
    r = G.to_basis(rho) if G.basis is None else G.basis.conj().T @ rho @ G.basis
    return float(np.real(np.sum(G.eigenvalues * np.diagonal(r).real)))


def vector_energy(G: GeneratingOperator, phi: np.ndarray) -> float:
    """<phi|G|phi> for a (not necessarily normalized) vector."""
    c = G.to_basis(np.asarray(phi, dtype=complex))
    return float(np.sum(G.eigenvalues * np.abs(c) ** 2))


def sample_feasible_states(G: GeneratingOperator, E: float, n: int,
                           seed: int = 0) -> list[np.ndarray]:
    """Pure states with <phi|G|phi> <= E, deterministic for a fixed seed.

    Haar-random unit vectors; infeasible draws are pulled along the geodesic
    toward the canonical ground vector until the energy equals E (bisection
    on the mixing angle), so samples often sit on the constraint boundary.
    """
    if E < 0:
        raise Infeasible(f"energy budget {E} is negative")
    if G.eigenvalues[0] > E:
        raise Infeasible(f"ground energy {G.eigenvalues[0]} exceeds budget {E}")
    rng = np.random.default_rng(seed)
    w = G.eigenvalues
    C = rng.standard_normal((G.dim, n)) + 1j * rng.standard_normal((G.dim, n))
    C /= np.linalg.norm(C, axis=0)
    if E == 0.0:
        mask = w <= 0.0
        C[~mask, :] = 0.0
        nrm = np.linalg.norm(C, axis=0)
        C[:, nrm < 1e-12] = 0.0
        C[0, nrm < 1e-12] = 1.0
        C /= np.linalg.norm(C, axis=0)
    else:
        energies = w @ (np.abs(C) ** 2)
        for j in np.flatnonzero(energies > E):
            C[:, j] = _pull_to_budget(w, C[:, j], E)
    V = C if G.basis is None else G.basis @ C
    return [V[:, j].copy() for j in range(n)]


def _pull_to_budget(w: np.ndarray, psi: np.ndarray, E: float) -> np.ndarray:
    # slerp in eigenbasis coordinates from the ground direction e_0 (energy
    # w[0]) toward psi; the energy along the path is a scalar quadratic
    ov = psi[0]
    if abs(ov) > 1e-14:
        psi = psi * (ov.conjugate() / abs(ov))
        ov = abs(ov)
    perp = psi.copy()
    perp[0] -= ov
    pn = np.linalg.norm(perp)
    if pn < 1e-14:
        e0 = np.zeros_like(psi)
        e0[0] = 1.0
        return e0
    perp = perp / pn
    e_g = float(w[0])
    e_p = float(w @ np.abs(perp) ** 2)
    x = float(w[0] * perp[0].real)

    def energy(theta: float) -> float:
        c, s = np.cos(theta), np.sin(theta)
        return c * c * e_g + s * s * e_p + 2 * c * s * x

    # at(Theta) == psi, which is infeasible; at(0) is the ground direction
    lo, hi = 0.0, float(np.arctan2(pn, abs(ov)))
    for _ in range(60):
        mid = (lo + hi) / 2
        if energy(mid) <= E:
            lo = mid
        else:
            hi = mid
    v = psi.copy()
    v[:] = 0.0
    v[0] = np.cos(lo)
    v += np.sin(lo) * perp
    return v
