"""Dense complex-matrix primitives with explicit numeric contracts.

Thin, contract-checked wrappers around LAPACK (via numpy/scipy) plus the
bipartite utilities (Kronecker products, partial traces, purifications) that
the norm and channel machinery builds on.  Everything is a pure function of
its inputs.
"""

from __future__ import annotations

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .errors import DimMismatch, NonFinite, NonSquare, NotHermitian, NotPSD


def as_matrix(M) -> np.ndarray:
    """Validate and return ``M`` as a finite complex 2-D array."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2:
        raise DimMismatch(f"expected a matrix, got array of shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise NonFinite("matrix contains NaN or Inf entries")
    return A


def _scale(M: np.ndarray) -> float:
    return max(1.0, float(np.linalg.norm(M)))


def hermitian_part(M, tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
    """Symmetrize ``M`` to (M + M*)/2, erroring if it is far from Hermitian."""
    A = as_matrix(M)
    if A.shape[0] != A.shape[1]:
        raise NonSquare(f"expected square matrix, got shape {A.shape}")
    dev = np.linalg.norm(A - A.conj().T)
    if dev > tols.herm_tol * _scale(A):
        raise NotHermitian(f"||M - M*||_F = {dev:.3e} exceeds tolerance")
    return (A + A.conj().T) / 2


def hermitian_eig(M, tols: Tolerances = DEFAULT_TOLS):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with real eigenvalues ascending
    and orthonormal eigenvector columns, satisfying
    ``||M - Q diag(w) Q*||_F <= tol_eig * max(1, ||M||_F)``.
    """
    A = hermitian_part(M, tols)
    w, Q = np.linalg.eigh(A)
    return w, Q


def svd(M):
    """Singular value decomposition ``M = U diag(s) V*`` with ``s`` descending."""
    A = as_matrix(M)
    U, s, Vh = np.linalg.svd(A)
    return U, s, Vh.conj().T


def sqrtm_psd(M, tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
    """Hermitian square root of a PSD matrix.

    Eigenvalues in ``[-psd_tol * scale, 0)`` are clipped to zero; anything
    lower raises ``NotPSD``.
    """
    w, Q = hermitian_eig(M, tols)
    if w.size and w[0] < -tols.psd_tol * _scale(np.asarray(M)):
        raise NotPSD(f"smallest eigenvalue {w[0]:.3e} is too negative")
    w = np.clip(w, 0.0, None)
    return (Q * np.sqrt(w)) @ Q.conj().T


def polar(T):
    """Polar decomposition ``T = W P`` with ``W`` a partial isometry, ``P`` PSD.

    Built from the SVD (``W = U V*``, ``P = V diag(s) V*``) so rank-deficient
    inputs are handled without special cases.
    """
    U, s, V = svd(T)
    W = U @ V.conj().T
    P = (V * s) @ V.conj().T
    return W, P


def trace_norm(T) -> float:
    """Trace norm: the sum of singular values."""
    A = as_matrix(T)
    return float(np.linalg.svd(A, compute_uv=False).sum())


def operator_norm(T) -> float:
    """Operator (spectral) norm: the largest singular value."""
    A = as_matrix(T)
    if A.size == 0:
        return 0.0
    return float(np.linalg.svd(A, compute_uv=False)[0])


def kron(A, B) -> np.ndarray:
    """Kronecker product."""
    return np.kron(as_matrix(A), as_matrix(B))


def partial_trace(M, dims: tuple[int, int], keep: str) -> np.ndarray:
    """Partial trace of an operator on a bipartite space.

    Args:
        M: square matrix on the tensor product space, ordered X then Y.
        dims: (dim_X, dim_Y).
        keep: "X" to trace out Y, "Y" to trace out X.
    """
    A = as_matrix(M)
    dx, dy = dims
    if A.shape != (dx * dy, dx * dy):
        raise DimMismatch(
            f"matrix shape {A.shape} does not match dims {dx}x{dy}")
    T = A.reshape(dx, dy, dx, dy)
    if keep == "X":
        return np.einsum("ijkj->ik", T)
    if keep == "Y":
        return np.einsum("ijik->jk", T)
    raise DimMismatch("keep must be 'X' or 'Y'")


def purify(rho, tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
    """Purification of a PSD operator with trace at most 1.

    Returns a vector ``eta`` in H (x) H whose partial trace over the second
    factor reproduces ``rho``.  Eigenvalues are paired with the standard
    basis of the second factor in descending order, so a pure input maps to
    ``phi (x) e_0``.
    """
    w, Q = hermitian_eig(rho, tols)
    if w.size and w[0] < -tols.psd_tol * _scale(np.asarray(rho)):
        raise NotPSD(f"smallest eigenvalue {w[0]:.3e} is too negative")
    w = np.clip(w, 0.0, None)
    order = np.argsort(w)[::-1]
    d = w.size
    eta = np.zeros(d * d, dtype=complex)
    for slot, i in enumerate(order):
        eta += np.sqrt(w[i]) * np.kron(Q[:, i], _basis(d, slot))
    return eta


def _basis(d: int, i: int) -> np.ndarray:
    e = np.zeros(d, dtype=complex)
    e[i] = 1.0
    return e


def random_state(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Random density matrix of the given rank (full rank by default)."""
    r = dim if rank is None else rank
    X = rng.standard_normal((dim, r)) + 1j * rng.standard_normal((dim, r))
    rho = X @ X.conj().T
    return rho / np.trace(rho).real


def random_unit_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)
