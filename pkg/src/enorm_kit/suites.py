"""Inequality suites: every bound the norms satisfy, evaluated with slack.

Each suite returns ``Check`` rows; a negative slack beyond tolerance is a
failure.  Suites are deterministic given their seed.
"""

from __future__ import annotations

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .enorms import (_kernel_restricted_norm, channel_energy_factor, enorm,
                     seminorm)
from .errors import DimMismatch, InfeasibleState, NotSubunital
from .gspace import GeneratingOperator, mean_energy, sample_feasible_states, vector_energy
from .matcore import as_matrix, operator_norm, svd, trace_norm
from .reports import Check

_INVPHI = (np.sqrt(5.0) - 1) / 2


def _norm(A, G, E, tols) -> float:
    return enorm(A, G, E, tols).value


def inequality_suite_basic(A, B, G: GeneratingOperator, E: float,
                           seed: int = 0,
                           tols: Tolerances = DEFAULT_TOLS) -> list[Check]:
    """Single-space norm inequalities for an operator pair.

    Covers the modulus identity and the Cauchy-Schwarz bound, the two-sided
    product bounds, the orthogonal-sum bounds (when A*B = 0), the
    state-pairing bound on a sampled subnormalized state, the vector bound
    with its energy-ratio constant, the budget-monotonicity chains for both
    norm families, and the sandwich between them.
    """
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape != (G.dim, G.dim) or B.shape != (G.dim, G.dim):
        raise DimMismatch("suite expects square operators on the space of G")
    tol = tols.check_tol
    checks = []

    nA = _norm(A, G, E, tols)
    nB = _norm(B, G, E, tols)

    # modulus identity and Cauchy-Schwarz
    U, s, V = svd(A)
    modA = (V * s) @ V.conj().T
    checks.append(Check.close("|A|_E = ||A||_E (modulus)",
                              _norm(modA, G, E, tols), nA, tol))
    checks.append(Check.leq("|A|_E^2 <= |A*A|_E",
                            nA ** 2, _norm(A.conj().T @ A, G, E, tols), tol))

    # two-sided product bounds
    nAB = _norm(A @ B, G, E, tols)
    m_A = float(s[-1])
    checks.append(Check.leq("m(A)|B|_E <= |AB|_E", m_A * nB, nAB, tol))
    checks.append(Check.leq("|AB|_E <= |A| |B|_E",
                            nAB, operator_norm(A) * nB, tol))

    # orthogonal-range sums (hypothesis <A phi|B phi> = 0 iff A*B = 0)
    if operator_norm(A.conj().T @ B) <= 1e-12 * max(1.0, operator_norm(A)
                                                    * operator_norm(B)):
        nAB_sum = _norm(A + B, G, E, tols)
        checks.append(Check.leq("max(|A|,|B|) <= |A+B|_E (orthogonal)",
                                max(nA, nB), nAB_sum, tol))
        checks.append(Check.leq("|A+B|_E <= sqrt(|A|^2+|B|^2) (orthogonal)",
                                nAB_sum, np.sqrt(nA ** 2 + nB ** 2), tol))

    # state pairing on a sampled subnormalized state
    rng = np.random.default_rng(seed)
    pure = sample_feasible_states(G, E, 3, seed)
    weights = rng.uniform(0.1, 1.0, size=3)
    weights *= rng.uniform(0.3, 1.0) / weights.sum()
    rho = sum(w * np.outer(v, v.conj()) for w, v in zip(weights, pure))
    E_rho = mean_energy(G, rho)
    if E_rho > 0:
        lhs1 = abs(np.trace(A @ rho @ B.conj().T))
        lhs2 = trace_norm(A @ rho @ B.conj().T)
        rhs = _norm(A, G, E_rho, tols) * _norm(B, G, E_rho, tols)
        checks.append(Check.leq("|Tr A rho B*| <= |A rho B*|_1", lhs1, lhs2, tol))
        checks.append(Check.leq("|A rho B*|_1 <= |A|_Erho |B|_Erho",
                                lhs2, rhs, tol))

    # vector bound with the energy-ratio constant (phi need not be feasible)
    phi = rng.standard_normal(G.dim) + 1j * rng.standard_normal(G.dim)
    phi /= np.linalg.norm(phi)
    K_phi = max(1.0, np.sqrt(vector_energy(G, phi) / E))
    checks.append(Check.leq("|A phi| <= K_phi |A|_E",
                            float(np.linalg.norm(A @ phi)), K_phi * nA, tol))

    # budget monotonicity and equivalence, both families
    E1, E2 = E, 2 * E
    nA2 = _norm(A, G, E2, tols)
    checks.append(Check.leq("|A|_E1 <= |A|_E2", nA, nA2, tol))
    checks.append(Check.leq("|A|_E2 <= sqrt(E2/E1)|A|_E1",
                            nA2, np.sqrt(E2 / E1) * nA, tol))
    sA, sA2 = seminorm(A, G, E1), seminorm(A, G, E2)
    checks.append(Check.leq("sn|A|_E1 <= sn|A|_E2", sA, sA2, tol))
    checks.append(Check.leq("sn|A|_E2 <= sqrt(2 E2/E1) sn|A|_E1",
                            sA2, np.sqrt(2 * E2 / E1) * sA, tol))
    checks.append(Check.leq("sqrt(1/2)|A|_E <= sn|A|_E",
                            np.sqrt(0.5) * nA, sA, tol))
    checks.append(Check.leq("sn|A|_E <= |A|_E", sA, nA, tol))
    return checks


def tensor_sum_generator(G1: GeneratingOperator,
                         G2: GeneratingOperator) -> GeneratingOperator:
    """G1 (x) I + I (x) G2 in spectral form on the product space."""
    w = (G1.eigenvalues[:, None] + G2.eigenvalues[None, :]).reshape(-1)
    order = np.argsort(w, kind="stable")
    if G1.basis is None and G2.basis is None:
        if np.all(np.diff(w) >= 0):
            return GeneratingOperator(w)
        basis = np.eye(w.size, dtype=complex)[:, order]
        return GeneratingOperator(w[order], basis)
    Q = np.kron(
        G1.basis if G1.basis is not None else np.eye(G1.dim),
        G2.basis if G2.basis is not None else np.eye(G2.dim))
    return GeneratingOperator(w[order], Q[:, order])


def direct_sum_generator(G1: GeneratingOperator,
                         G2: GeneratingOperator) -> GeneratingOperator:
    """G1 (+) G2 in spectral form on the direct-sum space."""
    w = np.concatenate([G1.eigenvalues, G2.eigenvalues])
    d1, d2 = G1.dim, G2.dim
    Q = np.zeros((d1 + d2, d1 + d2), dtype=complex)
    Q[:d1, :d1] = G1.basis if G1.basis is not None else np.eye(d1)
    Q[d1:, d1:] = G2.basis if G2.basis is not None else np.eye(d2)
    order = np.argsort(w, kind="stable")
    return GeneratingOperator(w[order], Q[:, order])


def _refine_max(fun, xs: np.ndarray, vals: np.ndarray) -> float:
    k = int(np.argmax(vals))
    a = xs[max(0, k - 1)]
    b = xs[min(xs.size - 1, k + 1)]
    c, d = b - _INVPHI * (b - a), a + _INVPHI * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(36):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fun(d)
    return max(float(vals[k]), fc, fd)


def inequality_suite_tensor(A, G1: GeneratingOperator, B,
                            G2: GeneratingOperator, E: float,
                            tols: Tolerances = DEFAULT_TOLS,
                            x_points: int = 15) -> list[Check]:
    """Product-space and direct-sum norm bounds.

    Checks the exact factor-norm identity for A (x) I, the split-budget
    sandwich for A (x) B over an interior budget grid with refinement, the
    operator-norm cap, and the direct-sum interpolation bounds over a
    mixing-weight grid.
    """
    A = as_matrix(A)
    B = as_matrix(B)
    tol = tols.check_tol
    G12 = tensor_sum_generator(G1, G2)
    checks = []

    eye2 = np.eye(G2.dim)
    checks.append(Check.close(
        "|A (x) I|_E^G12 = |A|_E^G1",
        _norm(np.kron(A, eye2), G12, E, tols), _norm(A, G1, E, tols), tol))

    AB = np.kron(A, B)
    nAB = _norm(AB, G12, E, tols)
    xs = E * np.linspace(0.02, 0.98, x_points)

    edges = (E * 1e-9, E * (1 - 1e-9))

    def lower_at(x: float) -> float:
        return _norm(A, G1, x, tols) * _norm(B, G2, E - x, tols)

    lower_vals = np.array([lower_at(float(x)) for x in xs])
    lower = max(_refine_max(lower_at, xs, lower_vals),
                *(lower_at(x) for x in edges))
    checks.append(Check.leq("sup_x |A|_x |B|_(E-x) <= |A(x)B|_E",
                            lower, nAB, tol))

    AA = A.conj().T @ A
    BB = B.conj().T @ B

    def upper_at(x: float) -> float:
        return np.sqrt(_norm(AA, G1, x, tols) * _norm(BB, G2, E - x, tols))

    upper_vals = np.array([upper_at(float(x)) for x in xs])
    upper = max(_refine_max(upper_at, xs, upper_vals),
                *(upper_at(x) for x in edges))
    checks.append(Check.leq("|A(x)B|_E <= sup_x sqrt(|A*A|_x |B*B|_(E-x))",
                            nAB, upper, tol))
    checks.append(Check.leq(
        "|A(x)B|_E <= min(|A|_E |B|, |A| |B|_E)",
        nAB, min(_norm(A, G1, E, tols) * operator_norm(B),
                 operator_norm(A) * _norm(B, G2, E, tols)), tol))

    # direct sum: a deterministic block operator with coupling
    d1, d2 = G1.dim, G2.dim
    D = np.zeros((d1 + d2, d1 + d2), dtype=complex)
    D[:d1, :d1] = A
    D[d1:, d1:] = B
    D[:d1, d1:] = np.outer(A[:, 0], B[0, :])
    Gsum = direct_sum_generator(G1, G2)
    alpha = _norm(D[:, :d1], G1, E, tols)
    beta = _norm(D[:, d1:], G2, E, tols)
    nD = _norm(D, Gsum, E, tols)
    for p in (0.0, 0.25, 0.5, 0.75, 1.0):
        checks.append(Check.leq(
            f"direct-sum lower bound (p={p:g})",
            np.sqrt(p * alpha ** 2 + (1 - p) * beta ** 2), nD, tol))
    checks.append(Check.leq("direct-sum triangle upper bound",
                            nD, alpha + beta, tol))
    return checks


def projector_decay(G: GeneratingOperator, E: float, n_list,
                    tols: Tolerances = DEFAULT_TOLS) -> list[Check]:
    """Constrained norm of the high-energy spectral projectors.

    Always bounded by ``min(1, sqrt(E/n))``; equality holds when the
    spectrum contains both 0 and the level n itself (the number operator).
    """
    checks = []
    w = G.eigenvalues
    for n in n_list:
        n = float(n)
        mask = (w >= n).astype(float)
        if G.basis is None:
            P = np.diag(mask).astype(complex)
        else:
            P = (G.basis * mask) @ G.basis.conj().T
        got = _norm(P, G, E, tols)
        cf = min(1.0, np.sqrt(E / n))
        exact = w[0] == 0.0 and (np.any(np.abs(w - n) < 1e-12)
                                 or np.any((w >= n) & (w <= E)))
        if exact:
            checks.append(Check.close(f"|Pbar_{n:g}|_E = min(1,sqrt(E/n))",
                                      got, cf, 1e-10))
        else:
            checks.append(Check.leq(f"|Pbar_{n:g}|_E <= min(1,sqrt(E/n))",
                                    got, cf, 1e-10))
    return checks


def truncation_error_bound(A, G: GeneratingOperator, E: float, n: float,
                           tols: Tolerances = DEFAULT_TOLS) -> dict:
    """Tail bound sqrt(E/n) |A|_n against the computed tail norm.

    The norm of A restricted to spectral levels above n at budget E is
    dominated by ``sqrt(E/n) ||A||_n``.
    """
    if n <= E:
        raise InfeasibleState(f"need n > E, got n={n}, E={E}")
    A = as_matrix(A)
    w = G.eigenvalues
    mask = (w > n).astype(float)
    if G.basis is None:
        Pbar = np.diag(mask).astype(complex)
    else:
        Pbar = (G.basis * mask) @ G.basis.conj().T
    bound = np.sqrt(E / n) * _norm(A, G, float(n), tols)
    actual = _norm(A @ Pbar, G, E, tols)
    return {
        "bound": bound,
        "actual": actual,
        "check": Check.leq(f"|A(I-P_{n:g})|_E <= sqrt(E/n)|A|_n",
                           actual, bound, tols.check_tol),
    }


def continuity_bound_check(A, B, G: GeneratingOperator, E: float,
                           rho, sigma,
                           tols: Tolerances = DEFAULT_TOLS) -> list[Check]:
    """Trace-norm continuity of rho -> A rho B* on the energy-bounded set."""
    A = as_matrix(A)
    B = as_matrix(B)
    rho = as_matrix(rho)
    sigma = as_matrix(sigma)
    for name, s in (("rho", rho), ("sigma", sigma)):
        tr = float(np.trace(s).real)
        if tr > 1 + 1e-10:
            raise InfeasibleState(f"{name} has trace {tr} > 1")
        if mean_energy(G, s) > E + 1e-10:
            raise InfeasibleState(f"{name} violates the energy bound")
    eps = trace_norm(rho - sigma)
    lhs = trace_norm(A @ rho @ B.conj().T - A @ sigma @ B.conj().T)
    if eps == 0.0:
        return [Check.leq("continuity bound (rho = sigma)", lhs, 0.0,
                          tols.check_tol)]
    big = 4 * E / eps
    rhs = np.sqrt(eps) * (_norm(A, G, E, tols) * _norm(B, G, big, tols)
                          + _norm(B, G, E, tols) * _norm(A, G, big, tols))
    return [Check.leq("|A rho B* - A sigma B*|_1 <= continuity bound",
                      lhs, rhs, tols.check_tol)]


def kadison_bound_check(phi, A, G: GeneratingOperator, E: float,
                        tols: Tolerances = DEFAULT_TOLS) -> list[Check]:
    """Norm bound for the Heisenberg action of a subunital CP map.

    ``|Phi+(A)|_E <= sqrt(|Phi+(I)|) |A|_Y(E)
                  <= sqrt(|Phi+(I)| max(1, Y(E)/E)) |A|_E``
    with Y the channel energy factor.
    """
    A = as_matrix(A)
    T = phi.dual_identity()
    norm_T = operator_norm(T)
    lam_max = float(np.linalg.eigvalsh((T + T.conj().T) / 2)[-1])
    if lam_max > 1 + 1e-9:
        raise NotSubunital(f"Phi+(I) has top eigenvalue {lam_max}")
    Y = channel_energy_factor(phi, G, E, tols)
    lhs = _norm(phi.dual_apply(A), G, E, tols)
    mid_norm = (_norm(A, G, Y, tols) if Y > 1e-12
                else _kernel_restricted_norm(as_matrix(A), G))
    mid = np.sqrt(norm_T) * mid_norm
    K = max(1.0, Y / E)
    rhs = np.sqrt(norm_T * K) * _norm(A, G, E, tols)
    return [
        Check.leq("|Phi+(A)|_E <= sqrt(|Phi+(I)|)|A|_Y", lhs, mid,
                  tols.check_tol),
        Check.leq("sqrt(|Phi+(I)|)|A|_Y <= sqrt(|Phi+(I)| K)|A|_E", mid, rhs,
                  tols.check_tol),
    ]
