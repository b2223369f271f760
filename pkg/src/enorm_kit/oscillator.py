"""Truncated ladder operators and their closed-form constrained norms.

The number operator N is the generating operator; on the truncated space
``a`` and ``sqrt(N)`` have constrained norm exactly ``sqrt(E)`` for budgets
up to the truncation level, and the creation operator ``sqrt(E+1)`` one
level below it.  The suites check those closed forms, the position/momentum
norm intervals, the relative-bound estimates, and the fractional-ladder
family that converges strongly but not in the constrained norm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .enorms import enorm, seminorm, sqrtg_bound
from .errors import BadParams, GridTooLarge
from .gspace import GeneratingOperator
from .reports import Check


@dataclass(frozen=True)
class OscillatorSystem:
    """Truncated oscillator operators on an (n_max+1)-dimensional space."""

    n_max: int
    omega: float
    a: np.ndarray
    a_dag: np.ndarray
    N: np.ndarray
    q: np.ndarray
    p: np.ndarray

    @property
    def dim(self) -> int:
        return self.n_max + 1

    @property
    def number_generator(self) -> GeneratingOperator:
        return GeneratingOperator(np.arange(self.dim, dtype=float))

    @property
    def sqrtN(self) -> np.ndarray:
        return np.diag(np.sqrt(np.arange(self.dim, dtype=float))).astype(complex)

    def a_t(self, t: float) -> np.ndarray:
        """Fractional ladder operator: tau_n -> n^{t/2} tau_{n-1}."""
        if t >= 1:
            raise BadParams(f"fractional exponent must satisfy t < 1, got {t}")
        return np.diag(np.arange(1, self.dim, dtype=float) ** (t / 2), 1).astype(complex)

    def a_t_dag(self, t: float) -> np.ndarray:
        return self.a_t(t).conj().T


def build(n_max: int, omega: float = 1.0) -> OscillatorSystem:
    """Truncated oscillator at the given level and frequency."""
    if n_max < 2:
        raise BadParams(f"n_max must be at least 2, got {n_max}")
    if omega <= 0:
        raise BadParams(f"frequency must be positive, got {omega}")
    a = np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), 1).astype(complex)
    a_dag = a.conj().T
    N = np.diag(np.arange(n_max + 1, dtype=float)).astype(complex)
    q = (a_dag + a) / np.sqrt(2 * omega)
    p = 1j * np.sqrt(omega / 2) * (a_dag - a)
    return OscillatorSystem(n_max, float(omega), a, a_dag, N, q, p)


def closed_form_suite(sys: OscillatorSystem, E_grid,
                      tols: Tolerances = DEFAULT_TOLS,
                      norm_tol: float = 1e-8) -> list[Check]:
    """Closed-form norm values over an energy grid.

    Per budget E: ``||a||_E = ||sqrt(N)||_E = sqrt(E)`` and
    ``||a+||_E = sqrt(E+1)`` (exact at this truncation for E <= n_max - 1),
    and the position/momentum norms lie in
    ``(sqrt((2E + 1/2)/w), sqrt((2E + 1)/w)]`` and the w-scaled mirror.
    """
    E_grid = np.asarray(E_grid, dtype=float)
    if E_grid.max() > sys.n_max - 1:
        raise GridTooLarge(
            f"E up to {E_grid.max()} exceeds the exactness threshold "
            f"{sys.n_max - 1} of this truncation")
    G = sys.number_generator
    w = sys.omega
    checks = []
    for E in E_grid:
        E = float(E)
        checks.append(Check.close(
            f"|a|_E=sqrt(E) @E={E:g}",
            enorm(sys.a, G, E, tols).value, np.sqrt(E), norm_tol))
        checks.append(Check.close(
            f"|adag|_E=sqrt(E+1) @E={E:g}",
            enorm(sys.a_dag, G, E, tols).value, np.sqrt(E + 1), norm_tol))
        checks.append(Check.close(
            f"|sqrtN|_E=sqrt(E) @E={E:g}",
            enorm(sys.sqrtN, G, E, tols).value, np.sqrt(E), norm_tol))
        nq = enorm(sys.q, G, E, tols).value
        np_ = enorm(sys.p, G, E, tols).value
        checks.append(Check.leq(
            f"|q|_E>lower @E={E:g}", np.sqrt((2 * E + 0.5) / w), nq, -1e-12))
        checks.append(Check.leq(
            f"|q|_E<=upper @E={E:g}", nq, np.sqrt((2 * E + 1) / w), 1e-10))
        checks.append(Check.leq(
            f"|p|_E>lower @E={E:g}", np.sqrt((2 * E + 0.5) * w), np_, -1e-12))
        checks.append(Check.leq(
            f"|p|_E<=upper @E={E:g}", np_, np.sqrt((2 * E + 1) * w), 1e-10))
    return checks


def seminorm_report(sys: OscillatorSystem, E_grid) -> list[dict]:
    """Computed ellipsoid norms of the ladder pair next to the two candidate
    closed forms.

    Direct evaluation at this truncation gives
    ``|||a|||_E = sqrt(E n/(E + n))`` and
    ``|||adag|||_E = max(1, sqrt(E n/(E + n - 1)))`` with n = n_max, whose
    untruncated limits are ``sqrt(E)`` and ``max(1, sqrt(E))``; the swapped
    assignment of those limits is also reported so the discrepancy with the
    stated values is visible rather than hidden.
    """
    G = sys.number_generator
    n = sys.n_max
    rows = []
    for E in np.asarray(E_grid, dtype=float):
        E = float(E)
        rows.append({
            "E": E,
            "seminorm_a": seminorm(sys.a, G, E),
            "seminorm_adag": seminorm(sys.a_dag, G, E),
            "derived_a_truncated": np.sqrt(E * n / (E + n)),
            "derived_adag_truncated": max(1.0, np.sqrt(E * n / (E + n - 1))),
            "derived_a_limit": np.sqrt(E),
            "derived_adag_limit": max(1.0, np.sqrt(E)),
            "stated_a": max(1.0, np.sqrt(E)),
            "stated_adag": np.sqrt(E),
            "swap_discrepancy": True,
        })
    return rows


def sqrtn_bound_suite(sys: OscillatorSystem, E_max: float,
                      points: int = 8,
                      tols: Tolerances = DEFAULT_TOLS,
                      rel_tol: float = 0.02) -> list[Check]:
    """Relative-bound estimates of a, a+, q, p against their exact values.

    The estimate at E_max approaches 1, 1, sqrt(2/w), sqrt(2w) respectively;
    agreement within 2 percent needs E_max around 50.
    """
    if E_max > sys.n_max / 4:
        raise GridTooLarge(
            f"E_max {E_max} exceeds the truncation headroom {sys.n_max / 4}")
    G = sys.number_generator
    E_list = np.geomspace(max(1.0, E_max / 50), E_max, points)
    loose = tols.with_(lambda_rel_tol=1e-8)
    w = sys.omega
    targets = [
        ("b(a)", sys.a, 1.0),
        ("b(adag)", sys.a_dag, 1.0),
        ("b(q)", sys.q, np.sqrt(2 / w)),
        ("b(p)", sys.p, np.sqrt(2 * w)),
    ]
    checks = []
    for name, op, want in targets:
        got = sqrtg_bound(op, G, E_list, loose)
        checks.append(Check.close(f"{name} @omega={w:g}", got, want,
                                  rel_tol * want))
    return checks


def a_t_family(sys: OscillatorSystem, t: float, E_grid,
               tols: Tolerances = DEFAULT_TOLS) -> list[Check]:
    """Fractional ladder family: norm bounds and the convergence contrast.

    Checks ``||a_t||_E <= E^{t/2}`` and ``||a_t+||_E <= (E+1)^{t/2}``, that
    the relative distance ``||a - a_t||_E / sqrt(E)`` does not decay as the
    budget grows, and that the pointwise action difference on fixed low
    levels matches its closed form (it vanishes as t -> 1 even though the
    norm distance does not).
    """
    if t >= 1:
        raise BadParams(f"fractional exponent must satisfy t < 1, got {t}")
    E_grid = np.asarray(E_grid, dtype=float)
    if E_grid.max() > sys.n_max - 1:
        raise GridTooLarge("grid exceeds the truncation threshold")
    G = sys.number_generator
    at = sys.a_t(t)
    diff = sys.a - at
    checks = []
    ratios = []
    for E in E_grid:
        E = float(E)
        checks.append(Check.leq(
            f"|a_t|_E<=E^(t/2) @E={E:g}",
            enorm(at, G, E, tols).value, E ** (t / 2), 1e-10))
        checks.append(Check.leq(
            f"|a_t_dag|_E<=(E+1)^(t/2) @E={E:g}",
            enorm(at.conj().T, G, E, tols).value, (E + 1) ** (t / 2), 1e-10))
        ratios.append(enorm(diff, G, E, tols).value / np.sqrt(E))
    checks.append(Check.leq(
        f"|a-a_t|_E/sqrt(E) stays large (t={t:g})",
        0.5 * (1 - sys.n_max ** ((t - 1) / 2)), min(ratios), 1e-12))
    for k in (1, 5):
        want = abs(np.sqrt(k) - k ** (t / 2))
        e_k = np.zeros(sys.dim)
        e_k[k] = 1.0
        checks.append(Check.close(
            f"|(a-a_t) tau_{k}| (t={t:g})",
            float(np.linalg.norm(diff @ e_k)), want, 1e-12))
    return checks
