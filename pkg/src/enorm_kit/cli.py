"""Command-line front end.

Subcommands: ``enorm``, ``seminorm``, ``profile``, ``verify``.  Operator and
generator arguments take either a JSON file path or an oscillator preset
such as ``oscillator:a`` (with ``--n-max`` and ``--omega``).  Matrix JSON is
``{"rows": r, "cols": c, "data": [[re, im], ...]}`` row-major.

Exit codes: 0 pass, 1 verification failure, 2 bad input, 3 no convergence.
``ENORM_KIT_THREADS`` caps the fan-out of verification suites; output is
canonically ordered, so runs are byte-identical for a fixed config and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import channels as ch
from . import oscillator as osc
from . import suites
from .config import DEFAULT_TOLS
from .enorms import enorm, profile, seminorm, transform_check
from .errors import ENormKitError, NoConvergence, UnknownSuite
from .gspace import GeneratingOperator, normalize_ground
from .reports import Check, all_passed, to_json
from .transforms import SampledFunction, concave_hull, transform_GF

_OSC_OPS = ("a", "adag", "n", "sqrtn", "q", "p", "id")


def _load_matrix_json(obj: dict) -> np.ndarray:
    raw = np.asarray(obj["data"], dtype=float)
    if raw.ndim != 2 or raw.shape[1] != 2:
        raise ENormKitError("matrix data must be a list of [re, im] pairs")
    vals = raw[:, 0] + 1j * raw[:, 1]
    return vals.reshape(int(obj["rows"]), int(obj["cols"]))


def _oscillator_preset(spec: str, n_max: int, omega: float):
    name = spec.split(":", 1)[1] if ":" in spec else "a"
    if name not in _OSC_OPS:
        raise ENormKitError(
            f"unknown oscillator operator {name!r}; pick from {_OSC_OPS}")
    sys_ = osc.build(n_max, omega)
    ops = {
        "a": sys_.a, "adag": sys_.a_dag, "n": sys_.N, "sqrtn": sys_.sqrtN,
        "q": sys_.q, "p": sys_.p, "id": np.eye(sys_.dim, dtype=complex),
    }
    return ops[name]


def _load_operator(arg: str, args) -> np.ndarray:
    if arg.startswith("oscillator"):
        return _oscillator_preset(arg, args.n_max, args.omega)
    with open(arg) as fh:
        return _load_matrix_json(json.load(fh))


def _load_generator(arg: str, args) -> GeneratingOperator:
    if arg.startswith("oscillator"):
        n = osc.build(args.n_max, args.omega)
        return n.number_generator
    with open(arg) as fh:
        G = GeneratingOperator.from_json(json.load(fh))
    G, _ = normalize_ground(G)
    return G


def _threads() -> int:
    raw = os.environ.get("ENORM_KIT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def cmd_enorm(args) -> int:
    A = _load_operator(args.operator, args)
    G = _load_generator(args.generator, args)
    res = enorm(A, G, args.E)
    print(json.dumps({
        "value": res.value,
        "dual_lambda": res.dual_lambda,
        "dual_value": res.dual_value,
        "witness_value": res.witness_value,
        "gap": res.gap,
        "converged": res.converged,
    }, indent=2, sort_keys=True))
    if not res.converged:
        raise NoConvergence(f"duality gap {res.gap:.3e} above tolerance")
    return 0


def cmd_seminorm(args) -> int:
    A = _load_operator(args.operator, args)
    G = _load_generator(args.generator, args)
    print(json.dumps({"value": seminorm(A, G, args.E)}, indent=2,
                     sort_keys=True))
    return 0


def cmd_profile(args) -> int:
    A = _load_operator(args.operator, args)
    G = _load_generator(args.generator, args)
    if args.emin <= 0 or args.emax <= args.emin or args.points < 2:
        raise ENormKitError("need 0 < emin < emax and at least two points")
    grid = np.geomspace(args.emin, args.emax, args.points)
    table = profile(A, G, grid)
    sys.stdout.write(table.to_csv())
    if table.concavity_violations:
        print(f"# concavity violations at grid indices "
              f"{table.concavity_violations}", file=sys.stderr)
        return 1
    return 0


def _random_generator(rng, dim: int) -> GeneratingOperator:
    X = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    G, _ = normalize_ground(GeneratingOperator.from_matrix(X @ X.conj().T / dim))
    return G


def _random_op(rng, dim: int) -> np.ndarray:
    return (rng.standard_normal((dim, dim))
            + 1j * rng.standard_normal((dim, dim))) / np.sqrt(dim)


def _suite_basic(seed: int, dim: int) -> list[Check]:
    rng = np.random.default_rng(seed)
    G = _random_generator(rng, dim)
    A, B = _random_op(rng, dim), _random_op(rng, dim)
    E = float(10 ** rng.uniform(-1, 1))
    return suites.inequality_suite_basic(A, B, G, E, seed=seed)


def _suite_tensor(seed: int, dim: int) -> list[Check]:
    rng = np.random.default_rng(seed)
    d = min(dim, 4)
    G1, G2 = _random_generator(rng, d), _random_generator(rng, d)
    A, B = _random_op(rng, d), _random_op(rng, d)
    E = float(10 ** rng.uniform(-0.5, 0.7))
    return suites.inequality_suite_tensor(A, G1, B, G2, E)


def _suite_transforms(seed: int, dim: int) -> list[Check]:
    rng = np.random.default_rng(seed)
    x = np.geomspace(0.1, 10.0, 200)
    a2, b2 = rng.uniform(0.1, 2.0, size=2)
    affine = SampledFunction(x, a2 + b2 * x)
    rough = SampledFunction(x, rng.uniform(0.2, 2.0, size=x.size))
    checks = []
    hull_a = concave_hull(affine)
    hull_r = concave_hull(rough)
    idx = [0, 50, 100, 150, 199]
    dev_a = max(abs(transform_GF(affine, float(x[i])) - hull_a.f[i])
                for i in idx)
    dev_r = max(abs(transform_GF(rough, float(x[i])) - hull_r.f[i])
                for i in idx)
    checks.append(Check.close(f"GF roundtrip affine (seed {seed})",
                              dev_a, 0.0, 1e-6))
    checks.append(Check.close(f"GF equals hull rough (seed {seed})",
                              dev_r, 0.0, 1e-6))
    G = _random_generator(rng, min(dim, 6))
    A = _random_op(rng, min(dim, 6))
    rep = transform_check(A, G, float(10 ** rng.uniform(-0.5, 0.5)))
    checks.append(Check.close(f"norm transform pair (seed {seed})",
                              rep["max_deviation"], 0.0, 1e-6))
    return checks


def _suite_channels(seed: int, dim: int) -> list[Check]:
    rng = np.random.default_rng(seed)
    d = min(dim, 3)
    phi = ch.random_cptp(d, d, d, seed=seed)
    psi = ch.random_cptp(d, d, d, seed=seed + 10_000)
    G = GeneratingOperator(np.arange(d, dtype=float))
    E = float(rng.choice([0.5, 2.0]))
    rep = ch.ksw_verify(phi, psi, G, E, seed=seed)
    checks = [
        Check.leq(f"KSW left (seed {seed})",
                  rep["cb_norm_lower"] / (np.sqrt(rep["cb_phi"])
                                          + np.sqrt(rep["cb_psi"])),
                  rep["beta_upper"], DEFAULT_TOLS.seesaw_tol),
        Check.leq(f"KSW right (seed {seed})", rep["beta_lower"],
                  np.sqrt(rep["cb_norm_lower"]), DEFAULT_TOLS.seesaw_tol),
    ]
    # Uhlmann cross-check on a random feasible state
    from .gspace import sample_feasible_states
    from .matcore import partial_trace, purify
    Vp, Vq = (ch.kraus_to_stinespring(m.padded(max(len(phi.kraus),
                                                   len(psi.kraus))))
              for m in (phi, psi))
    rho_vec = sample_feasible_states(G, E, 1, seed)[0]
    rho = np.outer(rho_vec, rho_vec.conj())
    val, _ = ch.inner_contraction_value(Vp, Vq, rho)
    eta = purify(rho)
    big = np.outer(eta, eta.conj())
    eyeR = np.eye(d)
    out_p = sum(np.kron(K, eyeR) @ big @ np.kron(K, eyeR).conj().T
                for K in phi.padded(Vp.dim_E).kraus)
    out_q = sum(np.kron(K, eyeR) @ big @ np.kron(K, eyeR).conj().T
                for K in psi.padded(Vq.dim_E).kraus)
    checks.append(Check.close(f"Uhlmann cross-check (seed {seed})", val,
                              np.sqrt(ch.fidelity(out_q, out_p)), 1e-8))
    return checks


def _suite_oscillator(seed: int, dim: int) -> list[Check]:
    sys_ = osc.build(96, 1.0)
    checks = osc.closed_form_suite(sys_, [0.25, 1.0, 4.0, 9.0])
    checks += osc.a_t_family(sys_, 0.5, [1.0, 4.0, 16.0])
    checks += suites.projector_decay(sys_.number_generator, 2.0, [1, 4, 16])
    return checks


_SUITES = {
    "basic": _suite_basic,
    "tensor": _suite_tensor,
    "transforms": _suite_transforms,
    "channels": _suite_channels,
    "oscillator": _suite_oscillator,
}


def cmd_verify(args) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in _SUITES:
            raise UnknownSuite(f"unknown suite {name!r}")
    jobs = []
    for name in names:
        runs = 1 if name == "oscillator" else args.seeds
        for s in range(runs):
            jobs.append((name, args.seed + s))
    results: list[tuple[str, int, list[Check]]] = []
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        futs = [(name, s, pool.submit(_SUITES[name], s, args.dims))
                for name, s in jobs]
        for name, s, fut in futs:
            results.append((name, s, fut.result()))
    results.sort(key=lambda r: (r[0], r[1]))
    checks = []
    for name, s, rows in results:
        for row in rows:
            checks.append(Check(f"{name}[{s}] {row.check}", row.lhs, row.rhs,
                                row.slack, row.passed))
    print(to_json(checks))
    n_fail = sum(not c.passed for c in checks)
    print(f"# {len(checks) - n_fail}/{len(checks)} checks passed",
          file=sys.stderr)
    return 0 if n_fail == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="enorm-kit",
        description="Energy-constrained operator norms and channel distances")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("operator", help="matrix JSON path or oscillator:<op>")
        p.add_argument("generator", help="generator JSON path or oscillator:n")
        p.add_argument("--n-max", type=int, default=128)
        p.add_argument("--omega", type=float, default=1.0)

    p = sub.add_parser("enorm", help="constrained operator norm")
    common(p)
    p.add_argument("--E", type=float, required=True)
    p.set_defaults(fn=cmd_enorm)

    p = sub.add_parser("seminorm", help="ellipsoid norm")
    common(p)
    p.add_argument("--E", type=float, required=True)
    p.set_defaults(fn=cmd_seminorm)

    p = sub.add_parser("profile", help="norm profile CSV over an energy grid")
    common(p)
    p.add_argument("--emin", type=float, required=True)
    p.add_argument("--emax", type=float, required=True)
    p.add_argument("--points", type=int, default=40)
    p.set_defaults(fn=cmd_profile)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(_SUITES) + ["all"])
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--dims", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ENormKitError, OSError, KeyError, ValueError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
