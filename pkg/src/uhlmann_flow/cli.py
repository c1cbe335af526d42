"""Command-line front end.

Exit codes: 0 success, 1 domain or invariant failure, 2 I/O or parse failure.
All numbers are written with 17 significant digits so output is byte-stable
and round-trips exactly.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from .dynamics import evolve_exact, evolve_rk4
from .errors import GeometryError
from .matrix_io import MatrixFormatError, load_matrix
from .metric import DynamicMetric, base_metric, bures_metric
from .recurrence import deviation_curve_csv, energy_rep, recurrence_scan
from .states import DensityMatrix, Hamiltonian, density_report
from .verification import default_hamiltonian, first_failure, results_to_dicts, run_suite, suite_passed

EXIT_OK, EXIT_DOMAIN, EXIT_IO = 0, 1, 2


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _shift(value: str):
    return value if value == "auto" else float(value)


def _positive(kind):
    def parse(text):
        value = kind(text)
        if value <= 0:
            raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
        return value

    return parse


def _write(out: str | None, text: str) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _ham(args) -> Hamiltonian:
    return Hamiltonian(load_matrix(args.ham), shift=args.shift)


def cmd_validate(args) -> int:
    M = load_matrix(args.file)
    if args.kind == "density":
        report = density_report(M)
    elif args.kind == "hamiltonian":
        report = {"hermitian": bool(np.linalg.norm(M - M.conj().T) <= 1e-10)}
        report["invertible"] = bool(report["hermitian"] and np.min(np.abs(np.linalg.eigvalsh(M))) >= 1e-10)
    else:
        report = {"trace": bool(abs(np.vdot(M, M).real - 1.0) <= 1e-10)}
        report["invertible"] = bool(np.linalg.svd(M, compute_uv=False)[-1] >= 1e-10)
    for name, ok in report.items():
        print(f"{name}: {'pass' if ok else 'FAIL'}")
    return EXIT_OK if all(report.values()) else EXIT_DOMAIN


def evolve_table(ham: Hamiltonian, rho: DensityMatrix, t: float, steps: int, method: str, dt: float | None) -> str:
    """CSV rows at ``t_k = k t / steps`` for ``k = 1..steps``."""
    n = rho.n
    header = ["t"]
    header += [f"rho_re_{i}_{j}" for i in range(n) for j in range(n)]
    header += [f"rho_im_{i}_{j}" for i in range(n) for j in range(n)]
    header += ["purity", "trace_err"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    spacing = t / steps
    if dt is None:
        dt = spacing if spacing > 0 else 1e-3
    current = rho
    for k in range(1, steps + 1):
        tk = k * spacing
        if method == "exact":
            state = evolve_exact(ham, rho, tk)
        else:
            current = evolve_rk4(ham, current, spacing, dt) if spacing > 0 else current
            state = current
        R = state.rho
        row = [_fmt(tk)] + [_fmt(x) for x in R.real.ravel()] + [_fmt(x) for x in R.imag.ravel()]
        row += [_fmt(state.purity()), _fmt(abs(np.trace(R).real - 1.0))]
        w.writerow(row)
    return buf.getvalue()


def cmd_evolve(args) -> int:
    ham = _ham(args)
    rho = DensityMatrix(load_matrix(args.rho))
    _write(args.out, evolve_table(ham, rho, args.t, args.steps, args.method, args.dt))
    return EXIT_OK


def cmd_metric(args) -> int:
    rho = DensityMatrix(load_matrix(args.rho))
    Y, Z = load_matrix(args.y), load_matrix(args.z)
    if args.bures:
        value = bures_metric(rho, Y, Z)
    else:
        if args.ham is None:
            raise GeometryError("--ham is required unless --bures is given")
        value = base_metric(DynamicMetric(_ham(args)), rho, Y, Z)
    print(json.dumps({"value": value}))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.ham is not None:
        ham = _ham(args)
        if args.n is not None and args.n != ham.n:
            raise GeometryError(f"--n {args.n} does not match Hamiltonian dimension {ham.n}")
    else:
        n = 4 if args.n is None else args.n
        if n < 2:
            raise GeometryError("need --n >= 2")
        ham = default_hamiltonian(n, args.seed)
    results = run_suite(ham, seed=args.seed, checks=args.checks, power=1 if args.corrupt_metric else 2)
    passed = suite_passed(results)
    print(json.dumps({"passed": passed, "first_failure": first_failure(results), "checks": results_to_dicts(results)}, indent=2))
    if not passed:
        print(f"verification failed: {first_failure(results)}", file=sys.stderr)
    return EXIT_OK if passed else EXIT_DOMAIN


def cmd_recur(args) -> int:
    state = energy_rep(_ham(args), DensityMatrix(load_matrix(args.rho)))
    fmt = args.format or ("csv" if args.out and args.out.endswith(".csv") else "json")
    if fmt == "csv":
        _write(args.out, deviation_curve_csv(state, args.t_max, args.grid))
    else:
        report = recurrence_scan(state, args.eps, args.t_max, args.grid)
        _write(args.out, report.to_json() + "\n")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    state = energy_rep(_ham(args), DensityMatrix(load_matrix(args.rho)))
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["n", "n'", "omega", "weight"])
    omega, weight = state.frequencies, state.weights
    for a in range(state.n):
        for b in range(state.n):
            w.writerow([a, b, _fmt(omega[a, b]), _fmt(weight[a, b])])
    if state.stationary:
        print("# stationary: deviation is identically zero", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="uhlmann-flow", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def with_shift(sp):
        sp.add_argument("--shift", type=_shift, default="auto", help="Hamiltonian shift c (H -> H + cI); default auto")

    sp = sub.add_parser("validate", help="check the invariants of a matrix file")
    sp.add_argument("file")
    sp.add_argument("--kind", choices=["density", "hamiltonian", "purification"], default="density")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("evolve", help="von Neumann evolution time series (CSV)")
    sp.add_argument("--ham", required=True)
    sp.add_argument("--rho", required=True)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--steps", type=_positive(int), required=True)
    sp.add_argument("--method", choices=["exact", "rk4"], default="exact")
    sp.add_argument("--dt", type=_positive(float), default=None)
    sp.add_argument("--out", default=None)
    with_shift(sp)
    sp.set_defaults(func=cmd_evolve)

    sp = sub.add_parser("metric", help="induced base metric g(Y, Z) at rho")
    sp.add_argument("--ham", default=None)
    sp.add_argument("--rho", required=True)
    sp.add_argument("--y", required=True)
    sp.add_argument("--z", required=True)
    sp.add_argument("--bures", action="store_true")
    with_shift(sp)
    sp.set_defaults(func=cmd_metric)

    sp = sub.add_parser("verify", help="run the seeded geometric verification suite")
    sp.add_argument("--ham", default=None)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--checks", type=_positive(int), default=10)
    sp.add_argument("--corrupt-metric", action="store_true", help=argparse.SUPPRESS)
    with_shift(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("recur", help="scan for recurrence times")
    sp.add_argument("--ham", required=True)
    sp.add_argument("--rho", required=True)
    sp.add_argument("--eps", type=_positive(float), required=True)
    sp.add_argument("--t-max", type=_positive(float), required=True)
    sp.add_argument("--grid", type=int, default=10_000)
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=["json", "csv"], default=None)
    with_shift(sp)
    sp.set_defaults(func=cmd_recur)

    sp = sub.add_parser("spectrum", help="Bohr frequencies and weights (CSV)")
    sp.add_argument("--ham", required=True)
    sp.add_argument("--rho", required=True)
    with_shift(sp)
    sp.set_defaults(func=cmd_spectrum)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "grid", 2) < 2:
        parser.error("--grid must be at least 2")
    try:
        return args.func(args)
    except MatrixFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (GeometryError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
