"""Command-line front end.

One job per invocation; inputs and outputs are CSV (potentials, tables)
and JSON (spectral data, targets, reports).  JSON outputs are
byte-deterministic.  ``--plot PATH`` additionally renders a matplotlib
figure next to the delimited output.

Exit codes: 0 success, 1 invalid input (including inadmissible targets),
2 solver non-convergence or above-tolerance round trip, 3 Darboux
hypothesis violations.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import darboux, inverse, serialize, validate
from .errors import DarbouxError, InputError, SturmkitError
from .forward import spectral_data
from .inverse import ReconstructionOptions
from .potential import lp_norm

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NO_CONVERGENCE = 2
EXIT_DARBOUX = 3


class _NonConvergence(SturmkitError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors, which collides with
    # the documented non-convergence code; route misuse to exit 1 instead
    def error(self, message):
        raise InputError(message)


def _fail(code: int, kind: str, message: str) -> int:
    sys.stderr.write(f"error: {message}\n")
    sys.stderr.write(serialize.dumps({"error": {"exit_code": code, "kind": kind, "message": message}}))
    return code


def _emit(obj, path) -> None:
    text = serialize.dumps(obj)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _recon_options(args) -> ReconstructionOptions:
    return ReconstructionOptions(
        max_iter=args.max_iter, tol=args.tol, damping=args.damping, n_grid=args.n_grid
    )


def _plot_potentials(path, curves, title):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4))
    for label, v in curves:
        ax.plot(v.x, v.samples, label=label)
    ax.set_xlabel("x")
    ax.set_ylabel("v(x)")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _plot_forward(path, pairs, v):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(10, 4))
    ax0.plot(v.x, v.samples)
    ax0.set_xlabel("x")
    ax0.set_ylabel("v(x)")
    ax0.set_title("potential")
    ns = [pr.n for pr in pairs]
    ax1.plot(ns, [pr.mu for pr in pairs], "o-", label="mu_n")
    ax1.plot(ns, [pr.nu for pr in pairs], "s--", label="nu_n")
    ax1.set_xlabel("n")
    ax1.set_title("spectral remainders")
    ax1.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _plot_inverse(path, v, report):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(10, 4))
    ax0.plot(v.x, v.samples)
    ax0.set_xlabel("x")
    ax0.set_ylabel("v(x)")
    ax0.set_title("reconstructed potential")
    if report.residual_history:
        ax1.semilogy(range(1, report.iterations + 1), report.residual_history, "o-")
    ax1.set_xlabel("sweep")
    ax1.set_ylabel("data residual")
    ax1.set_title("convergence")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _cmd_forward(args) -> int:
    v = serialize.load_potential_csv(args.potential)
    pairs = spectral_data(v, args.n)
    _emit(serialize.spectral_data_to_dict(pairs, args.p), args.out)
    if args.mu_csv:
        lines = ["n,lambda,mu,nu,alpha"]
        for pr in pairs:
            lines.append(
                f"{pr.n},{serialize.fmt_float(pr.lam)},{serialize.fmt_float(pr.mu)},"
                f"{serialize.fmt_float(pr.nu)},{serialize.fmt_float(pr.alpha)}"
            )
        with open(args.mu_csv, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    if args.plot:
        _plot_forward(args.plot, pairs, v)
    return EXIT_OK


def _cmd_inverse(args) -> int:
    target = serialize.load_target(args.target)
    opts = _recon_options(args)
    if args.global_pipeline:
        head = args.head if args.head is not None else min(4, target.order)
        v, report = inverse.global_reconstruct(target, head, opts)
    else:
        v, report = inverse.reconstruct(target, opts)
    serialize.save_potential_csv(v, args.out)
    if args.report:
        _emit(serialize.run_report_to_dict(report), args.report)
    if args.plot:
        _plot_inverse(args.plot, v, report)
    if not report.converged:
        raise _NonConvergence("reconstruction did not converge; see the run report")
    return EXIT_OK


def _cmd_darboux(args) -> int:
    v = serialize.load_potential_csv(args.potential)
    if args.mode == "shift-eig":
        out = darboux.shift_eigenvalue(v, args.n, args.t)
    else:
        out = darboux.shift_norming(v, args.n, args.t)
    serialize.save_potential_csv(out, args.out)
    if args.plot:
        _plot_potentials(args.plot, [("input", v), ("shifted", out)], f"{args.mode} n={args.n} t={args.t:g}")
    return EXIT_OK


def _cmd_convert(args) -> int:
    pairs, p = serialize.load_spectral_data(args.data)
    lams = np.array([pr["lambda"] for pr in pairs])
    out_pairs = []
    if args.mode == "alpha-to-nu":
        alphas = np.array([pr["alpha"] for pr in pairs])
        nus = inverse.alpha_to_nu(lams, alphas)
        for pr, nu in zip(pairs, nus):
            out_pairs.append({**pr, "nu": float(nu)})
    else:
        nus = np.array([pr["nu"] for pr in pairs])
        alphas = inverse.nu_to_alpha(lams, nus)
        for pr, al in zip(pairs, alphas):
            out_pairs.append({**pr, "alpha": float(al)})
    _emit(
        {
            "p": p,
            "N": len(out_pairs),
            "pairs": [
                {"n": int(pr["n"]), "lambda": float(pr["lambda"]), "mu": float(pr["mu"]),
                 "nu": float(pr["nu"]), "alpha": float(pr["alpha"])}
                for pr in out_pairs
            ],
        },
        args.out,
    )
    return EXIT_OK


def _cmd_validate(args) -> int:
    if (args.target is None) == (args.potential is None):
        raise InputError("validate needs exactly one of --target or --potential")
    if args.target is not None:
        report = validate.check_admissible(serialize.load_target(args.target))
    else:
        v = serialize.load_potential_csv(args.potential)
        report = validate.asymptotic_decay_check(v, args.n)
    _emit(serialize.validation_report_to_dict(report), args.out)
    return EXIT_OK if report.admissible else EXIT_INPUT


def _cmd_roundtrip(args) -> int:
    v = serialize.load_potential_csv(args.potential)
    n_grid = v.n_grid if args.n_grid is None else args.n_grid
    if n_grid != v.n_grid:
        raise InputError(
            f"--n-grid {n_grid} must match the potential grid {v.n_grid} for the error norm"
        )
    target = inverse.forward_target(v, args.n, p=args.p)
    opts = ReconstructionOptions(
        max_iter=args.max_iter, tol=args.tol, damping=args.damping, n_grid=n_grid
    )
    rec, report = inverse.reconstruct(target, opts)
    err = lp_norm(rec - v, 2.0)
    summary = {
        "N": args.n,
        "l2_error": err,
        "tolerance": args.tol_l2,
        "converged": report.converged,
        "iterations": report.iterations,
        "route": "general" if target.nu_scaled is not None else "even",
    }
    _emit(summary, args.out)
    if args.plot:
        _plot_potentials(args.plot, [("input", v), ("round trip", rec)], f"round trip, L2 error {err:.3e}")
    if not report.converged:
        raise _NonConvergence("round-trip reconstruction did not converge")
    if err > args.tol_l2:
        raise _NonConvergence(f"round-trip L2 error {err:.3e} above tolerance {args.tol_l2:g}")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="sturmkit",
        description="Forward and inverse Dirichlet spectral computations on [0, 1].",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fwd = sub.add_parser("forward", help="spectral data of a potential")
    fwd.add_argument("--potential", required=True, help="input potential CSV (x,v)")
    fwd.add_argument("--n", type=int, required=True, help="number of eigenvalues")
    fwd.add_argument("--out", default=None, help="output JSON path (default stdout)")
    fwd.add_argument("--mu-csv", default=None, help="optional plot-ready table (n,lambda,mu,nu,alpha)")
    fwd.add_argument("--p", type=float, default=2.0, help="Lebesgue class label for the output")
    fwd.add_argument("--plot", default=None, help="render a PNG figure to this path")
    fwd.set_defaults(fn=_cmd_forward)

    inv = sub.add_parser("inverse", help="reconstruct a potential from a target")
    inv.add_argument("--target", required=True, help="target JSON")
    inv.add_argument("--out", required=True, help="output potential CSV")
    inv.add_argument("--report", default=None, help="run report JSON path")
    inv.add_argument("--global", dest="global_pipeline", action="store_true",
                     help="head/tail pipeline for large leading data")
    inv.add_argument("--head", type=int, default=None, help="head size for --global")
    inv.add_argument("--n-grid", type=int, default=512)
    inv.add_argument("--max-iter", type=int, default=200)
    inv.add_argument("--tol", type=float, default=1e-10)
    inv.add_argument("--damping", type=float, default=1.0)
    inv.add_argument("--plot", default=None)
    inv.set_defaults(fn=_cmd_inverse)

    dar = sub.add_parser("darboux", help="move one eigenvalue or norming constant")
    dar.add_argument("mode", choices=["shift-eig", "shift-nu"])
    dar.add_argument("--potential", required=True)
    dar.add_argument("--n", type=int, required=True)
    dar.add_argument("--t", type=float, required=True)
    dar.add_argument("--out", required=True)
    dar.add_argument("--plot", default=None)
    dar.set_defaults(fn=_cmd_darboux)

    conv = sub.add_parser("convert", help="convert between the two auxiliary data kinds")
    conv.add_argument("mode", choices=["alpha-to-nu", "nu-to-alpha"])
    conv.add_argument("--data", required=True, help="spectral data JSON")
    conv.add_argument("--out", default=None, help="output JSON path (default stdout)")
    conv.set_defaults(fn=_cmd_convert)

    val = sub.add_parser("validate", help="admissibility / decay diagnostics")
    val.add_argument("--target", default=None, help="target JSON to check")
    val.add_argument("--potential", default=None, help="potential CSV to check")
    val.add_argument("--n", type=int, default=32, help="eigenvalue count for --potential")
    val.add_argument("--out", default=None, help="report JSON path (default stdout)")
    val.set_defaults(fn=_cmd_validate)

    rt = sub.add_parser("roundtrip", help="forward then inverse, report the L2 error")
    rt.add_argument("--potential", required=True)
    rt.add_argument("--n", type=int, required=True)
    rt.add_argument("--out", default=None, help="summary JSON path (default stdout)")
    rt.add_argument("--p", type=float, default=2.0)
    rt.add_argument("--tol-l2", type=float, default=1e-4)
    rt.add_argument("--n-grid", type=int, default=None, help="iterate grid (default: the potential's)")
    rt.add_argument("--max-iter", type=int, default=200)
    rt.add_argument("--tol", type=float, default=1e-10)
    rt.add_argument("--damping", type=float, default=1.0)
    rt.add_argument("--plot", default=None)
    rt.set_defaults(fn=_cmd_roundtrip)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except DarbouxError as exc:
        return _fail(EXIT_DARBOUX, type(exc).__name__, str(exc))
    except _NonConvergence as exc:
        return _fail(EXIT_NO_CONVERGENCE, "NonConvergence", str(exc))
    except (InputError, OSError) as exc:
        return _fail(EXIT_INPUT, type(exc).__name__, str(exc))


if __name__ == "__main__":
    sys.exit(main())
