"""Command-line surface.

Subcommands: construct (build and persist a pair), verify (certify a
persisted pair), spectrogram (tabulate Gabor magnitudes to CSV or PGM),
probe (Gaussian-uniqueness feasibility search), selftest (acceptance
suite). Exit codes: 0 success, 1 verification failure, 2 invalid
arguments, 3 numerical failure; every non-zero exit prints one
machine-parsable `gul: <category>: <reason>` line on stderr.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from typing import List, Optional

import numpy as np

from . import __version__, fock, signals, storage
from .counterexamples import (Window, base_pair, density_construct,
                              perturb_pair, shifted_pair, verify_agreement,
                              verify_distinct)
from .gabor import GridSpec, LineFamily, spectrogram_grid
from .probe import ProbeConfig, UnderdeterminedError, constant_fit_search
from .quad import QuadratureError

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting so errors map to exit 2."""

    def error(self, message):
        raise ValueError(message)


def _diag(category: str, reason: str) -> None:
    print(f"gul: {category}: {reason}", file=sys.stderr)


def _build_parser() -> _Parser:
    p = _Parser(prog="gul", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="construct and persist a counterexample pair")
    c.add_argument("--mode", required=True, choices=["base", "shifted", "perturb", "density"])
    c.add_argument("--a", type=float, default=0.25, help="line spacing")
    c.add_argument("--delta", type=float, default=None, help="multiplier amplitude")
    c.add_argument("--epsilon", type=float, default=None, help="closeness budget")
    c.add_argument("--theta", type=float, default=0.0, help="line rotation (radians)")
    c.add_argument("--lambda0-re", type=float, default=0.0)
    c.add_argument("--lambda0-im", type=float, default=0.0)
    c.add_argument("--hermite", type=int, default=None, help="Hermite index of the reference signal")
    c.add_argument("--coeffs", default=None, help="coefficient file (n re im per line)")
    c.add_argument("--out", required=True, help="output directory")

    v = sub.add_parser("verify", help="verify a persisted pair")
    v.add_argument("--pair", required=True)
    v.add_argument("--xmin", type=float, default=-5.0)
    v.add_argument("--xmax", type=float, default=5.0)
    v.add_argument("--xstep", type=float, default=0.1)
    v.add_argument("--nmin", type=int, default=None)
    v.add_argument("--nmax", type=int, default=None)
    v.add_argument("--tol", type=float, default=None,
                   help="agreement tolerance (default 1e-10 fast, 1e-8 oracle)")
    v.add_argument("--oracle", action="store_true",
                   help="use the time-domain quadrature oracle")

    s = sub.add_parser("spectrogram", help="tabulate Gabor magnitudes")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--pair", default=None)
    src.add_argument("--hermite", type=int, default=None)
    s.add_argument("--which", choices=["plus", "minus"], default="plus")
    s.add_argument("--xmin", type=float, required=True)
    s.add_argument("--xmax", type=float, required=True)
    s.add_argument("--xstep", type=float, required=True)
    s.add_argument("--wmin", type=float, required=True)
    s.add_argument("--wmax", type=float, required=True)
    s.add_argument("--wstep", type=float, required=True)
    s.add_argument("--format", choices=["csv", "pgm"], default="csv")
    s.add_argument("--out", required=True)

    pr = sub.add_parser("probe", help="Gaussian-uniqueness feasibility search")
    pr.add_argument("--a", type=float, required=True)
    pr.add_argument("--R", type=float, required=True, dest="radius")
    pr.add_argument("--N", type=int, required=True, dest="max_degree")
    pr.add_argument("--starts", type=int, default=20)
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--tol-feas", type=float, default=1e-8)
    pr.add_argument("--out", required=True)

    sub.add_parser("selftest", help="run the acceptance suite")
    return p


def _load_reference_signal(args) -> signals.TimeSignal:
    if args.coeffs is not None:
        return storage.read_signal(args.coeffs)
    if args.hermite is not None:
        if args.hermite < 0:
            raise ValueError("--hermite must be nonnegative")
        return signals.hermite_signal(args.hermite)
    raise ValueError("provide --hermite or --coeffs")


def _cmd_construct(args) -> int:
    t0 = time.time()
    lam = complex(args.lambda0_re, args.lambda0_im)
    fam = LineFamily(a=args.a, theta=args.theta, lambda0=lam)
    if args.mode == "base":
        pair = base_pair(args.a)
    elif args.mode == "shifted":
        if args.delta is None:
            raise ValueError("--mode shifted requires --delta")
        pair = shifted_pair(args.a, args.delta)
    elif args.mode == "perturb":
        F = fock.from_series_coeffs(_load_reference_signal(args).coeffs)
        pair = perturb_pair(F, fam, epsilon=args.epsilon, delta=args.delta)
    else:  # density
        if args.epsilon is None:
            raise ValueError("--mode density requires --epsilon")
        pair = density_construct(_load_reference_signal(args), args.epsilon, fam)
    extra = {
        "command": "construct",
        "library_version": __version__,
        "wall_time_s": time.time() - t0,
    }
    storage.save_pair(args.out, pair, extra)
    print(f"pair written to {args.out}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    t0 = time.time()
    pair = storage.load_pair(args.pair)
    n_range = None
    if args.nmin is not None or args.nmax is not None:
        n_range = (args.nmin if args.nmin is not None else -20,
                   args.nmax if args.nmax is not None else 20)
    window = Window(x_range=(args.xmin, args.xmax), x_step=args.xstep, n_range=n_range)
    tol = args.tol if args.tol is not None else (1e-8 if args.oracle else 1e-10)
    agreement = verify_agreement(pair, window, tol=tol, oracle=args.oracle)
    distinct = verify_distinct(pair, window=window)

    storage.write_manifest(os.path.join(args.pair, "agreement_report.txt"), {
        "max_abs_diff": agreement.max_abs_diff,
        "max_rel_diff": agreement.max_rel_diff,
        "points_checked": agreement.points_checked,
        "max_magnitude": agreement.max_magnitude,
        "tol": agreement.tol,
        "oracle": agreement.oracle,
        "argmax_x": agreement.argmax_point[0],
        "argmax_w": agreement.argmax_point[1],
        "pass": agreement.passed,
    })
    storage.write_manifest(os.path.join(args.pair, "distinct_report.txt"), {
        "phase_distance": distinct.phase_distance,
        "alpha": distinct.alpha,
        "root_witness_re": distinct.root_witness.real if distinct.root_witness else "none",
        "root_witness_im": distinct.root_witness.imag if distinct.root_witness else "none",
        "pass": distinct.passed,
    })
    storage.write_manifest(os.path.join(args.pair, "verify_manifest.txt"), {
        "command": "verify",
        "library_version": __version__,
        "agreement_pass": agreement.passed,
        "distinct_pass": distinct.passed,
        "oracle": agreement.oracle,
        "wall_time_s": time.time() - t0,
        "output_file_0": "agreement_report.txt",
        "output_file_1": "distinct_report.txt",
    })
    if not (agreement.passed and distinct.passed):
        _diag("verification_failed",
              f"agreement={agreement.passed} distinct={distinct.passed} "
              f"max_abs_diff={agreement.max_abs_diff:.3e}")
        return EXIT_VERIFY
    print(f"verification passed ({agreement.points_checked} points)")
    return EXIT_OK


def _cmd_spectrogram(args) -> int:
    t0 = time.time()
    if args.pair is not None:
        pair = storage.load_pair(args.pair)
        image = pair.image_plus if args.which == "plus" else pair.image_minus
    else:
        if args.hermite < 0:
            raise ValueError("--hermite must be nonnegative")
        image = fock.normalized_monomial(args.hermite)
    grid = spectrogram_grid(image, GridSpec(args.xmin, args.xmax, args.xstep,
                                            args.wmin, args.wmax, args.wstep))
    if args.format == "csv":
        storage.write_grid_csv(args.out, grid)
    else:
        storage.write_pgm(args.out, grid)
    storage.write_manifest(args.out + ".manifest", {
        "command": "spectrogram",
        "library_version": __version__,
        "format": args.format,
        "x_min": grid.x_min, "x_max": grid.x_max, "x_step": grid.x_step,
        "w_min": grid.w_min, "w_max": grid.w_max, "w_step": grid.w_step,
        "rows": grid.values.shape[0], "cols": grid.values.shape[1],
        "wall_time_s": time.time() - t0,
        "output_file_0": os.path.basename(args.out),
    })
    print(f"grid written to {args.out}")
    return EXIT_OK


def _cmd_probe(args) -> int:
    t0 = time.time()
    cfg = ProbeConfig(a=args.a, radius=args.radius, max_degree=args.max_degree,
                      starts=args.starts, tol_feas=args.tol_feas, seed=args.seed)
    result = constant_fit_search(cfg)
    os.makedirs(args.out, exist_ok=True)
    lines = {}
    for m in result.minimizers:
        lines[f"minimizer_{m.start_index}_residual"] = m.residual
        lines[f"minimizer_{m.start_index}_distance"] = m.distance_to_constants
        lines[f"minimizer_{m.start_index}_feasible"] = m.feasible
    storage.write_manifest(os.path.join(args.out, "probe_result.txt"), {
        "verdict": result.verdict,
        "n_points": result.n_points,
        "n_feasible": len(result.feasible),
        **lines,
    })
    storage.write_manifest(os.path.join(args.out, "manifest.txt"), {
        "command": "probe",
        "library_version": __version__,
        "a": cfg.a, "R": cfg.radius, "N": cfg.max_degree,
        "starts": cfg.starts, "seed": cfg.seed,
        "exploratory": cfg.a >= 1.0,
        "wall_time_s": time.time() - t0,
        "output_file_0": "probe_result.txt",
    })
    print(f"verdict: {result.verdict}")
    return EXIT_OK


def _cmd_selftest(_args) -> int:
    from . import acceptance

    results = acceptance.run_all(report=print)
    n_pass = sum(r.passed for r in results)
    print(f"{n_pass}/{len(results)} criteria passed")
    if n_pass != len(results):
        _diag("selftest_failed", f"{len(results) - n_pass} criteria failed")
        return EXIT_VERIFY
    return EXIT_OK


_COMMANDS = {
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "spectrogram": _cmd_spectrogram,
    "probe": _cmd_probe,
    "selftest": _cmd_selftest,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except ValueError as exc:
        _diag("invalid_arguments", str(exc))
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (OverflowError, QuadratureError, UnderdeterminedError,
            np.linalg.LinAlgError) as exc:
        # before ValueError: UnderdeterminedError is one, but it is numerical
        _diag("numerical_failure", str(exc))
        return EXIT_NUMERIC
    except (ValueError, FileNotFoundError) as exc:
        _diag("invalid_arguments", str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
