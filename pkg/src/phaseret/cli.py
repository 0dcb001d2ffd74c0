"""Command-line front end for reproducible batch experiments.

Every subcommand prints a JSON report to stdout (deterministic for a fixed
config and seed) and exits 0 on success, 2 on validation errors, and 3 on
mathematical degeneracy.  The PHASERET_THREADS environment variable caps the
number of worker threads used by randomized sweeps.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import ambiguity_oracle, measurement, reconstruct, trigpoly
from .grid_signal import bargmann_pair, load_signal, make_grid, save_signal
from .measurement import load_record, record_to_csv, save_record, sine_measurements
from .reconstruct import DegenerateSignalError, classify_pair
from .trigpoly import DerivKind

EXIT_VALIDATION = 2
EXIT_DEGENERATE = 3


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")


def _max_workers() -> int:
    raw = os.environ.get("PHASERET_THREADS", "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_bargmann(args) -> None:
    grid = make_grid(args.n, args.extent)
    plus, minus = bargmann_pair(grid)
    from .grid_signal import fourier

    time_gap = float(np.abs(np.abs(plus.values) - np.abs(minus.values)).max())
    freq_gap = float(
        np.abs(np.abs(fourier(plus).values) - np.abs(fourier(minus).values)).max()
    )
    verdict = classify_pair(plus, minus, tol=args.tol)
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        save_signal(plus, outdir / "bargmann_plus.json")
        save_signal(minus, outdir / "bargmann_minus.json")
    _emit(
        {
            "n": grid.n,
            "extent": grid.extent,
            "max_time_magnitude_gap": time_gap,
            "max_freq_magnitude_gap": freq_gap,
            "verdict": verdict.to_json(),
        }
    )


def cmd_measure(args) -> None:
    phi = load_signal(args.input)
    if args.family == "gauss":
        records = measurement.three_gaussian_measurements(phi)
        names = ["gauss", "gauss-deriv", "gauss-affine"]
    else:
        if args.a is None or args.b is None:
            raise ValueError("the sine family needs --a and --b frequencies")
        records = sine_measurements(phi, args.a, args.b)
        names = ["gauss", f"sine-{args.a}".replace("/", "over"),
                 f"sine-{args.b}".replace("/", "over")]
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for rec, name in zip(records, names):
        path = outdir / f"record_{name}.json"
        save_record(rec, path)
        written.append(str(path))
        if args.csv:
            csv_path = outdir / f"record_{name}.csv"
            record_to_csv(rec, csv_path)
            written.append(str(csv_path))
    _emit({"family": args.family, "records": written})


def cmd_reconstruct(args) -> None:
    rec1, rec2, rec3 = (load_record(p) for p in args.records)
    recovered = reconstruct.reconstruct_three(rec1, rec2, rec3)
    save_signal(recovered, args.out)
    report = {"output": str(args.out), "residual_vs_truth": None}
    if args.truth:
        truth = load_signal(args.truth)
        verdict = classify_pair(truth, recovered, tol=args.tol)
        report["residual_vs_truth"] = verdict.residual
        report["verdict"] = verdict.to_json()
    _emit(report)


def cmd_classify(args) -> None:
    phi = load_signal(args.signals[0])
    psi = load_signal(args.signals[1])
    _emit(classify_pair(phi, psi, tol=args.tol).to_json())


def _sufficiency_trial(seed_seq, n: int, m: int, tol: float) -> dict:
    rng = np.random.default_rng(seed_seq)
    p = trigpoly.random_trigpoly(n, rng)
    candidates = ambiguity_oracle.enumerate_ambiguities(p)
    trial = {"n_candidates": len(candidates)}
    for kind in (DerivKind.CONTINUOUS, DerivKind.DISCRETE):
        ref1, ref2 = trigpoly.sample_measurements(p, m, kind)
        survivors = ambiguity_oracle.filter_by_measurements(
            candidates, m, kind, ref1, ref2, tol
        )
        trial[kind.value] = {
            "n_survivors": len(survivors),
            "all_global_phase": all(
                trigpoly.classify_poly_pair(p, q).kind.value == "global-phase"
                for q in survivors
            ),
        }
    return trial


def cmd_discrete(args) -> None:
    if args.N < 2:
        raise ValueError(f"--N must be at least 2 for discrete experiments, got {args.N}")
    if args.mode == "counterexample":
        if args.kind == "continuous":
            p, q = trigpoly.counterexample_continuous(args.N)
            kind = DerivKind.CONTINUOUS
        else:
            p, q = trigpoly.counterexample_discrete(args.N)
            kind = DerivKind.DISCRETE
        m = args.M if args.M else 2 * args.N - 2
        p1, p2 = trigpoly.sample_measurements(p, m, kind)
        q1, q2 = trigpoly.sample_measurements(q, m, kind)
        verdict = trigpoly.classify_poly_pair(p, q)
        _emit(
            {
                "N": args.N,
                "M": m,
                "kind": kind.value,
                "max_magnitude_gap": float(np.abs(p1 - q1).max()),
                "max_deriv_gap": float(np.abs(p2 - q2).max()),
                "verdict": verdict.to_json(),
            }
        )
    elif args.mode == "sufficiency":
        m = args.M if args.M else 2 * args.N - 1
        seqs = np.random.SeedSequence(args.seed).spawn(args.trials)
        workers = _max_workers()
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                trials = list(
                    pool.map(
                        lambda s: _sufficiency_trial(s, args.N, m, args.tol), seqs
                    )
                )
        else:
            trials = [_sufficiency_trial(s, args.N, m, args.tol) for s in seqs]
        _emit(
            {
                "N": args.N,
                "M": m,
                "seed": args.seed,
                "tol": args.tol,
                "trials": trials,
                "all_global_phase": bool(
                    all(
                        t[k.value]["all_global_phase"]
                        for t in trials
                        for k in (DerivKind.CONTINUOUS, DerivKind.DISCRETE)
                    )
                ),
            }
        )
    else:  # oracle
        rng = np.random.default_rng(args.seed)
        p = trigpoly.random_trigpoly(args.N, rng)
        candidates = ambiguity_oracle.enumerate_ambiguities(p)
        x = np.arange(4 * args.N) / (4 * args.N)
        base = np.abs(p.eval(x))
        circle_gap = max(
            float(np.abs(np.abs(q.eval(x)) - base).max()) for q in candidates
        )
        ac = trigpoly.autocorrelation(p).c
        ac_gap = max(
            float(np.abs(trigpoly.autocorrelation(q).c - ac).max())
            for q in candidates
        )
        if args.out:
            docs = [
                {
                    "N": q.n,
                    "coeffs": [[float(c.real), float(c.imag)] for c in q.coeffs],
                }
                for q in candidates
            ]
            Path(args.out).write_text(json.dumps(docs))
        _emit(
            {
                "N": args.N,
                "seed": args.seed,
                "n_candidates": len(candidates),
                "max_circle_modulus_gap": circle_gap,
                "max_autocorr_deviation": ac_gap,
            }
        )


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phaseret",
        description="Masked-Fourier phase retrieval experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pb = sub.add_parser("bargmann", help="build the conjugate chirped-Gaussian pair")
    pb.add_argument("--n", type=int, default=2048)
    pb.add_argument("--extent", type=float, default=16.0)
    pb.add_argument("--tol", type=float, default=1e-6)
    pb.add_argument("--out", type=str, default=None, help="directory for the signal files")
    pb.set_defaults(func=cmd_bargmann)

    pm = sub.add_parser("measure", help="write magnitude records for a signal file")
    pm.add_argument("--in", dest="input", required=True, type=str)
    pm.add_argument("--family", choices=["gauss", "sine"], default="gauss")
    pm.add_argument("--a", type=_fraction, default=None, help="sine frequency, e.g. 1/1")
    pm.add_argument("--b", type=_fraction, default=None, help="sine frequency, e.g. 2/1")
    pm.add_argument("--out", type=str, default=".", help="output directory")
    pm.add_argument("--csv", action="store_true", help="also export CSV tables")
    pm.set_defaults(func=cmd_measure)

    pr = sub.add_parser("reconstruct", help="invert three Gaussian-family records")
    pr.add_argument("--records", nargs=3, required=True, metavar="RECORD")
    pr.add_argument("--out", type=str, required=True, help="output signal file")
    pr.add_argument("--truth", type=str, default=None, help="reference signal file")
    pr.add_argument("--tol", type=float, default=1e-3)
    pr.set_defaults(func=cmd_reconstruct)

    pc = sub.add_parser("classify", help="compare two signal files")
    pc.add_argument("signals", nargs=2, metavar="SIGNAL")
    pc.add_argument("--tol", type=float, default=1e-6)
    pc.set_defaults(func=cmd_classify)

    pd = sub.add_parser("discrete", help="trigonometric-polynomial experiments")
    pd.add_argument("mode", choices=["sufficiency", "counterexample", "oracle"])
    pd.add_argument("--N", type=int, required=True)
    pd.add_argument("--M", type=int, default=None)
    pd.add_argument("--kind", choices=["continuous", "discrete"], default="continuous")
    pd.add_argument("--trials", type=int, default=50)
    pd.add_argument("--seed", type=int, default=0)
    pd.add_argument("--tol", type=float, default=1e-9)
    pd.add_argument("--out", type=str, default=None)
    pd.set_defaults(func=cmd_discrete)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except DegenerateSignalError as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return 0


if __name__ == "__main__":
    sys.exit(main())
