"""``wre`` command line: run an experiment, write CSV + JSON + SVG."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from wre import __version__
from wre.errors import DomainError, ParameterError, WreError
from wre.harness import experiments as ex
from wre.harness.plots import render_csv, render_directory
from wre.harness.pool import resolve_threads
from wre.harness.records import write_record

EXIT_OK, EXIT_FAILURE, EXIT_PARAMETER, EXIT_DOMAIN = 0, 1, 2, 3


def parse_grid(text: str) -> np.ndarray:
    """``"a:b:n"`` -> ``numpy.linspace(a, b, n)``."""
    parts = text.split(":")
    try:
        a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
    except (IndexError, ValueError):
        raise ParameterError(f"grid must look like a:b:n, got {text!r}") from None
    if len(parts) != 3 or n < 1:
        raise ParameterError(f"grid must look like a:b:n with n >= 1, got {text!r}")
    return np.linspace(a, b, n)


def parse_list(text: str, kind=float) -> list:
    try:
        return [kind(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ParameterError(f"expected a comma-separated list, got {text!r}") from None


def _betas(args, default):
    if args.betas is not None:
        return parse_list(args.betas, int)
    if args.beta is not None:
        return [args.beta]
    return default


def _cmd_mpd(args, threads):
    ratios = parse_list(args.ratios) if args.beta is None else [args.alpha / args.beta]
    return ex.run_mpd(args.alpha, ratios, args.sigma, args.seed, args.bins, args.sampler, threads)


def _cmd_dominant(args, threads):
    return ex.run_dominant(args.alpha, args.beta, parse_grid(args.gamma_grid), args.trials,
                           args.seed, args.real_entries, threads)


def _cmd_lambda0(args, threads):
    return ex.run_lambda0_sweep(args.alpha, _betas(args, [192, 256, 512, 8192]), args.trials,
                                args.seed, args.lambda0_max, threads=threads)


def _cmd_gap(args, threads):
    return ex.run_gap_sweep(args.alpha, _betas(args, [192, 256, 512, 65536]), args.trials,
                            args.seed, args.lambda0_max, threads)


def _cmd_renyi(args, threads):
    return ex.run_renyi_sweep(args.alpha, parse_list(args.degrees), args.trials, args.seed,
                              args.lambda0_max, threads)


def _cmd_qft(args, threads):
    return ex.run_qft(args.alpha, _betas(args, [256, 512, 8192]), args.trials, args.seed,
                      args.lambda0_max, threads)


def _cmd_grover(args, threads):
    return ex.run_grover(args.ciphertext, args.iterations)


def _cmd_adiabatic(args, threads):
    from wre.quantum.adiabatic import ExactCoverInstance, generate_unique_instance

    if args.instance is not None:
        instance = ExactCoverInstance.from_json(json.loads(Path(args.instance).read_text()))
    elif args.n is not None:
        if not 3 <= args.n <= ex.ADIABATIC_QUBITS_MAX:
            raise ParameterError(f"n must lie in [3, {ex.ADIABATIC_QUBITS_MAX}], got {args.n}")
        instance = generate_unique_instance(args.n, args.seed)
    else:
        instance = None
    return ex.run_adiabatic(instance, args.s_points)


def _cmd_prime(args, threads):
    return ex.run_prime(args.n)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    common.add_argument("--out", default="wre-out", help="output directory")
    common.add_argument("--log2", action="store_true", help="add base-2 display columns")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads; WRE_THREADS overrides")
    common.add_argument("--no-plots", action="store_true", help="skip SVG rendering")

    parser = argparse.ArgumentParser(prog="wre", description=__doc__)
    parser.add_argument("--version", action="version", version=f"wre {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mpd", parents=[common], help="spectral density vs Marchenko-Pastur")
    p.add_argument("--alpha", type=int, default=2000)
    p.add_argument("--beta", type=int, default=None, help="single beta instead of --ratios")
    p.add_argument("--ratios", default="0.25,0.5,1", help="alpha/beta ratios")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--bins", type=int, default=None)
    p.add_argument("--sampler", choices=("auto", "dense", "laguerre"), default="auto")
    p.set_defaults(run=_cmd_mpd)

    p = sub.add_parser("dominant", parents=[common], help="dominant eigenvalue vs alpha gamma^2")
    p.add_argument("--alpha", type=int, default=100)
    p.add_argument("--beta", type=int, default=200)
    p.add_argument("--gamma-grid", default="0:2:21")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--real-entries", action="store_true", help="real Gaussian entries")
    p.set_defaults(run=_cmd_dominant)

    for name, func, trials, helptext in (
        ("lambda0-sweep", _cmd_lambda0, 300, "entropy vs dominant eigenvalue"),
        ("gap-sweep", _cmd_gap, 300, "entanglement gap vs dominant eigenvalue"),
        ("renyi-sweep", _cmd_renyi, 100, "Renyi entropies vs dominant eigenvalue"),
        ("qft", _cmd_qft, 10, "entropy before and after the QFT"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--alpha", type=int, default=128)
        if name != "renyi-sweep":
            p.add_argument("--beta", type=int, default=None)
            p.add_argument("--betas", default=None, help="comma-separated betas")
        else:
            p.add_argument("--degrees", default="1.001,2,100")
        p.add_argument("--trials", type=int, default=trials, help="points per beta")
        p.add_argument("--lambda0-max", type=float, default=0.9 if name == "qft" else ex.LAMBDA0_MAX)
        p.set_defaults(run=func)

    p = sub.add_parser("grover", parents=[common], help="Grover search on the toy hash")
    p.add_argument("--ciphertext", default=ex.DEFAULT_CIPHERTEXT)
    p.add_argument("--iterations", type=int, default=None)
    p.set_defaults(run=_cmd_grover)

    p = sub.add_parser("adiabatic", parents=[common], help="adiabatic Exact Cover ground states")
    p.add_argument("--instance", default=None, help="instance JSON (default: shipped n=12)")
    p.add_argument("--n", type=int, default=None, help="generate a unique-solution instance")
    p.add_argument("--s-points", type=int, default=51)
    p.set_defaults(run=_cmd_adiabatic)

    p = sub.add_parser("prime", parents=[common], help="all balanced bipartitions of the Prime state")
    p.add_argument("--n", type=int, default=12)
    p.set_defaults(run=_cmd_prime)

    p = sub.add_parser("render", help="re-render SVGs from CSVs")
    p.add_argument("path", help="CSV file or directory")
    p.set_defaults(run=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "render":
            target = Path(args.path)
            paths = render_directory(target) if target.is_dir() else [render_csv(target)]
            for path in paths:
                if path is not None:
                    print(path)
            return EXIT_OK
        threads = resolve_threads(args.threads)
        record = args.run(args, threads)
        out = Path(args.out)
        paths = write_record(record, out, log2=args.log2)
        if not args.no_plots:
            paths += [p for p in (render_csv(q) for q in paths if q.suffix == ".csv") if p]
        for path in paths:
            print(path)
        return EXIT_OK
    except DomainError as err:
        print(f"wre: domain error: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    except ParameterError as err:
        print(f"wre: parameter error: {err}", file=sys.stderr)
        return EXIT_PARAMETER
    except WreError as err:
        print(f"wre: error: {err}", file=sys.stderr)
        return EXIT_FAILURE
    except OSError as err:
        print(f"wre: {err}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
