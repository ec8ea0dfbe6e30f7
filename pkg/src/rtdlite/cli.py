"""Command-line interface.

Exit codes: 0 success, 1 a check reported FAIL, 2 I/O, parse or validation
failure, 3 disconnected input, 4 dimension mismatch. Errors print a single
``error: <code>: <detail>`` line on stderr.
"""

from __future__ import annotations

import argparse
import contextlib
import sys

import numpy as np

from . import __version__
from .batch import compare_all
from .errors import DimensionMismatchError, DisconnectedInputError, InvalidMatrixError
from .experiments import BENCH_SIZES, run_bench, run_trend
from .gradient import gradcheck, rtdl_subgradient, write_sparse_csv
from .graph_core import read_matrix_csv
from .rtdl import RtdlOptions, pairwise_distances, rtdl_barcode, rtdl_sum, symmetrized_rtdl
from .synth import SynthSpec, generate, read_cloud_csv, write_cloud_csv

EXIT_FAIL = 1
EXIT_IO = 2
EXIT_DISCONNECTED = 3
EXIT_DIMENSION = 4

GRADCHECK_TOL = 1e-4


class CliError(Exception):
    def __init__(self, exit_code: int, code: str, detail: str):
        super().__init__(detail)
        self.exit_code = exit_code
        self.code = code
        self.detail = detail


def _options(args) -> RtdlOptions:
    return RtdlOptions(
        normalize=not args.no_normalize,
        quantile=args.quantile,
        allow_infinite_bars=getattr(args, "allow_infinite_bars", False),
    )


def _read_graph(path: str, kind: str, metric: str):
    try:
        if kind == "matrix":
            return read_matrix_csv(path)
        return pairwise_distances(read_cloud_csv(path), metric)
    except (OSError, ValueError) as exc:
        if isinstance(exc, DimensionMismatchError):
            raise
        raise CliError(EXIT_IO, "io", f"{path}: {exc}".replace("\n", " ")) from exc


def _read_points(path: str) -> np.ndarray:
    try:
        return read_cloud_csv(path)
    except (OSError, ValueError) as exc:
        raise CliError(EXIT_IO, "io", f"{path}: {exc}".replace("\n", " ")) from exc


def _pair(args):
    a = _read_graph(args.a, args.kind, args.metric)
    b = _read_graph(args.b, args.kind, args.metric)
    if a.n != b.n:
        raise DimensionMismatchError(f"vertex counts differ: {a.n} vs {b.n}")
    return a, b


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        try:
            fh = open(path, "w")
        except OSError as exc:
            raise CliError(EXIT_IO, "io", f"{path}: {exc}") from exc
        with fh:
            yield fh


def cmd_barcode(args) -> int:
    a, b = _pair(args)
    if args.direction == "sym":
        raise CliError(EXIT_IO, "usage", "barcode needs --direction ab or ba")
    if args.direction == "ba":
        a, b = b, a
    bc = rtdl_barcode(a, b, _options(args), direction=args.direction.upper())
    with _output(args.out) as fh:
        fh.write(bc.to_json(drop_zero=args.drop_zero) + "\n")
    return 0


def _scalar(a, b, args) -> float:
    options = _options(args)
    if args.direction == "sym":
        return symmetrized_rtdl(a, b, options)
    if args.direction == "ba":
        a, b = b, a
    return rtdl_sum(a, b, options).value


def cmd_rtdl(args) -> int:
    a, b = _pair(args)
    with _output(args.out) as fh:
        fh.write(repr(_scalar(a, b, args)) + "\n")
    return 0


def cmd_grad(args) -> int:
    a, b = _pair(args)
    value, sg = rtdl_subgradient(a, b, _options(args))
    with _output(args.out) as fh:
        fh.write(f"# rtdl={value.value!r} q_a={sg.frozen_divisors[0]!r} q_b={sg.frozen_divisors[1]!r}\n")
        fh.write("# d_a\n")
        write_sparse_csv(sg.d_a, fh)
        fh.write("# d_b\n")
        write_sparse_csv(sg.d_b, fh)
    return 0


def cmd_matrix(args) -> int:
    if args.kind == "matrix":
        reps = [np.asarray(_read_graph(p, "matrix", args.metric).w) for p in args.inputs]
    else:
        reps = [_read_points(p) for p in args.inputs]
    labels = args.labels.split(",") if args.labels else list(args.inputs)
    subsample = (args.subsample, args.seed) if args.subsample else None
    cm = compare_all(
        reps,
        policy=args.direction,
        subsample=subsample,
        parallelism=args.parallelism,
        labels=labels,
        options=_options(args),
        kind=args.kind,
        metric=args.metric,
    )
    fmt = args.format or ("json" if (args.out or "").endswith(".json") else "csv")
    with _output(args.out) as fh:
        if fmt == "json":
            fh.write(cm.to_json() + "\n")
        else:
            cm.to_csv(fh)
    return 0


def cmd_gradcheck(args) -> int:
    errors = gradcheck(n_instances=args.instances, n_points=args.points, seed=args.seed)
    worst = max(errors)
    ok = worst <= GRADCHECK_TOL
    with _output(args.out) as fh:
        status = "PASS" if ok else "FAIL"
        fh.write(f"{status} rel_err_max<=1e-4 instances={len(errors)} rel_err_max={worst:.3e}\n")
    return 0 if ok else EXIT_FAIL


def cmd_synth(args) -> int:
    spec = SynthSpec(
        kind=args.type,
        n_points=args.n,
        seed=args.seed,
        ring_count=args.count if args.type == "rings" else 1,
        cluster_count=args.count if args.type == "clusters" else 1,
        dimension=args.dimension,
    )
    with _output(args.out) as fh:
        write_cloud_csv(generate(spec), fh, header=spec.header())
    return 0


def cmd_trend(args) -> int:
    seeds = range(args.seed, args.seed + args.seeds)
    reports = {
        normalize: run_trend(args.suite, seeds=seeds, n_points=args.n, normalize=normalize,
                             quantile=args.quantile)
        for normalize in (True, False)
    }
    for report in reports.values():
        for line in report.summary_lines():
            print(line)
    chosen = reports[not args.no_normalize]
    print(
        f"kendall_tau={chosen.mean_tau(args.orientation):+.4f} "
        f"orientation={args.orientation} normalize={chosen.normalize}"
    )
    if args.out:
        with _output(args.out) as fh:
            chosen.to_csv(fh)
    return 0


def cmd_bench(args) -> int:
    report = run_bench(sizes=tuple(args.sizes), dimension=args.dimension, seed=args.seed,
                       repeats=args.repeats)
    for line in report.summary_lines():
        print(line)
    if args.out:
        with _output(args.out) as fh:
            report.to_csv(fh)
    return 0


def _common(p: argparse.ArgumentParser, pair: bool = True) -> None:
    p.add_argument("--quantile", type=float, default=0.9, help="normalization quantile level")
    p.add_argument("--no-normalize", action="store_true", help="skip quantile normalization")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    if pair:
        p.add_argument("--kind", choices=("matrix", "cloud"), default="matrix")
        p.add_argument("--metric", default="euclidean")
        p.add_argument("--allow-infinite-bars", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rtdlite", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, help_ in (
        ("barcode", cmd_barcode, "RTD-Lite barcode as JSON"),
        ("rtdl", cmd_rtdl, "scalar RTDL"),
        ("grad", cmd_grad, "sparse subgradient in both weight matrices"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("a")
        p.add_argument("b")
        _common(p)
        p.add_argument("--direction", choices=("ab", "ba", "sym"), default="ab")
        p.add_argument("--drop-zero", action="store_true", help="hide zero-length intervals")
        p.set_defaults(func=func)

    p = sub.add_parser("matrix", help="pairwise RTDL matrix over many inputs")
    p.add_argument("inputs", nargs="+")
    _common(p)
    p.add_argument("--direction", choices=("ab", "ba", "sym"), default="ab")
    p.add_argument("--labels", default=None, help="comma-separated labels")
    p.add_argument("--subsample", type=int, default=None, help="rows kept per representation")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parallelism", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.set_defaults(func=cmd_matrix, kind="cloud")

    p = sub.add_parser("gradcheck", help="finite-difference check of point gradients")
    p.add_argument("--instances", type=int, default=50)
    p.add_argument("--points", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gradcheck)

    p = sub.add_parser("synth", help="generate a synthetic point cloud")
    p.add_argument("--type", choices=("rings", "clusters", "gaussian_cloud"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1, help="ring or cluster count")
    p.add_argument("--dimension", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("trend", help="Kendall tau of RTDL against cluster/ring count")
    p.add_argument("suite", choices=("clusters", "rings"))
    p.add_argument("--seeds", type=int, default=10, help="number of seeds")
    p.add_argument("--seed", type=int, default=0, help="first seed")
    p.add_argument("--n", type=int, default=None, help="points per cloud")
    p.add_argument("--orientation", choices=("sym", "ab", "ba"), default="sym")
    _common(p, pair=False)
    p.set_defaults(func=cmd_trend)

    p = sub.add_parser("bench", help="time RTDL on Gaussian clouds and fit the scaling exponent")
    p.add_argument("--sizes", type=int, nargs="+", default=list(BENCH_SIZES))
    p.add_argument("--dimension", type=int, default=10)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        code, exit_code, detail = exc.code, exc.exit_code, exc.detail
    except DisconnectedInputError as exc:
        code, exit_code, detail = "disconnected", EXIT_DISCONNECTED, str(exc)
    except DimensionMismatchError as exc:
        code, exit_code, detail = "dimension", EXIT_DIMENSION, str(exc)
    except (InvalidMatrixError, ValueError, OSError) as exc:
        code, exit_code, detail = "io", EXIT_IO, str(exc)
    print(f"error: {code}: {detail}".replace("\n", " "), file=sys.stderr)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
