"""Command-line interface: generate, select, embed, evaluate, bench.

Every run prints its fully resolved configuration as JSON on stderr. Usage
errors exit with status 2, runtime errors with status 1.
"""

import argparse
import contextlib
import json
import sys
import time
import warnings

from . import __version__
from .datagen import GaussianCloudSpec, PolylineCloudSpec, generate_gaussian, generate_polylines
from .distance import Kernel, set_threads
from .embedding import project_all
from .evaluation import PairSampling, run_experiment
from .io import (BENCH_COLUMNS, read_indices, read_streamlines, write_indices,
                 write_matrix_csv, write_results_csv, write_rows_csv, write_streamlines)
from .selection import DEFAULT_C, Policy, select

DEFAULT_SEED = 0


def _int_list(text):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _policy_list(text):
    try:
        return [Policy(v.strip()) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"policies must be among random,fft,sff: {text!r}")


def _positive_float(text):
    v = float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return v


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dissim", description="Dissimilarity projection of streamlines onto prototypes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--threads", type=int, default=None,
                        help="cap on worker threads for distance kernels")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic streamline file")
    gsub = gen.add_subparsers(dest="kind", required=True)
    g = gsub.add_parser("gaussian", help="2-D standard normal point cloud")
    g.add_argument("--n", type=int, default=50)
    g.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g.add_argument("--out", required=True)
    pl = gsub.add_parser("polylines", help="smooth 3-D random-walk polylines")
    defaults = PolylineCloudSpec()
    pl.add_argument("--n", type=int, default=defaults.n)
    pl.add_argument("--min-points", type=int, default=defaults.min_points)
    pl.add_argument("--max-points", type=int, default=defaults.max_points)
    pl.add_argument("--extent", type=_positive_float, default=defaults.extent)
    pl.add_argument("--step", type=_positive_float, default=defaults.step)
    pl.add_argument("--curvature", type=float, default=defaults.curvature)
    pl.add_argument("--jitter", type=float, default=defaults.jitter)
    pl.add_argument("--seed", type=int, default=DEFAULT_SEED)
    pl.add_argument("--out", required=True)

    def selection_args(p, multi=False):
        if multi:
            p.add_argument("--policy", type=_policy_list, default=list(Policy),
                           help="comma-separated policies (default: random,fft,sff)")
        else:
            p.add_argument("--policy", type=Policy, choices=list(Policy), required=True)
        p.add_argument("--c", type=_positive_float, default=DEFAULT_C,
                       help="SFF pool size factor")
        p.add_argument("--kernel", type=Kernel, choices=list(Kernel), default=Kernel.MAM)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    s = sub.add_parser("select", help="select prototypes from a streamline file")
    s.add_argument("--input", required=True)
    selection_args(s)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--start-zero", action="store_true",
                   help="force the first FFT/SFF prototype to index 0 of the candidate pool")
    s.add_argument("--out-indices", required=True)
    s.add_argument("--out-prototypes", default=None)

    e = sub.add_parser("embed", help="project a streamline file onto prototypes")
    e.add_argument("--input", required=True)
    e.add_argument("--prototypes", required=True,
                   help="prototype streamline file, or an index file with --indices")
    e.add_argument("--indices", action="store_true",
                   help="treat --prototypes as an index file into --input")
    e.add_argument("--kernel", type=Kernel, choices=list(Kernel), default=Kernel.MAM)
    e.add_argument("--out", default="-")

    ev = sub.add_parser("evaluate", help="correlation-vs-p sweep, results CSV")
    ev.add_argument("--input", required=True)
    selection_args(ev, multi=True)
    ev.add_argument("--p-list", type=_int_list, required=True)
    ev.add_argument("--repetitions", type=int, default=50)
    ev.add_argument("--pairs", default=None,
                    help="'all' or 'random:COUNT' (default: random:min(N(N-1)/2, 100000))")
    ev.add_argument("--pair-seed", type=int, default=DEFAULT_SEED)
    ev.add_argument("--no-times", action="store_true",
                    help="write wall_time_ms as 0 for byte-reproducible output")
    ev.add_argument("--out", default="-")

    b = sub.add_parser("bench", help="selection wall time over synthetic polyline datasets")
    selection_args(b, multi=True)
    b.add_argument("--p", type=int, default=50)
    b.add_argument("--sizes", type=_int_list, required=True)
    b.add_argument("--repeats", type=int, default=1,
                   help="timed runs per size; the minimum is reported")
    b.add_argument("--out", default="-")
    return parser


def _config(args):
    out = {}
    for key, value in sorted(vars(args).items()):
        if isinstance(value, list):
            value = [v.value if hasattr(v, "value") else v for v in value]
        elif hasattr(value, "value"):
            value = value.value
        out[key] = value
    return out


def _cmd_generate(args):
    if args.kind == "gaussian":
        ds = generate_gaussian(GaussianCloudSpec(args.n, args.seed))
    else:
        ds = generate_polylines(PolylineCloudSpec(
            n=args.n, min_points=args.min_points, max_points=args.max_points,
            extent=args.extent, step=args.step, curvature=args.curvature,
            jitter=args.jitter, seed=args.seed))
    write_streamlines(ds, args.out)


def _cmd_select(args):
    ds = read_streamlines(args.input)
    protos = select(ds, args.policy, args.p, args.kernel, args.seed, args.c,
                    start=0 if args.start_zero else None)
    print(f"candidate pool size: {protos.pool_size}", file=sys.stderr)
    write_indices(protos.indices, args.out_indices)
    if args.out_prototypes:
        write_streamlines(protos.streamlines, args.out_prototypes)


def _cmd_embed(args):
    ds = read_streamlines(args.input)
    if args.indices:
        protos = ds.subset(read_indices(args.prototypes))
    else:
        protos = read_streamlines(args.prototypes)
    embedded = project_all(ds, protos, args.kernel)
    with _output(args.out) as fh:
        write_matrix_csv(embedded.vectors, fh)


def _cmd_evaluate(args):
    ds = read_streamlines(args.input)
    if args.pairs is None:
        pairs = PairSampling.default(len(ds), args.pair_seed)
    else:
        pairs = PairSampling.parse(args.pairs, args.pair_seed)
    print(f"pairs: {pairs.describe()}", file=sys.stderr)
    reports = []
    for policy in args.policy:
        reports += run_experiment(ds, policy, args.p_list, args.repetitions, args.kernel,
                                  pairs, args.seed, args.c)
    for r in reports:
        print(f"{r.policy.value:>6} p={r.p:<4d} mean={r.mean:.4f} std={r.std:.4f}",
              file=sys.stderr)
    with _output(args.out) as fh:
        write_results_csv(reports, fh, include_times=not args.no_times)


def _cmd_bench(args):
    rows = []
    # Compile kernels before timing anything.
    warm = generate_polylines(PolylineCloudSpec(n=4, min_points=2, max_points=3))
    select(warm, Policy.FFT, 2, args.kernel, 0, args.c)
    for size in args.sizes:
        ds = generate_polylines(PolylineCloudSpec(n=size, seed=args.seed))
        for policy in args.policy:
            best = None
            for _ in range(max(1, args.repeats)):
                t0 = time.perf_counter()
                protos = select(ds, policy, args.p, args.kernel, args.seed, args.c)
                elapsed = time.perf_counter() - t0
                best = elapsed if best is None else min(best, elapsed)
            rows.append({"policy": policy.value, "p": args.p, "size": size,
                         "seed": args.seed, "pool_size": protos.pool_size,
                         "wall_time_ms": best * 1000.0})
            print(f"{policy.value:>6} size={size} {best * 1000.0:.1f} ms", file=sys.stderr)
    with _output(args.out) as fh:
        write_rows_csv(rows, BENCH_COLUMNS, fh)


COMMANDS = {"generate": _cmd_generate, "select": _cmd_select, "embed": _cmd_embed,
            "evaluate": _cmd_evaluate, "bench": _cmd_bench}


def main(argv=None):
    # numba probes TBB first and warns when the installed version is too old.
    warnings.filterwarnings("ignore", message="The TBB threading layer")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    print(json.dumps(_config(args), sort_keys=True), file=sys.stderr)
    if args.threads is not None:
        set_threads(args.threads)
    try:
        COMMANDS[args.command](args)
    except (ValueError, OSError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
