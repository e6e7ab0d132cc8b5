"""Command line front end: embed graphs, generate SBM graphs, compute
density, and benchmark the sparse pipeline against the edge-list one.

Exit codes: 0 success, 2 argument errors, 3 parse errors, 4 shape/label
errors, 1 internal consistency failure (pipeline mismatch in bench).
Diagnostics go to stderr; data goes to stdout or the ``--out`` files.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._kernels import warmup
from .embedding import EmbedOptions, encode, encode_reference
from .errors import NumericalDomainError, ParseError, StructuralError
from .graph_io import (
    ParseOptions,
    count_undirected_edges,
    edge_density,
    parse_edge_list,
    parse_labels,
    write_edge_list,
    write_embedding,
    write_labels,
)
from .sbm import SbmParams, generate_sbm

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_SHAPE = 4

PIPELINE_MISMATCH_TOL = 1e-12


@dataclass
class BenchResult:
    """Timings for one (dataset, pipeline, option combo) cell."""

    dataset: str
    pipeline: str
    options: EmbedOptions
    seconds: list[float]

    @property
    def repeats(self) -> int:
        return len(self.seconds)

    @property
    def mean_s(self) -> float:
        return sum(self.seconds) / len(self.seconds)

    @property
    def min_s(self) -> float:
        return min(self.seconds)


def _bool_flag(token: str) -> bool:
    t = token.strip().lower()
    if t in ("1", "true", "t", "yes", "y", "on"):
        return True
    if t in ("0", "false", "f", "no", "n", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {token!r}")


def _probs(token: str) -> list[float]:
    try:
        return [float(t) for t in token.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad probability list {token!r}") from None


def _read_edges(args):
    opts = ParseOptions(
        index_base=1 if getattr(args, "one_based", False) else 0,
        directed=getattr(args, "directed", False),
    )
    with open(args.edges, encoding="utf-8") as f:
        return parse_edge_list(f, opts, n_nodes=getattr(args, "nodes", None))


def _read_labels(args, n_nodes: int):
    opts = ParseOptions(index_base=1 if getattr(args, "one_based", False) else 0)
    with open(args.labels, encoding="utf-8") as f:
        labels = parse_labels(
            f, opts, k_classes=getattr(args, "classes", None), n_nodes=n_nodes
        )
    if len(labels) != n_nodes:
        raise StructuralError(
            f"label file has {len(labels)} entries for {n_nodes} nodes"
        )
    return labels


def cmd_embed(args) -> int:
    edges = _read_edges(args)
    labels = _read_labels(args, edges.n_nodes)
    opts = EmbedOptions(laplacian=args.lap, diagonal=args.diag, correlation=args.corr)
    t0 = time.perf_counter()
    adj = edges.to_csr()
    z = encode(adj, labels, opts)
    elapsed = time.perf_counter() - t0
    if args.out == "-":
        write_embedding(z, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            write_embedding(z, f)
    if edges.n_nodes >= 2:
        density = f"{edge_density(edges.n_nodes, count_undirected_edges(edges)):#.5g}"
    else:
        density = "n/a"
    print(
        f"[embed] nodes={edges.n_nodes} edges={edges.n_edges} "
        f"classes={labels.k_classes} nnz={adj.nnz} density={density} "
        f"elapsed={elapsed:.6f}s",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_sbm(args) -> int:
    try:
        params = SbmParams(
            n_nodes=args.nodes,
            class_probs=np.asarray(args.class_probs),
            within_prob=args.within,
            between_prob=args.between,
            seed=args.seed,
        )
    except StructuralError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    edges, labels = generate_sbm(params, exact_counts=args.exact_counts)
    with open(args.out_edges, "w", encoding="utf-8", newline="") as f:
        write_edge_list(edges, f)
    with open(args.out_labels, "w", encoding="utf-8", newline="") as f:
        write_labels(labels, f)
    counts = ",".join(str(c) for c in labels.class_counts())
    print(
        f"[sbm] nodes={args.nodes} edges={edges.n_edges} class_counts={counts}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_density(args) -> int:
    edges = _read_edges(args)
    n_edges = count_undirected_edges(edges)
    d = edge_density(edges.n_nodes, n_edges)
    print(f"nodes={edges.n_nodes} edges={n_edges} density={d:#.5g}")
    return EXIT_OK


def _bench_combos(args) -> list[EmbedOptions]:
    if args.grid:
        return EmbedOptions.all_combinations()
    if args.all_options:
        return [EmbedOptions(laplacian=True, diagonal=True, correlation=True)]
    return [EmbedOptions(laplacian=args.lap, diagonal=args.diag, correlation=args.corr)]


def _time_pipeline(pipeline, edges, labels, opts, repeats):
    seconds = []
    z = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        if pipeline == "sparse":
            z = encode(edges.to_csr(), labels, opts)
        else:
            z = encode_reference(edges, labels, opts)
        seconds.append(time.perf_counter() - t0)
    return seconds, z


def cmd_bench(args) -> int:
    if args.repeats < 1:
        print("error: --repeats must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    edges = _read_edges(args)
    labels = _read_labels(args, edges.n_nodes)
    dataset = Path(args.edges).stem
    pipelines = ["sparse", "reference"] if args.pipeline == "both" else [args.pipeline]
    combos = _bench_combos(args)
    warmup()  # JIT compilation must not land in the first timed repeat
    results: list[BenchResult] = []
    for opts in combos:
        outputs = {}
        for pipeline in pipelines:
            seconds, z = _time_pipeline(pipeline, edges, labels, opts, args.repeats)
            results.append(BenchResult(dataset, pipeline, opts, seconds))
            outputs[pipeline] = z
        if len(pipelines) == 2:
            delta = outputs["sparse"] - outputs["reference"]
            diff = float(np.max(np.abs(delta))) if delta.size else 0.0
            print(
                f"[bench] {dataset} lap={_tf(opts.laplacian)} diag={_tf(opts.diagonal)} "
                f"corr={_tf(opts.correlation)} max_abs_diff={diff:.3e}",
                file=sys.stderr,
            )
            if diff > PIPELINE_MISMATCH_TOL:
                print(
                    f"error: pipelines disagree by {diff:.3e} "
                    f"(tolerance {PIPELINE_MISMATCH_TOL:.0e})",
                    file=sys.stderr,
                )
                return EXIT_INTERNAL
    for res in results:
        print(
            f"[bench] {res.dataset} {res.pipeline} lap={_tf(res.options.laplacian)} "
            f"diag={_tf(res.options.diagonal)} corr={_tf(res.options.correlation)} "
            f"repeats={res.repeats} mean={res.mean_s:.6f}s min={res.min_s:.6f}s",
            file=sys.stderr,
        )
    if args.format == "csv":
        _emit_csv(results)
    else:
        _emit_table(results)
    return EXIT_OK


def _tf(flag: bool) -> str:
    return "true" if flag else "false"


def _emit_csv(results: list[BenchResult]) -> None:
    print("dataset,pipeline,lap,diag,corr,repeat,seconds")
    for res in results:
        for rep, sec in enumerate(res.seconds, start=1):
            print(
                f"{res.dataset},{res.pipeline},{_tf(res.options.laplacian)},"
                f"{_tf(res.options.diagonal)},{_tf(res.options.correlation)},"
                f"{rep},{sec!r}"
            )


def _emit_table(results: list[BenchResult]) -> None:
    header = ("dataset", "pipeline", "lap", "diag", "corr", "repeats", "mean_s", "min_s")
    rows = [
        (
            res.dataset,
            res.pipeline,
            _tf(res.options.laplacian),
            _tf(res.options.diagonal),
            _tf(res.options.correlation),
            str(res.repeats),
            f"{res.mean_s:.6f}",
            f"{res.min_s:.6f}",
        )
        for res in results
    ]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    for r in rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphee",
        description="Sparse one-hot graph encoder embedding toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    embed = sub.add_parser("embed", help="embed a labeled graph to CSV")
    embed.add_argument("--edges", required=True, help="edge-list file")
    embed.add_argument("--labels", required=True, help="label file")
    embed.add_argument("--classes", type=int, help="class count (default: inferred)")
    embed.add_argument("--lap", action="store_true", help="Laplacian normalization")
    embed.add_argument("--diag", action="store_true", help="diagonal augmentation")
    embed.add_argument("--corr", action="store_true", help="row correlation")
    embed.add_argument("--directed", action="store_true", help="do not symmetrize")
    embed.add_argument("--one-based", action="store_true", help="1-based node indices")
    embed.add_argument("--nodes", type=int, help="declared node count")
    embed.add_argument("--out", required=True, help="output CSV file, or - for stdout")
    embed.set_defaults(func=cmd_embed)

    sbm = sub.add_parser("sbm", help="generate a stochastic block model graph")
    sbm.add_argument("--nodes", type=int, required=True)
    sbm.add_argument(
        "--class-probs", type=_probs, required=True, help="e.g. 0.2,0.3,0.5"
    )
    sbm.add_argument("--within", type=float, required=True, help="within-class edge prob")
    sbm.add_argument("--between", type=float, required=True, help="between-class edge prob")
    sbm.add_argument("--seed", type=int, required=True)
    sbm.add_argument("--out-edges", required=True)
    sbm.add_argument("--out-labels", required=True)
    sbm.add_argument(
        "--exact-counts",
        action="store_true",
        help="deterministic class sizes instead of i.i.d. sampling",
    )
    sbm.set_defaults(func=cmd_sbm)

    density = sub.add_parser("density", help="edge density of a graph")
    density.add_argument("--edges", required=True)
    density.add_argument("--nodes", type=int, help="declared node count")
    density.add_argument("--one-based", action="store_true")
    density.set_defaults(func=cmd_density)

    bench = sub.add_parser("bench", help="time the embedding pipelines")
    bench.add_argument("--edges", required=True)
    bench.add_argument("--labels", required=True)
    bench.add_argument("--classes", type=int)
    bench.add_argument("--nodes", type=int)
    bench.add_argument("--one-based", action="store_true")
    bench.add_argument("--directed", action="store_true")
    bench.add_argument("--all-options", action="store_true", help="lap+diag+corr on")
    bench.add_argument("--lap", type=_bool_flag, default=False, metavar="B")
    bench.add_argument("--diag", type=_bool_flag, default=False, metavar="B")
    bench.add_argument("--corr", type=_bool_flag, default=False, metavar="B")
    bench.add_argument(
        "--grid", action="store_true", help="run all 8 option combinations"
    )
    bench.add_argument("--repeats", type=int, default=5)
    bench.add_argument(
        "--pipeline", choices=("sparse", "reference", "both"), default="sparse"
    )
    bench.add_argument("--format", choices=("csv", "table"), default="csv")
    bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (StructuralError, NumericalDomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
