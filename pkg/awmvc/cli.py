"""
awmvc command line.

Subcommands:
    gen      write a seeded synthetic multi-view dataset
    run      fit one variant, cluster the consensus matrix, emit a JSON report
    eval     score a predicted label file against a ground-truth one
    bench    time fit() and k-means over a list of sample counts (CSV)
    ablate   compare full / fixed-dim / equal-alpha over several seeds
    convert  build a dataset directory from .npy / .csv matrices
    config   print the resolved settings

Exit codes: 0 ok, 2 usage, 3 validation, 4 numeric failure, 5 I/O.
"""
from __future__ import annotations

import argparse
import csv
import io
import logging
import statistics
import sys
import time
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from . import __version__
from .clustering import Assignment, KMeansConfig, kmeans
from .config.settings import VALID_FORMATS, settings
from .dataset import (
    NORMALIZE_MODES,
    MultiViewDataset,
    SyntheticSpec,
    from_arrays,
    generate_synthetic,
    load_dataset,
    normalize_views,
    read_labels_csv,
    save_dataset,
)
from .errors import (
    EXIT_IO,
    EXIT_NUMERIC,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VALIDATION,
    AwmvcError,
    DatasetIOError,
    DatasetValidationError,
)
from .metrics import METRIC_VARIANTS, acc, as_percentages, evaluate
from .reporting import REPORT_SCHEMA, RunReport, dumps, summarize_restarts, write_json, write_trace_csv
from .solver import AWMVCSolver, FitReport, IterationSnapshot, SolverConfig, Variant

logger = logging.getLogger(__name__)

VARIANTS = [v.value for v in Variant]


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _configure_logging(verbosity: int) -> None:
    if verbosity >= 2 or settings.DEBUG:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, settings.LOG_LEVEL, logging.WARNING)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _emit(text: str, output: Optional[str] = None) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")
    if output:
        try:
            Path(output).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
        except OSError as e:
            raise DatasetIOError(f"cannot write {output}: {e}") from e


def _load_for_fit(data: str, normalize: str) -> MultiViewDataset:
    return normalize_views(load_dataset(data), normalize)


def _resolve_k(clusters: Optional[int], ds: MultiViewDataset) -> int:
    if clusters is not None:
        return clusters
    if ds.k_true is None:
        raise DatasetValidationError("--clusters is required when the dataset has no labels")
    return ds.k_true


def _cluster_consensus(fit_report: FitReport, km_cfg: KMeansConfig) -> Assignment:
    return kmeans(fit_report.M, km_cfg)


# =============================================================================
# gen
# =============================================================================

def cmd_gen(args: argparse.Namespace) -> int:
    spec = SyntheticSpec(
        n=args.n,
        V=args.views,
        k_true=args.clusters,
        latent_dim=args.latent_dim,
        view_dims=args.view_dims,
        noise_sigma=args.noise,
        center_spread=args.spread,
        seed=args.seed,
    )
    ds = generate_synthetic(spec)
    out = save_dataset(ds, args.out, fmt=args.format)
    logger.info(f"[CLI] wrote {ds.name} to {out}")
    return EXIT_OK


# =============================================================================
# run
# =============================================================================

def cmd_run(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    ds = _load_for_fit(args.data, args.normalize)
    k = _resolve_k(args.clusters, ds)

    solver_cfg = SolverConfig(
        k=k,
        m=args.m,
        dims=args.dims,
        max_iter=args.max_iter,
        tol=args.tol,
        seed=args.seed,
        variant=Variant(args.variant),
        alpha_rule=args.alpha_rule,
    )
    km_cfg = KMeansConfig(
        k=k,
        restarts=args.kmeans_restarts,
        max_lloyd_iters=settings.MAX_LLOYD_ITERS,
        seed=args.seed,
    )

    evolution: List[Optional[float]] = []
    evolution_seconds = 0.0

    def track(snapshot: IterationSnapshot) -> None:
        nonlocal evolution_seconds
        t0 = time.perf_counter()
        if ds.labels is None:
            evolution.append(None)
        else:
            evolution.append(acc(kmeans(snapshot.M, km_cfg).labels, ds.labels))
        evolution_seconds += time.perf_counter() - t0

    solver = AWMVCSolver(solver_cfg)
    t0 = time.perf_counter()
    _, fit_report = solver.fit(ds, on_iteration=track if args.trace_evolution else None)
    fit_seconds = time.perf_counter() - t0 - evolution_seconds

    t0 = time.perf_counter()
    assignment = _cluster_consensus(fit_report, km_cfg)
    kmeans_seconds = time.perf_counter() - t0

    metrics = None
    restart_metrics = None
    if ds.labels is not None:
        metrics = evaluate(assignment.labels, ds.labels)
        restart_metrics = summarize_restarts([evaluate(labels, ds.labels) for labels in assignment.restart_labels])

    report = RunReport(
        config={
            "solver": solver_cfg.model_dump(mode="json"),
            "kmeans": km_cfg.model_dump(mode="json"),
            "normalize": args.normalize,
            "trace_evolution": bool(args.trace_evolution),
        },
        dataset=ds.summary(),
        fit=fit_report.to_dict(),
        kmeans=assignment.to_dict(),
        seed=args.seed,
        metrics=metrics,
        restart_metrics=restart_metrics,
        metric_variants=dict(METRIC_VARIANTS),
        timings={
            "fit_seconds": fit_seconds,
            "kmeans_seconds": kmeans_seconds,
            "evolution_seconds": evolution_seconds,
            "total_seconds": time.perf_counter() - started,
            "per_step_seconds": fit_report.per_step_seconds,
            "per_step_stats": fit_report.per_step_stats,
        },
    ).to_dict()

    if args.trace:
        write_trace_csv(
            args.trace,
            fit_report.objective_trace,
            fit_report.alpha_history,
            fit_report.beta_history,
            evolution if args.trace_evolution else None,
        )
    _emit(dumps(report))
    if args.output:
        write_json(args.output, report)
    return EXIT_OK


# =============================================================================
# eval
# =============================================================================

def cmd_eval(args: argparse.Namespace) -> int:
    pred = read_labels_csv(args.pred)
    truth = read_labels_csv(args.truth)
    payload = {
        **as_percentages(evaluate(pred, truth)),
        "metric_variants": dict(METRIC_VARIANTS),
    }
    _emit(dumps(payload), args.output)
    return EXIT_OK


# =============================================================================
# bench
# =============================================================================

def cmd_bench(args: argparse.Namespace) -> int:
    """Rows follow the order of --n; each timing is the median over --repeats runs."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["n", "fit_seconds", "kmeans_seconds"])
    for n in args.n:
        ds = generate_synthetic(SyntheticSpec(
            n=n,
            V=args.views,
            k_true=args.clusters,
            latent_dim=args.latent_dim,
            seed=args.seed,
        ))
        solver_cfg = SolverConfig(
            k=args.clusters,
            m=args.m,
            dims=args.dims,
            max_iter=args.max_iter,
            tol=args.tol,
            seed=args.seed,
        )
        km_cfg = KMeansConfig(k=args.clusters, restarts=args.kmeans_restarts, seed=args.seed)

        fit_times, kmeans_times = [], []
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            _, fit_report = AWMVCSolver(solver_cfg).fit(ds)
            fit_times.append(time.perf_counter() - t0)
            t0 = time.perf_counter()
            _cluster_consensus(fit_report, km_cfg)
            kmeans_times.append(time.perf_counter() - t0)

        row = [n, repr(statistics.median(fit_times)), repr(statistics.median(kmeans_times))]
        writer.writerow(row)
        logger.info(f"[CLI] bench n={n}: fit={row[1]}s kmeans={row[2]}s ({fit_report.iterations} iterations)")

    _emit(buffer.getvalue(), args.output)
    return EXIT_OK


# =============================================================================
# ablate
# =============================================================================

def _mean_std(values: Sequence[float]) -> Dict[str, float]:
    arr = np.asarray(values, dtype=np.float64)
    return {"mean": float(arr.mean()), "std": float(arr.std())}


def cmd_ablate(args: argparse.Namespace) -> int:
    ds = _load_for_fit(args.data, args.normalize)
    if ds.labels is None:
        raise DatasetValidationError("ablate needs a dataset with ground-truth labels")
    k = _resolve_k(args.clusters, ds)

    variants: Dict[str, dict] = {}
    for variant in Variant:
        runs = []
        for seed in args.seeds:
            solver_cfg = SolverConfig(
                k=k,
                m=args.m,
                max_iter=args.max_iter,
                tol=args.tol,
                seed=seed,
                variant=variant,
                alpha_rule=args.alpha_rule,
            )
            km_cfg = KMeansConfig(
                k=k,
                restarts=args.kmeans_restarts,
                max_lloyd_iters=settings.MAX_LLOYD_ITERS,
                seed=seed,
            )
            _, fit_report = AWMVCSolver(solver_cfg).fit(ds)
            scores = evaluate(_cluster_consensus(fit_report, km_cfg).labels, ds.labels)
            runs.append({"seed": seed, "iterations": fit_report.iterations, **scores})
            logger.info(f"[CLI] ablate {variant.value} seed={seed}: acc={scores['acc']:.4f}")

        variants[variant.value] = {
            "dims": list(SolverConfig(k=k, m=args.m, variant=variant).dims),
            "summary": {name: _mean_std([run[name] for run in runs]) for name in ("acc", "nmi", "purity", "fscore")},
            "runs": runs,
        }

    payload = {
        "schema": REPORT_SCHEMA,
        "tool_version": __version__,
        "dataset": ds.summary(),
        "seeds": list(args.seeds),
        "alpha_rule": args.alpha_rule,
        "metric_variants": dict(METRIC_VARIANTS),
        "variants": variants,
    }
    _emit(dumps(payload), args.output)
    return EXIT_OK


# =============================================================================
# convert
# =============================================================================

def _read_matrix(path: str) -> np.ndarray:
    suffix = Path(path).suffix.lower()
    try:
        if suffix == ".npy":
            return np.load(path, allow_pickle=False)
        if suffix == ".csv":
            return np.loadtxt(path, delimiter=",", ndmin=2)
    except OSError as e:
        raise DatasetIOError(f"cannot read {path}: {e}") from e
    except ValueError as e:
        raise DatasetValidationError(f"cannot parse {path}: {e}") from e
    raise DatasetValidationError(f"unsupported matrix file {path!r}; expected .npy or .csv")


def cmd_convert(args: argparse.Namespace) -> int:
    matrices = [_read_matrix(path) for path in args.views]
    labels = None
    if args.labels:
        if Path(args.labels).suffix.lower() == ".npy":
            labels = np.asarray(_read_matrix(args.labels)).ravel()
        else:
            labels = read_labels_csv(args.labels)
    ds = from_arrays(
        matrices,
        labels=labels,
        name=args.name or Path(args.out).name,
        view_names=[Path(path).stem for path in args.views],
        samples_as_rows=args.samples_as_rows,
    )
    save_dataset(ds, args.out, fmt=args.format)
    return EXIT_OK


# =============================================================================
# config
# =============================================================================

def cmd_config(args: argparse.Namespace) -> int:
    _emit(dumps(settings.to_dict()))
    problems = settings.validate()
    for problem in problems:
        print(f"awmvc: config: {problem}", file=sys.stderr)
    return EXIT_VALIDATION if problems else EXIT_OK


# =============================================================================
# parser
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="awmvc",
        description="Auto-weighted multi-view clustering with multiple orthogonal embedding dimensions",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  awmvc gen --n 1000 --views 3 --clusters 5 --seed 7 --out d/
  awmvc run --data d/ --clusters 5 --output report.json --trace trace.csv
  awmvc eval --pred pred.csv --truth labels.csv
  awmvc bench --n 5000 10000 20000 --repeats 5
        """,
    )
    parser.add_argument("--version", action="version", version=f"awmvc {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG (stderr)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="Write a synthetic dataset")
    p.add_argument("--n", type=int, required=True, help="Number of samples")
    p.add_argument("--views", type=int, default=3, help="Number of views")
    p.add_argument("--clusters", type=int, required=True, help="Number of clusters")
    p.add_argument("--latent-dim", type=int, default=10)
    p.add_argument("--view-dims", type=_int_list, default=None, help="Comma-separated feature counts per view")
    p.add_argument("--noise", type=float, default=0.1, help="Noise standard deviation")
    p.add_argument("--spread", type=float, default=5.0, help="Cluster-center scale")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=VALID_FORMATS, default=settings.DEFAULT_FORMAT)
    p.add_argument("--out", required=True, help="Output directory")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="Fit, cluster and report")
    p.add_argument("--data", required=True, help="Dataset directory")
    p.add_argument("--clusters", type=int, default=None, help="Number of clusters (default: from labels)")
    p.add_argument("--m", type=int, default=settings.EMBEDDINGS, help="Number of embeddings")
    p.add_argument("--dims", type=_int_list, default=None, help="Comma-separated embedding dimensions")
    p.add_argument("--max-iter", type=int, default=settings.MAX_ITER)
    p.add_argument("--tol", type=float, default=settings.TOL)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variant", choices=VARIANTS, default=Variant.FULL.value)
    p.add_argument("--alpha-rule", choices=("paper", "kkt"), default=settings.ALPHA_RULE)
    p.add_argument("--kmeans-restarts", type=int, default=settings.KMEANS_RESTARTS)
    p.add_argument("--trace-evolution", action="store_true", help="Re-cluster M after every iteration (acc_of_M)")
    p.add_argument("--normalize", choices=NORMALIZE_MODES, default="none")
    p.add_argument("--output", default=None, help="Also write the JSON report here")
    p.add_argument("--trace", default=None, help="Per-iteration CSV trace path")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("eval", help="Score predicted labels against ground truth")
    p.add_argument("--pred", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", help="Time fit() and k-means over sample counts")
    p.add_argument("--n", type=int, nargs="+", required=True, help="Sample counts, in output order")
    p.add_argument("--views", type=int, default=3)
    p.add_argument("--clusters", type=int, default=5)
    p.add_argument("--latent-dim", type=int, default=10)
    p.add_argument("--m", type=int, default=settings.EMBEDDINGS)
    p.add_argument("--dims", type=_int_list, default=None)
    p.add_argument("--max-iter", type=int, default=10)
    p.add_argument("--tol", type=float, default=settings.TOL)
    p.add_argument("--kmeans-restarts", type=int, default=settings.KMEANS_RESTARTS)
    p.add_argument("--repeats", type=_positive_int, default=1, help="Median over this many runs per n")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None, help="Also write the CSV here")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("ablate", help="Compare full, fixed-dim and equal-alpha variants")
    p.add_argument("--data", required=True)
    p.add_argument("--clusters", type=int, default=None)
    p.add_argument("--m", type=int, default=settings.EMBEDDINGS)
    p.add_argument("--seeds", type=_int_list, default=[0, 1, 2, 3, 4], help="Comma-separated seeds")
    p.add_argument("--max-iter", type=int, default=settings.MAX_ITER)
    p.add_argument("--tol", type=float, default=settings.TOL)
    p.add_argument("--alpha-rule", choices=("paper", "kkt"), default=settings.ALPHA_RULE)
    p.add_argument("--kmeans-restarts", type=int, default=settings.KMEANS_RESTARTS)
    p.add_argument("--normalize", choices=NORMALIZE_MODES, default="none")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_ablate)

    p = sub.add_parser("convert", help="Build a dataset directory from matrices")
    p.add_argument("--views", nargs="+", required=True, help=".npy or .csv matrices, one per view")
    p.add_argument("--labels", default=None, help="Labels (.csv one per line, or .npy)")
    p.add_argument("--samples-as-rows", action="store_true", help="Inputs are n x d_v instead of d_v x n")
    p.add_argument("--name", default=None)
    p.add_argument("--format", choices=VALID_FORMATS, default=settings.DEFAULT_FORMAT)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("config", help="Print resolved settings")
    p.set_defaults(func=cmd_config)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 for --help / --version
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE

    _configure_logging(args.verbose)
    try:
        return args.func(args)
    except AwmvcError as e:
        logger.debug("[CLI] failure", exc_info=True)
        print(f"awmvc: error: {e}", file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        print(f"awmvc: invalid configuration: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except MemoryError:
        logger.error("[CLI] out of memory")
        print("awmvc: error: out of memory", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as e:
        print(f"awmvc: error: {e}", file=sys.stderr)
        return EXIT_IO
    except ValueError as e:
        print(f"awmvc: error: {e}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
