"""Command-line front end.

Subcommands:
  evaluate  score a predicted clustering file against a truth file
  check     run both engines and compare their numbers (files or random trials)
  gen       write a seeded synthetic truth/predicted file pair
  bench     time the engines on synthetic workloads of given sizes

Exit codes: 0 success, 2 parse error, 3 validation/config error,
4 internal invariant breach, 5 engine divergence (check), 6 pair budget
exceeded.
"""

from __future__ import annotations

import argparse
import random
import statistics
import sys
import time

from . import __version__, oracle, single_pass
from .errors import (
    InfeasibleConfig,
    PairBudgetExceeded,
    ParseError,
    UnindexedInstance,
    ValidationError,
)
from .io_formats import (
    FORMAT_AUTO,
    FORMAT_CLUSTER_LINES,
    FORMAT_MEMBERSHIP_PAIRS,
    SCHEMA_VERSION,
    TABLE_LABELS,
    build_report_document,
    parse_clustering_file,
    render_report_document,
    write_clustering,
    write_report,
)
from .model import EvalPair, FullReport, validate
from .synth import SynthConfig, generate

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_INTERNAL = 4
EXIT_DIVERGENCE = 5
EXIT_PAIR_BUDGET = 6

CHECK_TOLERANCE = 1e-12

MEASURES = ("cluster_f", "k_metric", "b_cubed", "se_le", "pairwise")

_FILE_FORMATS = {"auto": FORMAT_AUTO, "clusters": FORMAT_CLUSTER_LINES, "pairs": FORMAT_MEMBERSHIP_PAIRS}


def _load_pair(args) -> EvalPair:
    file_format = _FILE_FORMATS[args.format]
    truth = parse_clustering_file(args.truth, format=file_format, role="truth")
    predicted = parse_clustering_file(args.pred, format=file_format, role="predicted")
    return validate(truth, predicted, args.coverage)


def _full_report(pair: EvalPair, engine: str, pair_budget: int) -> FullReport:
    if engine == "oracle":
        return oracle.evaluate_all(pair, pair_budget=pair_budget)
    return single_pass.evaluate_all(pair)


def _single_measure(pair: EvalPair, engine: str, measure: str, pair_budget: int):
    module = oracle if engine == "oracle" else single_pass
    if measure == "pairwise":
        if engine == "oracle":
            return module.pairwise_f(pair, pair_budget=pair_budget)
        return module.pairwise_f(pair)
    if measure == "se_le":
        return module.split_lump(pair)
    return getattr(module, measure)(pair)


def cmd_evaluate(args) -> int:
    pair = _load_pair(args)
    start = time.perf_counter()
    if args.measure == "all":
        report = _full_report(pair, args.engine, args.pair_budget)
        elapsed = time.perf_counter() - start
        sys.stdout.write(write_report(report, style=args.output, engine=args.engine, timing_seconds=elapsed))
        return EXIT_OK

    result = _single_measure(pair, args.engine, args.measure, args.pair_budget)
    elapsed = time.perf_counter() - start
    if args.measure == "se_le":
        triple = result.converted
        extra = {"se": float(result.se), "le": float(result.le)}
    else:
        triple = result
        extra = {}
    if args.output == "table":
        sys.stdout.write(f"{'Measure':<12}{'Recall':>9}{'Precision':>11}{'F':>9}\n")
        sys.stdout.write(
            f"{TABLE_LABELS[args.measure]:<12}{triple.recall:>9.4f}{triple.precision:>11.4f}{triple.combined:>9.4f}\n"
        )
        for key, value in extra.items():
            sys.stdout.write(f"{key.upper()} = {value:.4f}\n")
    else:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "engine": args.engine,
            "package_version": __version__,
            "measures": {
                args.measure: {
                    **extra,
                    "recall": float(triple.recall),
                    "precision": float(triple.precision),
                    "combined": float(triple.combined),
                }
            },
            "stats": {
                "n_truth_clusters": len(pair.truth_dense),
                "n_predicted_clusters": len(pair.predicted_dense),
                "n_instances": pair.n_instances,
            },
            "flags": list(pair.flags),
            "timing": {"seconds": elapsed},
        }
        sys.stdout.write(render_report_document(doc))
    return EXIT_OK


def _report_numbers(report: FullReport) -> dict[str, float]:
    out = {}
    for name in MEASURES:
        triple = report.se_le.converted if name == "se_le" else getattr(report, name)
        out[f"{name}.recall"] = triple.recall
        out[f"{name}.precision"] = triple.precision
        out[f"{name}.combined"] = triple.combined
    out["se_le.se"] = report.se_le.se
    out["se_le.le"] = report.se_le.le
    return out


def _compare_reports(fast: FullReport, slow: FullReport) -> list[str]:
    a = _report_numbers(fast)
    b = _report_numbers(slow)
    return [
        f"{key}: single_pass={a[key]!r} oracle={b[key]!r}"
        for key in a
        if abs(a[key] - b[key]) > CHECK_TOLERANCE
    ]


def _check_one(pair: EvalPair, pair_budget: int, label: str) -> tuple[int, list[str]]:
    fast = single_pass.evaluate_all(pair)
    slow = oracle.evaluate_all(pair, pair_budget=pair_budget)
    divergent = _compare_reports(fast, slow)
    if divergent:
        sys.stderr.write(f"divergence on {label}:\n")
        for line in divergent:
            sys.stderr.write(f"  {line}\n")
        sys.stdout.write(write_report(fast, style="machine", engine="single_pass"))
        sys.stdout.write(write_report(slow, style="machine", engine="oracle"))
        return EXIT_DIVERGENCE, divergent
    return EXIT_OK, []


def cmd_check(args) -> int:
    if args.trials:
        rng = random.Random(args.seed)
        for trial in range(args.trials):
            n = rng.randint(1, args.max_n)
            config = SynthConfig(
                n_instances=n,
                n_truth_clusters=rng.randint(1, n),
                size_skew=rng.uniform(0.0, 2.0),
                split_rate=rng.random(),
                merge_rate=rng.random(),
                seed=rng.getrandbits(63),
            )
            status, _ = _check_one(generate(config), args.pair_budget, f"trial {trial} config {config}")
            if status != EXIT_OK:
                return status
        sys.stdout.write(f"check: {args.trials} randomized trials agreed within {CHECK_TOLERANCE}\n")
        return EXIT_OK

    if not (args.truth and args.pred):
        raise ValidationError("check needs --truth and --pred, or --trials for randomized mode")
    pair = _load_pair(args)
    status, _ = _check_one(pair, args.pair_budget, f"{args.truth} vs {args.pred}")
    if status == EXIT_OK:
        sys.stdout.write(f"check: engines agree within {CHECK_TOLERANCE}\n")
    return status


def cmd_gen(args) -> int:
    config = SynthConfig(
        n_instances=args.n,
        n_truth_clusters=args.clusters,
        size_skew=args.skew,
        split_rate=args.split,
        merge_rate=args.merge,
        seed=args.seed,
    )
    pair = generate(config)
    file_format = FORMAT_MEMBERSHIP_PAIRS if args.format == "pairs" else FORMAT_CLUSTER_LINES
    with open(args.out_truth, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(write_clustering(pair.truth, format=file_format))
    with open(args.out_pred, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(write_clustering(pair.predicted, format=file_format))
    sys.stderr.write(
        f"gen: wrote {pair.n_instances} instances, {len(pair.truth.clusters)} truth / "
        f"{len(pair.predicted.clusters)} predicted clusters\n"
    )
    return EXIT_OK


def _time_call(fn, repeats: int) -> tuple[float, float, float]:
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    mean = statistics.fmean(times)
    std = statistics.stdev(times) if len(times) > 1 else 0.0
    return min(times), mean, std


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    engines = ("single_pass", "oracle") if args.engine == "both" else (args.engine,)
    rows = []
    for n in sizes:
        config = SynthConfig(
            n_instances=n,
            n_truth_clusters=max(1, round(n / args.cluster_ratio)),
            size_skew=args.skew,
            split_rate=args.split,
            merge_rate=args.merge,
            seed=args.seed,
        )
        pair = generate(config)  # generation and parsing stay outside the timers
        for engine in engines:
            if engine == "oracle":
                demand = sum(
                    len(c) * (len(c) - 1) // 2
                    for side in (pair.truth_dense, pair.predicted_dense)
                    for c in side
                )
                if demand > args.pair_budget:
                    sys.stderr.write(
                        f"bench: N={n} needs {demand} enumerated pairs, over budget {args.pair_budget}\n"
                    )
                    return EXIT_PAIR_BUDGET
                calls = {
                    "cluster_f": lambda p=pair: oracle.cluster_f(p),
                    "k_metric": lambda p=pair: oracle.k_metric(p),
                    "b_cubed": lambda p=pair: oracle.b_cubed(p),
                    "se_le": lambda p=pair: oracle.split_lump(p),
                    "pairwise": lambda p=pair: oracle.pairwise_f(p, pair_budget=args.pair_budget),
                    "all_in_one": lambda p=pair: oracle.evaluate_all(p, pair_budget=args.pair_budget),
                }
            else:
                calls = {
                    "cluster_f": lambda p=pair: single_pass.cluster_f(p),
                    "k_metric": lambda p=pair: single_pass.k_metric(p),
                    "b_cubed": lambda p=pair: single_pass.b_cubed(p),
                    "se_le": lambda p=pair: single_pass.split_lump(p),
                    "pairwise": lambda p=pair: single_pass.pairwise_f(p),
                    "all_in_one": lambda p=pair: single_pass.evaluate_all(p),
                }
            for name, fn in calls.items():
                best, mean, std = _time_call(fn, args.repeats)
                rows.append((n, engine, name, best, mean, std))

    header = f"{'N':>9}  {'engine':<12}{'measure':<12}{'best_s':>12}{'mean_s':>12}{'std_s':>12}"
    sys.stdout.write(header + "\n")
    for n, engine, name, best, mean, std in rows:
        sys.stdout.write(f"{n:>9}  {engine:<12}{name:<12}{best:>12.6f}{mean:>12.6f}{std:>12.6f}\n")
    return EXIT_OK


def _add_input_options(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument("--truth", required=required, help="truth clustering file")
    parser.add_argument("--pred", required=required, help="predicted clustering file")
    parser.add_argument("--coverage", choices=("strict", "lenient"), default="strict")
    parser.add_argument("--format", choices=tuple(_FILE_FORMATS), default="auto", help="input file format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clustereval",
        description="Score a predicted clustering against a truth clustering with five measures.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("evaluate", help="evaluate a predicted clustering against truth")
    _add_input_options(p_eval, required=True)
    p_eval.add_argument("--measure", choices=("all",) + MEASURES, default="all")
    p_eval.add_argument("--engine", choices=("single_pass", "oracle"), default="single_pass")
    p_eval.add_argument("--output", choices=("machine", "table"), default="machine")
    p_eval.add_argument("--pair-budget", type=int, default=oracle.DEFAULT_PAIR_BUDGET)
    p_eval.set_defaults(func=cmd_evaluate)

    p_check = sub.add_parser("check", help="compare single_pass against the brute-force oracle")
    _add_input_options(p_check, required=False)
    p_check.add_argument("--trials", type=int, default=0, help="randomized trials instead of files")
    p_check.add_argument("--max-n", type=int, default=200, help="max instances per randomized trial")
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--pair-budget", type=int, default=oracle.DEFAULT_PAIR_BUDGET)
    p_check.set_defaults(func=cmd_check)

    p_gen = sub.add_parser("gen", help="generate a synthetic truth/predicted pair")
    p_gen.add_argument("--n", type=int, required=True, help="number of instances")
    p_gen.add_argument("--clusters", type=int, required=True, help="number of truth clusters")
    p_gen.add_argument("--skew", type=float, default=0.0, help="cluster size skew (0 = uniform)")
    p_gen.add_argument("--split", type=float, default=0.0, help="per-cluster split probability")
    p_gen.add_argument("--merge", type=float, default=0.0, help="per-cluster merge probability")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out-truth", required=True)
    p_gen.add_argument("--out-pred", required=True)
    p_gen.add_argument("--format", choices=("clusters", "pairs"), default="clusters")
    p_gen.set_defaults(func=cmd_gen)

    p_bench = sub.add_parser("bench", help="time the engines on synthetic workloads")
    p_bench.add_argument("--sizes", required=True, help="comma-separated instance counts")
    p_bench.add_argument("--engine", choices=("single_pass", "oracle", "both"), default="single_pass")
    p_bench.add_argument("--repeats", type=int, default=10, help="trials per measurement; best is reported")
    p_bench.add_argument("--cluster-ratio", type=float, default=78.0, help="instances per truth cluster")
    p_bench.add_argument("--skew", type=float, default=1.0)
    p_bench.add_argument("--split", type=float, default=0.2)
    p_bench.add_argument("--merge", type=float, default=0.2)
    p_bench.add_argument("--seed", type=int, default=20240501)
    p_bench.add_argument("--pair-budget", type=int, default=oracle.DEFAULT_PAIR_BUDGET)
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except (ValidationError, InfeasibleConfig) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION
    except PairBudgetExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PAIR_BUDGET
    except UnindexedInstance as exc:
        sys.stderr.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL


def console_entry() -> None:
    raise SystemExit(main())
