"""Command-line surface.

Subcommands: ``stats`` (dataset statistics and difficulty indices),
``negatives`` (evaluation-set export), ``edgebank`` (memorization-baseline
scoring), ``score`` (metric reports over externally produced scores), and
``plot`` (appearance / lifespan charts as SVG+CSV).

Reports are JSON with a stable key order so repeated runs diff cleanly;
every command is deterministic given its seed and inputs. Diagnostics go to
stderr and any failure exits nonzero.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .evaluation import (
    eval_tallies,
    generate_eval_rows,
    read_eval_csv,
    read_scores_csv,
    records_from_scores,
    run_edgebank,
    run_report,
    write_eval_csv,
)
from .ingest import ParseError, parse_file
from .metrics import compute_report
from .negsampler import SamplerConfig
from .plots import (
    render_tea_svg,
    render_tet_svg,
    tea_csv,
    tea_series,
    tet_csv,
    tet_rows,
)
from .stream import (
    DifficultyIndices,
    chronological_split,
    edge_sets,
    novelty_index,
    reoccurrence_index,
    surprise_index,
)

_STRATEGY_ALIASES = {
    "rnd": "random",
    "random": "random",
    "hist": "historical",
    "historical": "historical",
    "induc": "inductive",
    "inductive": "inductive",
}

_VARIANT_ALIASES = {
    "inf": "infinity",
    "infinity": "infinity",
    "tw": "time_window",
    "time_window": "time_window",
}


def _parse_ratios(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("ratios must be three comma-separated reals")
    try:
        r = tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric ratio in {text!r}") from None
    return r  # validated for sum/sign by chronological_split


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="dataset file path")
    p.add_argument(
        "--format",
        choices=("interaction", "edgelist"),
        default="interaction",
        help="input file layout",
    )
    direction = p.add_mutually_exclusive_group()
    direction.add_argument(
        "--directed", dest="directed", action="store_true", default=True
    )
    direction.add_argument("--undirected", dest="directed", action="store_false")
    p.add_argument(
        "--ratios",
        type=_parse_ratios,
        default=(0.70, 0.15, 0.15),
        help="train,val,test split ratios (default 0.7,0.15,0.15)",
    )
    p.add_argument(
        "--history",
        choices=("train", "train+val"),
        default="train",
        help="what counts as previously observed at test time",
    )
    p.add_argument("--name", default="", help="dataset label for reports")


def _add_sampler_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--strategy",
        choices=sorted(_STRATEGY_ALIASES),
        default="rnd",
        help="negative sampling strategy",
    )
    p.add_argument("--seed", type=int, default=0, help="run seed")
    p.add_argument("--batch", type=int, default=200, help="evaluation batch size")
    p.add_argument(
        "--collision",
        choices=("batch", "global"),
        default="batch",
        help="collision scope for random accept-reject draws",
    )


def _emit(report: dict, args: argparse.Namespace) -> None:
    if getattr(args, "json", False):
        text = json.dumps(report, separators=(",", ":")) + "\n"
    else:
        text = json.dumps(report, indent=2) + "\n"
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    sys.stdout.write(text)


def _load(args: argparse.Namespace):
    stream, _ = parse_file(
        args.input, args.format, directed=args.directed, name=args.name
    )
    split = chronological_split(stream, args.ratios)
    return stream, split


def _indices_for_split(stream, split, history) -> DifficultyIndices:
    """Split-dependent indices go null where a denominator set is empty."""
    sets = edge_sets(stream, split)
    try:
        reocc = reoccurrence_index(sets, history)
    except ValueError:
        reocc = None
    try:
        surp = surprise_index(sets, history)
    except ValueError:
        surp = None
    return DifficultyIndices(novelty_index(stream), reocc, surp)


def _best_effort_indices(stream, ratios, history):
    """Statistics must not die on tiny or degenerate streams: the split and
    the split-dependent indices go null where undefined."""
    try:
        split = chronological_split(stream, ratios)
    except ValueError:
        return None, DifficultyIndices(novelty_index(stream), None, None)
    return split, _indices_for_split(stream, split, history)


def _cmd_stats(args: argparse.Namespace) -> int:
    stream, _ = parse_file(
        args.input, args.format, directed=args.directed, name=args.name
    )
    split, indices = _best_effort_indices(stream, args.ratios, args.history)
    report = run_report(
        stream, split, __version__, history=args.history, indices=indices
    )
    _emit(report, args)
    return 0


def _cmd_negatives(args: argparse.Namespace) -> int:
    stream, split = _load(args)
    config = SamplerConfig(
        strategy=_STRATEGY_ALIASES[args.strategy],
        seed=args.seed,
        batch_size=args.batch,
    )
    rows, tallies = generate_eval_rows(
        stream, split, config, history=args.history, collision=args.collision
    )
    write_eval_csv(rows, args.out)
    indices = _indices_for_split(stream, split, args.history)
    report = run_report(
        stream,
        split,
        __version__,
        strategy=config.strategy,
        seed=config.seed,
        batch_size=config.batch_size,
        history=args.history,
        collision=args.collision,
        indices=indices,
        tallies=tallies,
    )
    text = json.dumps(report, indent=2) + "\n"
    sys.stdout.write(text)
    return 0


def _cmd_edgebank(args: argparse.Namespace) -> int:
    stream, split = _load(args)
    config = SamplerConfig(
        strategy=_STRATEGY_ALIASES[args.strategy],
        seed=args.seed,
        batch_size=args.batch,
    )
    variant = _VARIANT_ALIASES[args.variant]
    records, tallies = run_edgebank(
        stream, split, variant, config,
        history=args.history, collision=args.collision, window=args.window,
    )
    indices = _indices_for_split(stream, split, args.history)
    report = run_report(
        stream,
        split,
        __version__,
        strategy=config.strategy,
        seed=config.seed,
        batch_size=config.batch_size,
        history=args.history,
        collision=args.collision,
        variant=variant,
        indices=indices,
        metric_report=compute_report(records),
        tallies=tallies,
    )
    _emit(report, args)
    return 0


def _cmd_score(args: argparse.Namespace) -> int:
    stream, split = _load(args)
    rows = read_eval_csv(args.eval_set)
    scores = read_scores_csv(args.scores)
    records = records_from_scores(rows, scores)
    tallies = eval_tallies(rows)
    strategy = rows[1].strategy if len(rows) > 1 else None
    indices = _indices_for_split(stream, split, args.history)
    report = run_report(
        stream,
        split,
        __version__,
        strategy=strategy,
        seed=None,
        batch_size=None,
        history=args.history,
        indices=indices,
        metric_report=compute_report(records),
        tallies=tallies,
    )
    _emit(report, args)
    return 0


def _cmd_plot(args: argparse.Namespace) -> int:
    stream, split = _load(args)
    prefix = Path(args.out)
    title = stream.name
    if args.kind == "tea":
        series = tea_series(stream)
        svg = render_tea_svg(series, bins=args.bins, title=title)
        csv_text = tea_csv(series)  # raw series: binning is an SVG concern
    else:
        rows = tet_rows(stream, split, history=args.history)
        svg = render_tet_svg(rows, split.t_split, title=title)
        csv_text = tet_csv(rows)
    prefix.with_suffix(".svg").write_text(svg, encoding="utf-8")
    prefix.with_suffix(".csv").write_text(csv_text, encoding="utf-8")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tgeval",
        description="Evaluation toolkit for dynamic link prediction on "
        "timestamped edge streams",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="dataset statistics and difficulty indices")
    _add_input_args(p)
    p.add_argument("--out", help="also write the JSON report to this path")
    p.add_argument("--json", action="store_true", help="compact single-line JSON")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("negatives", help="export an evaluation set")
    _add_input_args(p)
    _add_sampler_args(p)
    p.add_argument("--out", required=True, help="evaluation-set CSV path")
    p.set_defaults(func=_cmd_negatives)

    p = sub.add_parser("edgebank", help="score the memorization baseline")
    _add_input_args(p)
    _add_sampler_args(p)
    p.add_argument(
        "--variant",
        choices=sorted(_VARIANT_ALIASES),
        default="inf",
        help="memory variant: unbounded or sliding time window",
    )
    p.add_argument(
        "--window",
        type=float,
        default=None,
        help="time-window size (default: duration of the test split)",
    )
    p.add_argument("--out", help="also write the JSON report to this path")
    p.add_argument("--json", action="store_true", help="compact single-line JSON")
    p.set_defaults(func=_cmd_edgebank)

    p = sub.add_parser("score", help="report metrics for external scores")
    _add_input_args(p)
    p.add_argument("--eval-set", required=True, help="evaluation-set CSV")
    p.add_argument("--scores", required=True, help="row_id,score CSV")
    p.add_argument("--out", help="also write the JSON report to this path")
    p.add_argument("--json", action="store_true", help="compact single-line JSON")
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("plot", help="emit appearance/lifespan charts (SVG+CSV)")
    _add_input_args(p)
    p.add_argument("--kind", choices=("tea", "tet"), required=True)
    p.add_argument("--out", required=True, help="output path prefix")
    p.add_argument("--bins", type=int, default=50, help="max appearance-chart bars")
    p.set_defaults(func=_cmd_plot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValueError, OSError) as exc:
        print(f"tgeval: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
