"""Streaming evaluation protocol over the test split.

Test edges are processed in chronological batches (200 by default). For each
batch the configured strategy produces one negative per positive; for
inductive sampling the pool of test-only pairs grows with the batches already
streamed. The same iteration drives both evaluation-set export and
memorization-baseline scoring, so their negatives are identical for a given
seed.

Evaluation-set files are CSV with header
``row_id,kind,source,destination,timestamp,strategy,is_fallback``; positive
and negative rows alternate per aligned index. Score files are CSV
``row_id,score`` joined strictly by row id.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Mapping, Sequence

from .edgebank import VARIANT_TIME_WINDOW, EdgeBankMemory
from .metrics import EvalRecord, MetricReport, compute_report
from .negsampler import (
    STRATEGY_HISTORICAL,
    STRATEGY_INDUCTIVE,
    STRATEGY_RANDOM,
    NegativeBatch,
    SamplerConfig,
    batch_rng,
    sample_historical,
    sample_inductive,
    sample_random,
)
from .stream import (
    ChronoSplit,
    DifficultyIndices,
    Edge,
    EdgeSets,
    EdgeStream,
    edge_sets,
)

HISTORY_MODES = ("train", "train+val")
COLLISION_MODES = ("batch", "global")


@dataclass(frozen=True)
class EvalRow:
    """One serialized instance of an evaluation set."""

    row_id: int
    kind: str  # "pos" | "neg"
    source: int
    destination: int
    timestamp: float
    strategy: str
    is_fallback: bool


def iter_eval_batches(
    stream: EdgeStream,
    split: ChronoSplit,
    config: SamplerConfig,
    history: str = "train",
    collision: str = "batch",
    sets: EdgeSets | None = None,
) -> Iterator[tuple[int, list[Edge], NegativeBatch]]:
    """Yield (batch_index, positives, negatives) over the test split.

    Batches are consecutive index slices of ``config.batch_size`` test edges.
    The collision scope for random draws is the batch's own positive pairs
    (``batch``) or every pair in the dataset (``global``).
    """
    if history not in HISTORY_MODES:
        raise ValueError(f"unknown history mode: {history!r}")
    if collision not in COLLISION_MODES:
        raise ValueError(f"unknown collision mode: {collision!r}")
    n = len(stream)
    if split.val_end >= n:
        raise ValueError("split has an empty test partition")
    if sets is None:
        sets = edge_sets(stream, split)
    hist_pairs = sets.history_pairs(history)
    global_exclusion = sets.all_pairs if collision == "global" else None
    undirected = not stream.directed

    test_seen: set = set()
    for batch_index, lo in enumerate(range(split.val_end, n, config.batch_size)):
        hi = min(lo + config.batch_size, n)
        positives = stream.light_edges(lo, hi)
        pos_pairs = {e.pair for e in positives}
        exclusion = global_exclusion if global_exclusion is not None else pos_pairs
        rng = batch_rng(config.seed, batch_index)
        if config.strategy == STRATEGY_RANDOM:
            neg = sample_random(
                positives, stream.node_count, exclusion, rng, undirected
            )
        elif config.strategy == STRATEGY_HISTORICAL:
            neg = sample_historical(
                positives, hist_pairs, rng, stream.node_count,
                exclusion=exclusion, undirected=undirected,
            )
        elif config.strategy == STRATEGY_INDUCTIVE:
            neg = sample_inductive(
                positives, hist_pairs, test_seen, rng, stream.node_count,
                exclusion=exclusion, undirected=undirected,
            )
        else:  # pragma: no cover - SamplerConfig already validates
            raise ValueError(f"unknown strategy: {config.strategy!r}")
        yield batch_index, positives, neg
        test_seen |= pos_pairs


def generate_eval_rows(
    stream: EdgeStream,
    split: ChronoSplit,
    config: SamplerConfig,
    history: str = "train",
    collision: str = "batch",
) -> tuple[list[EvalRow], dict[str, int]]:
    """Materialize the evaluation set: alternating pos/neg rows plus the
    per-source negative tallies ({strategy: n, random: n_fallback})."""
    rows: list[EvalRow] = []
    strategy_count = 0
    fallback_count = 0
    row_id = 0
    for _, positives, neg in iter_eval_batches(
        stream, split, config, history=history, collision=collision
    ):
        for e, (pair, t), fb in zip(positives, neg.negatives, neg.is_fallback):
            rows.append(
                EvalRow(row_id, "pos", e.pair.source, e.pair.destination,
                        e.timestamp, config.strategy, False)
            )
            rows.append(
                EvalRow(row_id + 1, "neg", pair.source, pair.destination,
                        t, config.strategy, fb)
            )
            row_id += 2
            if fb:
                fallback_count += 1
            else:
                strategy_count += 1
    tallies = negative_tallies(config.strategy, strategy_count, fallback_count)
    return rows, tallies


def negative_tallies(strategy: str, strategy_count: int, fallback_count: int) -> dict[str, int]:
    if strategy == STRATEGY_RANDOM:
        return {STRATEGY_RANDOM: strategy_count + fallback_count}
    return {strategy: strategy_count, STRATEGY_RANDOM: fallback_count}


def run_edgebank(
    stream: EdgeStream,
    split: ChronoSplit,
    variant: str,
    config: SamplerConfig,
    history: str = "train",
    collision: str = "batch",
    window: float | None = None,
) -> tuple[list[EvalRecord], dict[str, int]]:
    """Score the test split with a memorization baseline.

    The memory is seeded with the history partition (train, or train+val),
    then each test batch is scored before its positive edges enter the
    memory; negatives never enter. For the time-window variant the window
    defaults to the duration of the test split.

    Returns the scored records (alternating pos/neg, batch order) and the
    negative tallies.
    """
    n = len(stream)
    if split.val_end >= n:
        raise ValueError("split has an empty test partition")
    if variant == VARIANT_TIME_WINDOW and window is None:
        window = float(stream.ts[-1]) - split.t_split
        if window <= 0:
            raise ValueError(
                "test split has zero duration; pass an explicit window"
            )
    memory = EdgeBankMemory(variant, window if variant == VARIANT_TIME_WINDOW else None)

    hist_end = split.train_end if history == "train" else split.val_end
    if hist_end > 0:
        memory.update(
            zip(stream.pairs(0, hist_end), stream.ts[:hist_end].tolist())
        )

    records: list[EvalRecord] = []
    strategy_count = 0
    fallback_count = 0
    for _, positives, neg in iter_eval_batches(
        stream, split, config, history=history, collision=collision
    ):
        for e, (pair, t), fb in zip(positives, neg.negatives, neg.is_fallback):
            records.append(EvalRecord(True, memory.predict(e.pair, e.timestamp)))
            records.append(EvalRecord(False, memory.predict(pair, t), fb))
            if fb:
                fallback_count += 1
            else:
                strategy_count += 1
        memory.update((e.pair, e.timestamp) for e in positives)
    tallies = negative_tallies(config.strategy, strategy_count, fallback_count)
    return records, tallies


def write_eval_csv(rows: Sequence[EvalRow], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("row_id,kind,source,destination,timestamp,strategy,is_fallback\n")
        for r in rows:
            f.write(
                f"{r.row_id},{r.kind},{r.source},{r.destination},"
                f"{repr(r.timestamp)},{r.strategy},{int(r.is_fallback)}\n"
            )


def read_eval_csv(path: str | Path) -> list[EvalRow]:
    """Read and validate an evaluation-set file.

    Enforces the file invariants: strictly increasing row ids and alternating
    pos/neg rows.
    """
    rows: list[EvalRow] = []
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().strip()
        expected = "row_id,kind,source,destination,timestamp,strategy,is_fallback"
        if header != expected:
            raise ValueError(f"{path}: unexpected header {header!r}")
        for lineno, raw in enumerate(f, start=2):
            line = raw.strip()
            if not line:
                continue
            fields = line.split(",")
            if len(fields) != 7:
                raise ValueError(f"{path}:{lineno}: expected 7 columns")
            try:
                row = EvalRow(
                    row_id=int(fields[0]),
                    kind=fields[1],
                    source=int(fields[2]),
                    destination=int(fields[3]),
                    timestamp=float(fields[4]),
                    strategy=fields[5],
                    is_fallback=bool(int(fields[6])),
                )
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: malformed row ({exc})") from None
            if row.kind not in ("pos", "neg"):
                raise ValueError(f"{path}:{lineno}: bad kind {row.kind!r}")
            if rows and row.row_id <= rows[-1].row_id:
                raise ValueError(f"{path}:{lineno}: row ids must increase")
            expected_kind = "pos" if len(rows) % 2 == 0 else "neg"
            if row.kind != expected_kind:
                raise ValueError(
                    f"{path}:{lineno}: expected a {expected_kind} row"
                )
            rows.append(row)
    if len(rows) % 2:
        raise ValueError(f"{path}: dangling positive row without its negative")
    return rows


def read_scores_csv(path: str | Path) -> dict[int, float]:
    """Read a ``row_id,score`` file (header optional)."""
    scores: dict[int, float] = {}
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line:
                continue
            fields = line.split(",")
            if lineno == 1 and fields[0].strip().lower() == "row_id":
                continue
            if len(fields) != 2:
                raise ValueError(f"{path}:{lineno}: expected 2 columns")
            try:
                row_id = int(fields[0])
                score = float(fields[1])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: malformed row ({exc})") from None
            if row_id in scores:
                raise ValueError(f"{path}:{lineno}: duplicate row id {row_id}")
            scores[row_id] = score
    return scores


def records_from_scores(
    rows: Sequence[EvalRow], scores: Mapping[int, float]
) -> list[EvalRecord]:
    """Join eval rows with externally produced scores by row id."""
    if len(scores) != len(rows):
        raise ValueError(
            f"score count {len(scores)} does not match eval-set rows {len(rows)}"
        )
    known = {r.row_id for r in rows}
    for row_id in scores:
        if row_id not in known:
            raise ValueError(f"unknown row id in scores: {row_id}")
    records: list[EvalRecord] = []
    for r in rows:
        s = scores[r.row_id]
        if not (math.isfinite(s) and 0.0 <= s <= 1.0):
            raise ValueError(f"score out of [0, 1] for row {r.row_id}: {s!r}")
        records.append(EvalRecord(r.kind == "pos", s, r.is_fallback))
    return records


def eval_tallies(rows: Sequence[EvalRow]) -> dict[str, int]:
    """Recompute negative tallies from a materialized evaluation set."""
    strategy = rows[1].strategy if len(rows) > 1 else STRATEGY_RANDOM
    strategy_count = 0
    fallback_count = 0
    for r in rows:
        if r.kind != "neg":
            continue
        if r.is_fallback:
            fallback_count += 1
        else:
            strategy_count += 1
    return negative_tallies(strategy, strategy_count, fallback_count)


def run_report(
    stream: EdgeStream,
    split: ChronoSplit | None,
    version: str,
    strategy: str | None = None,
    seed: int | None = None,
    batch_size: int | None = None,
    history: str = "train",
    collision: str = "batch",
    variant: str | None = None,
    indices: DifficultyIndices | None = None,
    metric_report: MetricReport | None = None,
    tallies: Mapping[str, int] | None = None,
) -> dict:
    """Assemble the JSON-ready run report with a stable key order."""
    report: dict = {
        "dataset": stream.name,
        "tool_version": version,
        "directed": stream.directed,
        "nodes": stream.node_count,
        "total_edges": len(stream),
        "unique_edges": stream.unique_pairs(),
        "unique_steps": stream.unique_timestamps(),
        "duration": stream.duration,
        "split": None
        if split is None
        else {
            "ratios": list(split.ratios),
            "train_end": split.train_end,
            "val_end": split.val_end,
            "t_split": split.t_split,
            "sizes": list(split.sizes(len(stream))),
        },
        "history": history,
    }
    if indices is not None:
        report["indices"] = {
            "novelty": indices.novelty,
            "reoccurrence": indices.reoccurrence,
            "surprise": indices.surprise,
        }
    if strategy is not None:
        report["strategy"] = strategy
        report["seed"] = seed
        report["batch_size"] = batch_size
        report["collision"] = collision
    if variant is not None:
        report["variant"] = variant
    if tallies is not None:
        report["negative_counts"] = dict(tallies)
    if metric_report is not None:
        report["metrics"] = metric_report.as_dict()
    return report
