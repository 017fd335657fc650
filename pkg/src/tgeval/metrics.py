"""Classification metrics over scored evaluation records.

Threshold-curve metrics (AU-ROC, AP, AU-PR) plus fixed-threshold metrics
(accuracy, precision, recall, F1 at 0.5). Tied scores are always handled by
grouping, never by input order: a memorization predictor emits only two
distinct score values, so tie handling dominates its numbers.

AU-ROC uses the rank formulation with half credit for ties, accumulated in
exact integer arithmetic before a single division; this makes the identity
"binary-scored predictor's AU-ROC equals its accuracy on a balanced set"
hold exactly, not just approximately. Sweep metrics use compensated
summation (``math.fsum``) so million-record sets stay stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence


class EvalRecord(NamedTuple):
    """One labeled, scored instance."""

    positive: bool
    score: float
    is_fallback: bool = False


class ThresholdMetrics(NamedTuple):
    accuracy: float
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class MetricReport:
    au_roc: float
    ap: float
    au_pr: float
    accuracy: float
    precision: float
    recall: float
    f1: float
    positives: int
    negatives: int

    def as_dict(self) -> dict:
        return {
            "au_roc": self.au_roc,
            "ap": self.ap,
            "au_pr": self.au_pr,
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "positives": self.positives,
            "negatives": self.negatives,
        }


def _validate(records: Sequence[EvalRecord]) -> None:
    if not records:
        raise ValueError("no evaluation records")
    for r in records:
        if not (math.isfinite(r.score) and 0.0 <= r.score <= 1.0):
            raise ValueError(f"score out of [0, 1]: {r.score!r}")


def _groups_desc(records: Sequence[EvalRecord]) -> list[tuple[float, int, int]]:
    """(score, n_pos, n_neg) per distinct score, descending."""
    counts: dict[float, list[int]] = {}
    for r in records:
        c = counts.get(r.score)
        if c is None:
            c = counts[r.score] = [0, 0]
        c[0 if r.positive else 1] += 1
    return [(s, c[0], c[1]) for s, c in sorted(counts.items(), reverse=True)]


def au_roc(records: Sequence[EvalRecord]) -> float:
    """Probability that a random positive outscores a random negative.

    Ties receive half credit; equals the trapezoidal area under the ROC
    curve. Requires at least one record of each class.
    """
    _validate(records)
    groups = _groups_desc(records)
    p = sum(g[1] for g in groups)
    n = sum(g[2] for g in groups)
    if p == 0 or n == 0:
        raise ValueError("AU-ROC needs at least one positive and one negative")
    wins = 0
    ties = 0
    neg_below = 0
    for _, gp, gn in reversed(groups):  # ascending score order
        wins += gp * neg_below
        ties += gp * gn
        neg_below += gn
    return (2 * wins + ties) / (2 * p * n)


def average_precision(records: Sequence[EvalRecord]) -> float:
    """Step-interpolated area under the precision-recall sweep.

    AP = sum over the descending-score sweep of (R_k - R_{k-1}) * P_k, with
    tied scores processed as one group at the group's cumulative counts.
    """
    _validate(records)
    p = sum(1 for r in records if r.positive)
    if p == 0:
        raise ValueError("average precision needs at least one positive")
    tp = 0
    fp = 0
    prev_recall = 0.0
    terms: list[float] = []
    for _, gp, gn in _groups_desc(records):
        tp += gp
        fp += gn
        recall = tp / p
        terms.append((recall - prev_recall) * (tp / (tp + fp)))
        prev_recall = recall
    return math.fsum(terms)


def au_pr(records: Sequence[EvalRecord]) -> float:
    """Trapezoidal area under the precision-recall curve.

    The curve starts at (recall 0, precision 1) and adds one point per
    distinct score group; distinct from the step rule of
    :func:`average_precision` (the two can order either way).
    """
    _validate(records)
    p = sum(1 for r in records if r.positive)
    if p == 0:
        raise ValueError("AU-PR needs at least one positive")
    tp = 0
    fp = 0
    prev_r, prev_p = 0.0, 1.0
    terms: list[float] = []
    for _, gp, gn in _groups_desc(records):
        tp += gp
        fp += gn
        recall = tp / p
        precision = tp / (tp + fp)
        terms.append((recall - prev_r) * (precision + prev_p) / 2.0)
        prev_r, prev_p = recall, precision
    return math.fsum(terms)


def threshold_metrics(
    records: Sequence[EvalRecord], threshold: float = 0.5
) -> ThresholdMetrics:
    """Confusion-matrix metrics with predicted-positive iff score >= threshold.

    Zero conventions: precision is 0 with no predicted positives, recall is 0
    with no actual positives, F1 is 0 when precision + recall is 0.
    """
    _validate(records)
    tp = fp = tn = fn = 0
    for r in records:
        predicted = r.score >= threshold
        if r.positive:
            tp += predicted
            fn += not predicted
        else:
            fp += predicted
            tn += not predicted
    total = tp + fp + tn + fn
    accuracy = (tp + tn) / total
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return ThresholdMetrics(accuracy, precision, recall, f1)


def compute_report(records: Sequence[EvalRecord]) -> MetricReport:
    """Full metric report (requires both classes present)."""
    thr = threshold_metrics(records)
    return MetricReport(
        au_roc=au_roc(records),
        ap=average_precision(records),
        au_pr=au_pr(records),
        accuracy=thr.accuracy,
        precision=thr.precision,
        recall=thr.recall,
        f1=thr.f1,
        positives=sum(1 for r in records if r.positive),
        negatives=sum(1 for r in records if not r.positive),
    )
