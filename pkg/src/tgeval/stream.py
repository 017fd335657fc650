"""Core data model for timestamped edge streams.

An edge stream is a chronologically sorted sequence of (source, destination,
timestamp) events, optionally weighted and attributed. This module provides
the stream container, chronological train/val/test splitting, the per-split
edge-set algebra (train-only / transductive / inductive pairs), and the three
difficulty indices (novelty, reoccurrence, surprise) that summarize how much
of a stream a pure memorization predictor could get right.

Storage is columnar (numpy arrays) so that million-edge streams stay cheap;
`Edge` / `NodePair` objects are materialized on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np


class NodePair(NamedTuple):
    """Identity of an edge: the (source, destination) pair, ignoring time."""

    source: int
    destination: int

    def canonical(self) -> "NodePair":
        """Orientation-free form with source <= destination."""
        if self.source <= self.destination:
            return self
        return NodePair(self.destination, self.source)


class Edge(NamedTuple):
    """One timestamped interaction."""

    pair: NodePair
    timestamp: float
    weight: float | None = None
    features: tuple[float, ...] | None = None


@dataclass(frozen=True, eq=False)
class EdgeStream:
    """A non-empty edge sequence sorted by non-decreasing timestamp.

    Ties in timestamp preserve ingestion order (stable sort). All node ids
    are dense indices in ``[0, node_count)``. In undirected mode every stored
    pair is canonical (``src <= dst``).

    ``bipartite_users`` records the user/item id boundary for streams parsed
    from interaction files (items are offset after users); ``None`` otherwise.
    """

    src: np.ndarray
    dst: np.ndarray
    ts: np.ndarray
    node_count: int
    directed: bool = True
    weights: np.ndarray | None = None
    features: np.ndarray | None = None
    name: str = ""
    bipartite_users: int | None = None

    def __post_init__(self) -> None:
        n = len(self.ts)
        if n == 0:
            raise ValueError("edge stream must contain at least one edge")
        if not (len(self.src) == len(self.dst) == n):
            raise ValueError("src/dst/ts arrays must have equal length")
        if np.any(self.ts < 0):
            raise ValueError("timestamps must be non-negative")
        if np.any(np.diff(self.ts) < 0):
            raise ValueError("timestamps must be non-decreasing")
        if self.node_count <= 0:
            raise ValueError("node_count must be positive")
        lo = min(int(self.src.min()), int(self.dst.min()))
        hi = max(int(self.src.max()), int(self.dst.max()))
        if lo < 0 or hi >= self.node_count:
            raise ValueError(f"node id out of range [0, {self.node_count})")
        if not self.directed and np.any(self.src > self.dst):
            raise ValueError("undirected stream must store canonical pairs")
        if self.weights is not None and len(self.weights) != n:
            raise ValueError("weights length must match edge count")
        if self.features is not None and self.features.shape[0] != n:
            raise ValueError("features row count must match edge count")

    @property
    def feature_dim(self) -> int:
        return 0 if self.features is None else int(self.features.shape[1])

    @property
    def duration(self) -> float:
        return float(self.ts[-1] - self.ts[0])

    def __len__(self) -> int:
        return len(self.ts)

    def edge(self, i: int) -> Edge:
        w = None if self.weights is None else float(self.weights[i])
        f = None if self.features is None else tuple(self.features[i].tolist())
        return Edge(NodePair(int(self.src[i]), int(self.dst[i])), float(self.ts[i]), w, f)

    def __iter__(self) -> Iterator[Edge]:
        return (self.edge(i) for i in range(len(self)))

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self)

    def light_edges(self, lo: int, hi: int) -> list[Edge]:
        """Edges in [lo, hi) without weights/features (hot-path view)."""
        src = self.src[lo:hi].tolist()
        dst = self.dst[lo:hi].tolist()
        ts = self.ts[lo:hi].tolist()
        return [Edge(NodePair(s, d), t) for s, d, t in zip(src, dst, ts)]

    def pairs(self, lo: int = 0, hi: int | None = None) -> list[NodePair]:
        hi = len(self) if hi is None else hi
        return [
            NodePair(s, d)
            for s, d in zip(self.src[lo:hi].tolist(), self.dst[lo:hi].tolist())
        ]

    def unique_timestamps(self) -> int:
        return int(np.unique(self.ts).size)

    def unique_pairs(self) -> int:
        return len(set(zip(self.src.tolist(), self.dst.tolist())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeStream):
            return NotImplemented

        def opt_eq(a, b):
            if a is None or b is None:
                return a is b
            return np.array_equal(a, b)

        return (
            self.node_count == other.node_count
            and self.directed == other.directed
            and self.bipartite_users == other.bipartite_users
            and np.array_equal(self.src, other.src)
            and np.array_equal(self.dst, other.dst)
            and np.array_equal(self.ts, other.ts)
            and opt_eq(self.weights, other.weights)
            and opt_eq(self.features, other.features)
        )


def build_stream(
    raw_edges: Sequence[Edge] | Iterable[Edge],
    directed: bool = True,
    name: str = "",
    bipartite_users: int | None = None,
) -> EdgeStream:
    """Assemble an :class:`EdgeStream` from edges in any order.

    Edges are stable-sorted by timestamp; ``node_count`` is ``max id + 1``
    (ids are expected to be dense already). In undirected mode each pair is
    stored canonically.

    Raises ``ValueError`` on empty input, negative timestamps, or
    inconsistent feature lengths.
    """
    edges = list(raw_edges)
    if not edges:
        raise ValueError("cannot build a stream from an empty edge sequence")

    n = len(edges)
    src = np.empty(n, dtype=np.int64)
    dst = np.empty(n, dtype=np.int64)
    ts = np.empty(n, dtype=np.float64)
    any_weight = any(e.weight is not None for e in edges)
    weights = np.empty(n, dtype=np.float64) if any_weight else None

    feat_dim: int | None = None
    for i, e in enumerate(edges):
        s, d = e.pair
        if not directed and s > d:
            s, d = d, s
        src[i], dst[i], ts[i] = s, d, e.timestamp
        if weights is not None:
            weights[i] = math.nan if e.weight is None else e.weight
        if e.features is not None:
            if feat_dim is None:
                feat_dim = len(e.features)
            elif len(e.features) != feat_dim:
                raise ValueError(
                    f"inconsistent feature lengths: {len(e.features)} != {feat_dim}"
                )

    features = None
    if feat_dim is not None:
        features = np.empty((n, feat_dim), dtype=np.float64)
        for i, e in enumerate(edges):
            if e.features is None or len(e.features) != feat_dim:
                raise ValueError("all edges must carry features of equal length")
            features[i] = e.features

    order = np.argsort(ts, kind="stable")
    src, dst, ts = src[order], dst[order], ts[order]
    if weights is not None:
        weights = weights[order]
    if features is not None:
        features = features[order]

    node_count = int(max(src.max(), dst.max())) + 1
    return EdgeStream(
        src=src,
        dst=dst,
        ts=ts,
        node_count=node_count,
        directed=directed,
        weights=weights,
        features=features,
        name=name,
        bipartite_users=bipartite_users,
    )


@dataclass(frozen=True)
class ChronoSplit:
    """Index-based chronological partition: train [0, train_end), validation
    [train_end, val_end), test [val_end, n). ``t_split`` is the timestamp of
    the first test edge (the boundary edge's timestamp when the test part is
    empty)."""

    train_end: int
    val_end: int
    t_split: float
    ratios: tuple[float, float, float]

    def sizes(self, n: int) -> tuple[int, int, int]:
        return (self.train_end, self.val_end - self.train_end, n - self.val_end)


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def chronological_split(
    stream: EdgeStream, ratios: Sequence[float] = (0.70, 0.15, 0.15)
) -> ChronoSplit:
    """Split a stream by edge index with round-half-up boundaries.

    The boundary indices are ``round(r1*n)`` and ``round((r1+r2)*n)``; splits
    therefore stay well-defined under heavy timestamp ties (a boundary may
    fall inside a run of equal timestamps; the split happens at the index
    regardless).
    """
    r = tuple(float(x) for x in ratios)
    if len(r) != 3 or any(x < 0 for x in r):
        raise ValueError("ratios must be three non-negative reals")
    if abs(sum(r) - 1.0) > 1e-9:
        raise ValueError(f"ratios must sum to 1, got {sum(r)}")
    n = len(stream)
    if n < 3:
        raise ValueError("need at least 3 edges to split")

    train_end = min(_round_half_up(r[0] * n), n)
    val_end = min(max(_round_half_up((r[0] + r[1]) * n), train_end), n)
    t_split = float(stream.ts[val_end]) if val_end < n else float(stream.ts[-1])
    return ChronoSplit(train_end=train_end, val_end=val_end, t_split=t_split, ratios=r)


@dataclass(frozen=True)
class EdgeSets:
    """Distinct node pairs per split partition, plus their set algebra.

    Validation pairs are tracked separately so callers can decide whether the
    "past" seen by a predictor is the train partition alone or train+val.
    """

    train_pairs: frozenset[NodePair]
    val_pairs: frozenset[NodePair]
    test_pairs: frozenset[NodePair]

    @cached_property
    def all_pairs(self) -> frozenset[NodePair]:
        return self.train_pairs | self.val_pairs | self.test_pairs

    @property
    def train_only(self) -> frozenset[NodePair]:
        return self.train_pairs - self.test_pairs

    @property
    def transductive(self) -> frozenset[NodePair]:
        return self.train_pairs & self.test_pairs

    @property
    def inductive(self) -> frozenset[NodePair]:
        return self.test_pairs - self.train_pairs

    @property
    def val_only(self) -> frozenset[NodePair]:
        return self.val_pairs - self.train_pairs - self.test_pairs

    def history_pairs(self, history: str = "train") -> frozenset[NodePair]:
        """Pairs counted as previously observed: ``train`` or ``train+val``."""
        if history == "train":
            return self.train_pairs
        if history == "train+val":
            return self.train_pairs | self.val_pairs
        raise ValueError(f"unknown history mode: {history!r}")


def edge_sets(stream: EdgeStream, split: ChronoSplit) -> EdgeSets:
    """Distinct pairs of each partition of ``stream`` under ``split``."""
    n = len(stream)
    if not (0 <= split.train_end <= split.val_end <= n):
        raise ValueError("split boundaries out of range for this stream")
    src = stream.src.tolist()
    dst = stream.dst.tolist()

    def distinct(lo: int, hi: int) -> frozenset[NodePair]:
        return frozenset(NodePair(s, d) for s, d in zip(src[lo:hi], dst[lo:hi]))

    return EdgeSets(
        train_pairs=distinct(0, split.train_end),
        val_pairs=distinct(split.train_end, split.val_end),
        test_pairs=distinct(split.val_end, n),
    )


@dataclass(frozen=True)
class DifficultyIndices:
    """Per-split difficulty summary; reoccurrence/surprise are None when the
    corresponding denominator set is empty (degenerate splits)."""

    novelty: float
    reoccurrence: float | None
    surprise: float | None


def _timestamp_groups(stream: EdgeStream) -> Iterator[tuple[float, set[NodePair]]]:
    """Distinct pairs grouped by exactly-equal timestamp, in stream order."""
    src = stream.src.tolist()
    dst = stream.dst.tolist()
    ts = stream.ts.tolist()
    i, n = 0, len(ts)
    while i < n:
        t = ts[i]
        group: set[NodePair] = set()
        while i < n and ts[i] == t:
            group.add(NodePair(src[i], dst[i]))
            i += 1
        yield t, group


def novelty_index(stream: EdgeStream) -> float:
    """Average per-timestamp fraction of never-before-seen pairs.

    For each distinct timestamp t, the ratio of pairs at t with no occurrence
    strictly before t to all distinct pairs at t; the index is the mean of
    these ratios over all distinct timestamps.
    """
    seen: set[NodePair] = set()
    ratios: list[float] = []
    for _, group in _timestamp_groups(stream):
        new = sum(1 for p in group if p not in seen)
        ratios.append(new / len(group))
        seen |= group
    return math.fsum(ratios) / len(ratios)


def reoccurrence_index(sets: EdgeSets, history: str = "train") -> float:
    """Fraction of distinct history pairs that reappear in the test split."""
    e_train = sets.history_pairs(history)
    if not e_train:
        raise ValueError("reoccurrence index undefined: no train pairs")
    return len(e_train & sets.test_pairs) / len(e_train)


def surprise_index(sets: EdgeSets, history: str = "train") -> float:
    """Fraction of distinct test pairs never observed in the history."""
    if not sets.test_pairs:
        raise ValueError("surprise index undefined: no test pairs")
    e_train = sets.history_pairs(history)
    return len(sets.test_pairs - e_train) / len(sets.test_pairs)


def difficulty_indices(
    stream: EdgeStream, split: ChronoSplit, history: str = "train"
) -> DifficultyIndices:
    sets = edge_sets(stream, split)
    return DifficultyIndices(
        novelty=novelty_index(stream),
        reoccurrence=reoccurrence_index(sets, history),
        surprise=surprise_index(sets, history),
    )
