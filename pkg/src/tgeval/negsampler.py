"""Negative-edge generation for evaluation batches.

Three strategies, all producing exactly one negative per positive:

* random: keep each positive's source and timestamp, draw the destination
  uniformly from all nodes, accept-reject on self-loops and collisions with
  the exclusion set (the batch's own positives by default).
* historical: draw whole pairs, without replacement, from the previously
  observed train pairs that are absent from the current step.
* inductive: draw whole pairs, without replacement, from test-only pairs
  already observed in earlier test batches.

When a pool is too small the remainder falls back to random draws; fallback
entries are tagged so downstream analysis can separate them.

Each batch is generated from its own sub-seed (a 64-bit mix of the run seed
and the batch index), so batches are reproducible independently of the order
in which they are generated.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .stream import Edge, NodePair

STRATEGY_RANDOM = "random"
STRATEGY_HISTORICAL = "historical"
STRATEGY_INDUCTIVE = "inductive"
STRATEGIES = (STRATEGY_RANDOM, STRATEGY_HISTORICAL, STRATEGY_INDUCTIVE)

# total accept-reject draw budget per batch, in multiples of the batch size
MAX_DRAW_FACTOR = 1000

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def batch_rng(seed: int, batch_index: int) -> random.Random:
    """Deterministic per-batch generator: mix(seed, batch_index)."""
    sub_seed = _splitmix64((seed & _MASK64) ^ _splitmix64(batch_index))
    return random.Random(sub_seed)


@dataclass(frozen=True)
class SamplerConfig:
    strategy: str
    seed: int
    batch_size: int = 200

    def __post_init__(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy: {self.strategy!r}")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")


@dataclass(frozen=True)
class NegativeBatch:
    """Negatives aligned 1:1 with a batch's positives.

    ``is_fallback[i]`` marks entries drawn by the random fallback rather than
    the configured strategy's pool.
    """

    negatives: tuple[tuple[NodePair, float], ...]
    is_fallback: tuple[bool, ...]

    def __post_init__(self) -> None:
        if len(self.negatives) != len(self.is_fallback):
            raise ValueError("negatives and fallback flags must align")

    @property
    def fallback_count(self) -> int:
        return sum(self.is_fallback)

    def __len__(self) -> int:
        return len(self.negatives)


def sample_random(
    positives: Sequence[Edge],
    node_count: int,
    exclusion: frozenset[NodePair] | set[NodePair],
    rng: random.Random,
    undirected: bool = False,
) -> NegativeBatch:
    """Destination-perturbation negatives with accept-reject collision checks.

    Every negative keeps its positive's source and timestamp. A candidate is
    redrawn if it forms a self-loop or collides with ``exclusion``. Raises
    ``ValueError`` once the batch exceeds its draw budget (degenerate tiny
    graphs where no valid candidate exists).
    """
    if node_count < 2:
        raise ValueError("random sampling needs at least 2 nodes")
    budget = MAX_DRAW_FACTOR * len(positives)
    draws = 0
    negatives: list[tuple[NodePair, float]] = []
    for e in positives:
        s = e.pair.source
        while True:
            if draws >= budget:
                raise ValueError(
                    "random negative sampling exhausted its draw budget "
                    f"({budget} draws); candidate space too small"
                )
            d = rng.randrange(node_count)
            draws += 1
            if d == s:
                continue
            cand = NodePair(s, d)
            if undirected:
                cand = cand.canonical()
            if cand in exclusion:
                continue
            break
        negatives.append((cand, e.timestamp))
    return NegativeBatch(tuple(negatives), (True,) * len(negatives))


def _pool_sample(
    positives: Sequence[Edge],
    pool_source: frozenset[NodePair] | set[NodePair],
    rng: random.Random,
    node_count: int,
    exclusion: frozenset[NodePair] | set[NodePair] | None,
    undirected: bool,
) -> NegativeBatch:
    """Shared body of the historical/inductive strategies.

    Draws without replacement from ``pool_source`` minus the batch's positive
    pairs; any shortfall is topped up by random fallback draws aligned to the
    remaining positives.
    """
    pos_pairs = {e.pair for e in positives}
    if exclusion is None:
        exclusion = pos_pairs
    pool = sorted(pool_source - pos_pairs)
    k = len(positives)
    m = min(k, len(pool))
    chosen = rng.sample(pool, m) if m else []

    negatives = [(pair, positives[i].timestamp) for i, pair in enumerate(chosen)]
    flags = [False] * m
    if m < k:
        fb = sample_random(positives[m:], node_count, exclusion, rng, undirected)
        negatives.extend(fb.negatives)
        flags.extend([True] * len(fb))
    return NegativeBatch(tuple(negatives), tuple(flags))


def sample_historical(
    positives: Sequence[Edge],
    train_pairs: frozenset[NodePair] | set[NodePair],
    rng: random.Random,
    node_count: int,
    exclusion: frozenset[NodePair] | set[NodePair] | None = None,
    undirected: bool = False,
) -> NegativeBatch:
    """Negatives from train pairs absent in the current step.

    The current step is the evaluation batch: the pool is ``train_pairs``
    minus the batch's positive pairs. Each sampled pair is assigned the
    timestamp of its aligned positive.
    """
    return _pool_sample(positives, train_pairs, rng, node_count, exclusion, undirected)


def sample_inductive(
    positives: Sequence[Edge],
    train_pairs: frozenset[NodePair] | set[NodePair],
    test_seen_pairs: frozenset[NodePair] | set[NodePair],
    rng: random.Random,
    node_count: int,
    exclusion: frozenset[NodePair] | set[NodePair] | None = None,
    undirected: bool = False,
) -> NegativeBatch:
    """Negatives from test-only pairs observed in earlier test batches.

    ``test_seen_pairs`` must contain exactly the distinct pairs of test
    batches strictly before this one; the pool removes anything in
    ``train_pairs`` and the current positives. Early test batches therefore
    fall back to random draws until enough inductive pairs accumulate.
    """
    pool_source = test_seen_pairs - train_pairs
    return _pool_sample(positives, pool_source, rng, node_count, exclusion, undirected)
