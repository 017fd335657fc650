import random

import pytest

from tgeval import (
    Edge,
    NodePair,
    SamplerConfig,
    batch_rng,
    sample_historical,
    sample_inductive,
    sample_random,
)


def pos(s, d, t):
    return Edge(NodePair(s, d), t)


class TestConfig:
    def test_defaults(self):
        config = SamplerConfig("random", seed=7)
        assert config.batch_size == 200

    def test_bad_strategy_rejected(self):
        with pytest.raises(ValueError):
            SamplerConfig("adversarial", seed=7)

    def test_bad_batch_size_rejected(self):
        with pytest.raises(ValueError):
            SamplerConfig("random", seed=7, batch_size=0)


class TestBatchRng:
    def test_deterministic(self):
        assert batch_rng(42, 3).random() == batch_rng(42, 3).random()

    def test_batches_are_independent_streams(self):
        # generating batch 5 alone matches generating it after 0..4
        alone = batch_rng(42, 5).random()
        for b in range(5):
            batch_rng(42, b).random()
        assert batch_rng(42, 5).random() == alone

    def test_seed_and_index_both_matter(self):
        assert batch_rng(1, 0).random() != batch_rng(2, 0).random()
        assert batch_rng(1, 0).random() != batch_rng(1, 1).random()


class TestRandomStrategy:
    def test_keeps_source_and_timestamp(self):
        batch = [pos(5, 7, 3.0)]
        neg = sample_random(batch, 10, {NodePair(5, 7)}, random.Random(0))
        (pair, t), = neg.negatives
        assert pair.source == 5 and t == 3.0
        assert pair.destination != 5
        assert pair != NodePair(5, 7)

    def test_no_candidate_space_errors(self):
        batch = [pos(0, 1, 1.0)]
        with pytest.raises(ValueError, match="draw budget"):
            sample_random(batch, 2, {NodePair(0, 1)}, random.Random(0))

    def test_too_few_nodes_rejected(self):
        with pytest.raises(ValueError):
            sample_random([pos(0, 1, 1.0)], 1, set(), random.Random(0))

    def test_fixed_seed_reproduces(self):
        batch = [pos(i % 4, (i + 1) % 4, float(i)) for i in range(20)]
        exclusion = {e.pair for e in batch}
        a = sample_random(batch, 50, exclusion, random.Random(99))
        b = sample_random(batch, 50, exclusion, random.Random(99))
        assert a == b

    def test_all_entries_tagged_random(self):
        batch = [pos(0, 1, 1.0), pos(1, 2, 2.0)]
        neg = sample_random(batch, 30, {e.pair for e in batch}, random.Random(1))
        assert neg.fallback_count == len(batch)
        assert all(neg.is_fallback)

    def test_undirected_checks_canonical_collisions(self):
        # source 2, nodes {0,1,2,3}; exclusion stores canonical pairs, so
        # candidates 0 and 1 collide as (0,2) and (1,2); only 3 survives
        exclusion = {NodePair(0, 2), NodePair(1, 2)}
        results = set()
        for s in range(50):
            neg = sample_random(
                [pos(2, 0, 1.0)], 4, exclusion, random.Random(s), undirected=True
            )
            results.add(neg.negatives[0][0])
        assert results == {NodePair(2, 3)}


class TestHistoricalStrategy:
    def test_pool_contract(self):
        train = {NodePair(0, 1), NodePair(1, 2), NodePair(2, 3), NodePair(3, 4)}
        batch = [pos(0, 1, 10.0), pos(5, 6, 11.0)]
        neg = sample_historical(batch, train, random.Random(2), 10)
        for (pair, _), fb in zip(neg.negatives, neg.is_fallback):
            assert not fb
            assert pair in train
            assert pair not in {e.pair for e in batch}

    def test_timestamps_align_with_positives(self):
        train = {NodePair(7, 8), NodePair(8, 9)}
        batch = [pos(0, 1, 10.0), pos(1, 2, 11.0)]
        neg = sample_historical(batch, train, random.Random(3), 20)
        assert [t for _, t in neg.negatives] == [10.0, 11.0]

    def test_shortfall_tops_up_with_random(self):
        # pool of size 1 against a batch of 3 -> 1 historical + 2 random
        train = {NodePair(0, 1), NodePair(9, 8)}
        batch = [pos(0, 1, 1.0), pos(1, 2, 2.0), pos(2, 3, 3.0)]
        neg = sample_historical(batch, train, random.Random(4), 20)
        assert len(neg) == 3
        assert neg.fallback_count == 2
        assert neg.is_fallback == (False, True, True)
        assert neg.negatives[0][0] == NodePair(9, 8)

    def test_empty_pool_is_all_random(self):
        batch = [pos(0, 1, 1.0)]
        neg = sample_historical(batch, set(), random.Random(5), 20)
        assert neg.fallback_count == 1

    def test_without_replacement_within_batch(self):
        train = {NodePair(i, i + 1) for i in range(0, 40, 2)}
        batch = [pos(50, 51, float(i)) for i in range(10)]
        neg = sample_historical(batch, train, random.Random(6), 60)
        pairs = [p for p, _ in neg.negatives]
        assert len(set(pairs)) == len(pairs)


class TestInductiveStrategy:
    def test_first_batch_is_all_random(self):
        batch = [pos(0, 1, 1.0), pos(1, 2, 2.0)]
        neg = sample_inductive(batch, frozenset(), set(), random.Random(7), 20)
        assert neg.fallback_count == len(batch)

    def test_pool_excludes_train_pairs(self):
        train = frozenset({NodePair(0, 1), NodePair(1, 2)})
        seen = {NodePair(0, 1), NodePair(1, 2), NodePair(3, 4), NodePair(4, 5)}
        batch = [pos(8, 9, 5.0), pos(9, 8, 6.0)]
        neg = sample_inductive(batch, train, seen, random.Random(8), 20)
        for (pair, _), fb in zip(neg.negatives, neg.is_fallback):
            assert not fb
            assert pair not in train
            assert pair in seen

    def test_pool_excludes_current_positives(self):
        seen = {NodePair(3, 4)}
        batch = [pos(3, 4, 5.0)]
        neg = sample_inductive(batch, frozenset(), seen, random.Random(9), 20)
        assert neg.fallback_count == 1  # the only pool pair is this positive


class TestDeterminism:
    def test_same_inputs_same_outputs(self):
        train = frozenset(NodePair(i, i + 1) for i in range(30))
        batch = [pos(40, 41 + i, float(i)) for i in range(15)]
        for sampler in (
            lambda r: sample_historical(batch, train, r, 60),
            lambda r: sample_inductive(batch, train, set(train), r, 60),
            lambda r: sample_random(batch, 60, {e.pair for e in batch}, r),
        ):
            assert sampler(batch_rng(11, 0)) == sampler(batch_rng(11, 0))
