import random

import pytest

from tgeval import (
    VARIANT_INFINITY,
    VARIANT_TIME_WINDOW,
    EdgeBankMemory,
    NodePair,
)


AB = NodePair(0, 1)
CD = NodePair(2, 3)


class TestConstruction:
    def test_infinity_starts_empty(self):
        memory = EdgeBankMemory(VARIANT_INFINITY)
        assert len(memory) == 0
        assert memory.predict(AB, 10.0) == 0.0

    def test_window_equal_to_test_duration(self):
        t_test_start, t_test_end = 100.0, 160.0
        memory = EdgeBankMemory(VARIANT_TIME_WINDOW, window=t_test_end - t_test_start)
        assert memory.window == 60.0

    def test_zero_window_rejected(self):
        with pytest.raises(ValueError):
            EdgeBankMemory(VARIANT_TIME_WINDOW, window=0.0)

    def test_window_without_variant_rejected(self):
        with pytest.raises(ValueError):
            EdgeBankMemory(VARIANT_INFINITY, window=5.0)
        with pytest.raises(ValueError):
            EdgeBankMemory(VARIANT_TIME_WINDOW)

    def test_unknown_variant_rejected(self):
        with pytest.raises(ValueError):
            EdgeBankMemory("bounded")


class TestUpdate:
    def test_update_then_seen(self):
        memory = EdgeBankMemory(VARIANT_INFINITY)
        memory.update([(AB, 3.0)])
        assert memory.predict(AB, 4.0) == 1.0

    def test_last_seen_takes_max(self):
        memory = EdgeBankMemory(VARIANT_INFINITY)
        memory.update([(AB, 3.0)])
        memory.update([(AB, 7.0)])
        assert memory.last_seen(AB) == 7.0

    def test_out_of_order_update_rejected(self):
        memory = EdgeBankMemory(VARIANT_INFINITY)
        memory.update([(AB, 9.0)])
        with pytest.raises(ValueError):
            memory.update([(CD, 5.0)])

    def test_same_timestamp_update_allowed(self):
        memory = EdgeBankMemory(VARIANT_INFINITY)
        memory.update([(AB, 5.0)])
        memory.update([(CD, 5.0)])
        assert CD in memory


class TestPredict:
    def test_unbounded_memory_never_forgets(self):
        memory = EdgeBankMemory(VARIANT_INFINITY)
        memory.update([(AB, 1.0)])
        assert memory.predict(AB, 1e6) == 1.0

    def test_window_excludes_old_observation(self):
        # window 5, seen at t=2, query at t=10: [5, 10) misses it
        memory = EdgeBankMemory(VARIANT_TIME_WINDOW, window=5.0)
        memory.update([(AB, 2.0)])
        assert memory.predict(AB, 10.0) == 0.0

    def test_window_is_half_open(self):
        memory = EdgeBankMemory(VARIANT_TIME_WINDOW, window=5.0)
        memory.update([(AB, 5.0)])
        assert memory.predict(AB, 10.0) == 1.0  # t-w boundary included
        assert memory.predict(AB, 5.0) == 0.0  # own timestamp excluded

    def test_observation_at_query_time_not_counted(self):
        memory = EdgeBankMemory(VARIANT_INFINITY)
        memory.update([(AB, 5.0)])
        assert memory.predict(AB, 5.0) == 0.0
        assert memory.predict(AB, 5.0 + 1e-9) == 1.0

    def test_infinity_monotone_once_positive(self):
        # Once a pair predicts 1.0, every query strictly after its latest
        # observation predicts 1.0 again (the exact-tie query is excluded by
        # the no-leakage rule, mirroring the half-open window).
        rng = random.Random(3)
        memory = EdgeBankMemory(VARIANT_INFINITY)
        t = 0.0
        pairs = [NodePair(a, b) for a in range(4) for b in range(4) if a != b]
        hit: set[NodePair] = set()
        for _ in range(200):
            t += rng.choice([0.0, 0.5, 1.0])
            p = rng.choice(pairs)
            score = memory.predict(p, t)
            last = memory.last_seen(p)
            if p in hit and last is not None and last < t:
                assert score == 1.0
            if score == 1.0:
                hit.add(p)
            memory.update([(p, t)])
        assert hit
        for p in hit:
            for dt in (0.1, 5.0, 1000.0):
                assert memory.predict(p, t + dt) == 1.0

    def test_window_covering_duration_matches_infinity(self):
        rng = random.Random(4)
        for _ in range(30):
            events = []
            t = 0.0
            for _ in range(rng.randint(5, 60)):
                t += rng.choice([0.0, 1.0, 2.0])
                events.append((NodePair(rng.randrange(5), rng.randrange(5)), t))
            duration = events[-1][1] - events[0][1]
            inf = EdgeBankMemory(VARIANT_INFINITY)
            tw = EdgeBankMemory(VARIANT_TIME_WINDOW, window=duration + 1.0)
            queries = [NodePair(a, b) for a in range(5) for b in range(5)]
            for pair, ts in events:
                t_now = ts
                for q in queries:
                    assert inf.predict(q, t_now) == tw.predict(q, t_now)
                inf.update([(pair, ts)])
                tw.update([(pair, ts)])

    def test_deterministic_across_runs(self):
        def run():
            memory = EdgeBankMemory(VARIANT_TIME_WINDOW, window=3.0)
            scores = []
            for t in range(10):
                scores.append(memory.predict(AB, float(t)))
                memory.update([(AB, float(t))] if t % 2 == 0 else [(CD, float(t))])
            return scores

        assert run() == run()
