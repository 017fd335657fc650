"""Memorization baselines for dynamic link prediction.

The memory is a dictionary of previously observed node pairs, updated
chronologically. A query pair is scored 1.0 when the memory says it was
observed before, 0.0 otherwise. Two variants:

* ``infinity``: everything ever observed counts.
* ``time_window``: only pairs whose latest observation falls inside the
  sliding window ``[t_now - window, t_now)`` count; the window size is
  conventionally set to the duration of the test split.

Both variants are deterministic and parameter-free; for a pair last observed
exactly at query time neither counts it as previously observed, which keeps
the two variants exactly equivalent whenever the window covers the whole
stream duration.
"""

from __future__ import annotations

from typing import Iterable

from .stream import NodePair

VARIANT_INFINITY = "infinity"
VARIANT_TIME_WINDOW = "time_window"
VARIANTS = (VARIANT_INFINITY, VARIANT_TIME_WINDOW)


class EdgeBankMemory:
    """Seen-pair store backing the memorization predictor.

    Updates must arrive in chronological order (each batch's timestamps at or
    after every previously seen timestamp). Expired window entries are pruned
    lazily at query time, keeping updates O(1) amortized.
    """

    __slots__ = ("variant", "window", "_last_seen", "_high_water")

    def __init__(self, variant: str, window: float | None = None) -> None:
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant: {variant!r}")
        if variant == VARIANT_TIME_WINDOW:
            if window is None or not window > 0:
                raise ValueError("time_window variant requires window > 0")
        elif window is not None:
            raise ValueError("window only applies to the time_window variant")
        self.variant = variant
        self.window = window
        self._last_seen: dict[NodePair, float] = {}
        self._high_water = float("-inf")

    def __len__(self) -> int:
        return len(self._last_seen)

    def __contains__(self, pair: NodePair) -> bool:
        return pair in self._last_seen

    def last_seen(self, pair: NodePair) -> float | None:
        return self._last_seen.get(pair)

    def update(self, observations: Iterable[tuple[NodePair, float]]) -> None:
        """Record a chronological batch of (pair, timestamp) observations.

        Raises ``ValueError`` if any timestamp precedes a previously updated
        one: memorization is order-dependent.
        """
        floor = self._high_water
        high = floor
        last_seen = self._last_seen
        for pair, t in observations:
            if t < floor:
                raise ValueError(
                    f"out-of-order update: t={t} after high-water mark {floor}"
                )
            prev = last_seen.get(pair)
            if prev is None or t > prev:
                last_seen[pair] = t
            if t > high:
                high = t
        self._high_water = high

    def predict(self, pair: NodePair, t_now: float) -> float:
        """Score 1.0 iff ``pair`` counts as previously observed at ``t_now``.

        ``infinity``: observed strictly before t_now. ``time_window``: latest
        observation inside [t_now - window, t_now).
        """
        t_seen = self._last_seen.get(pair)
        if t_seen is None or not t_seen < t_now:
            return 0.0
        if self.variant == VARIANT_TIME_WINDOW and t_seen < t_now - self.window:
            return 0.0
        return 1.0
