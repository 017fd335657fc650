import random

import pytest

from tgeval import Edge, EdgeStream, NodePair, build_stream


def make_random_stream(
    rng: random.Random,
    max_nodes: int = 24,
    max_edges: int = 120,
    min_edges: int = 10,
    directed: bool = True,
) -> EdgeStream:
    """A small stream with realistic pair reuse and timestamp ties."""
    n_nodes = rng.randint(6, max_nodes)
    n_edges = rng.randint(min_edges, max_edges)
    reuse_prob = rng.uniform(0.2, 0.8)
    tie_prob = rng.uniform(0.0, 0.5)

    seen_pairs: list[tuple[int, int]] = []
    edges: list[Edge] = []
    t = 0.0
    for _ in range(n_edges):
        if seen_pairs and rng.random() < reuse_prob:
            s, d = rng.choice(seen_pairs)
        else:
            s = rng.randrange(n_nodes)
            d = rng.randrange(n_nodes)
            while d == s:
                d = rng.randrange(n_nodes)
            seen_pairs.append((s, d))
        if edges and rng.random() < tie_prob:
            pass  # keep the same timestamp: deliberate tie
        else:
            t += rng.randint(1, 3)
        edges.append(Edge(NodePair(s, d), t))
    return build_stream(edges, directed=directed)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
