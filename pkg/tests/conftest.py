import random

import pytest

from dynsparse.graph import DynamicGraph


def random_connected(n, m, seed=0, max_w=1):
    """Connected random multigraph: random tree plus extra random edges."""
    rng = random.Random(seed)
    g = DynamicGraph(n)
    for i in range(1, n):
        w = 1 if max_w == 1 else rng.uniform(1.0, max_w)
        g.insert_edge(i, rng.randrange(i), w)
    while g.m < m:
        u, v = rng.sample(range(n), 2)
        w = 1 if max_w == 1 else rng.uniform(1.0, max_w)
        g.insert_edge(u, v, w)
    return g


@pytest.fixture
def small_graph():
    return random_connected(8, 16, seed=1)
