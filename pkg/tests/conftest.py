import random

import pytest

from distsp import build_graph


def random_graph(seed, n=None, m=None, wlo=1, whi=20):
    """Seeded random digraph used across the suite."""
    rng = random.Random(seed)
    if n is None:
        n = rng.randrange(8, 96)
    if m is None:
        m = rng.randrange(n, 8 * n)
    edges = []
    for _ in range(m):
        u = rng.randrange(n)
        v = rng.randrange(n)
        edges.append((u, v, rng.randrange(wlo, whi)))
    return build_graph(edges, n)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
