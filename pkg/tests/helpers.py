"""Shared instances and generators for the test suite."""

import random
from itertools import combinations

from kopt_pls.maxcut import MaxCutInstance


def make_h1():
    return MaxCutInstance(2, ((0, 1, 5),))


def make_h2():
    return MaxCutInstance(3, ((0, 1, 3), (1, 2, -2)))


def random_instance(rng, n_max=4, max_degree=3, weights=(-5, 5)):
    """Random simple graph with at least one edge, nonzero weights, bounded degree."""
    while True:
        n = rng.randint(2, n_max)
        deg = [0] * n
        edges = []
        for u, v in combinations(range(n), 2):
            if rng.random() < 0.6 and deg[u] < max_degree and deg[v] < max_degree:
                w = 0
                while w == 0:
                    w = rng.randint(*weights)
                edges.append((u, v, w))
                deg[u] += 1
                deg[v] += 1
        if edges:
            return MaxCutInstance(n, tuple(edges))


def random_suite(count=5, seed=2024, **kw):
    rng = random.Random(seed)
    return [random_instance(rng, **kw) for _ in range(count)]


def bounded_degree_graph(rng, n, max_degree=5, density=0.5):
    deg = [0] * n
    edges = []
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    for u, v in pairs:
        if rng.random() < density and deg[u] < max_degree and deg[v] < max_degree:
            edges.append((u, v, rng.randint(-9, 9)))
            deg[u] += 1
            deg[v] += 1
    return MaxCutInstance(n, tuple(edges))


def is_star_forest(n, pairs):
    deg = [0] * n
    for u, v in pairs:
        deg[u] += 1
        deg[v] += 1
    # a forest of stars has no edge joining two vertices of degree >= 2, and no cycle
    return all(min(deg[u], deg[v]) == 1 for u, v in pairs)
