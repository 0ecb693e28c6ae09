"""Shared generators and independent reference implementations for the tests."""

from __future__ import annotations

import itertools
import random

from hypothesis import strategies as st

from grundyfpt.graph import Graph


def plain_first_fit(n: int, edges, order) -> list[int]:
    """First-fit colors written from scratch, independent of the package."""
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    color = {}
    for v in order:
        used = {color[u] for u in adj[v] if u in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return [color[v] for v in range(n)]


def brute_grundy(n: int, edges) -> int:
    """Grundy number as the literal maximum over all n! orderings."""
    if n == 0:
        return 0
    edges = list(edges)
    return max(max(plain_first_fit(n, edges, p)) + 1 for p in itertools.permutations(range(n)))


def cluster_instance(
    rng: random.Random, sizes, r: int, p: float | None = None
) -> tuple[Graph, frozenset[int]]:
    """Cliques of the given sizes on the low ids, ``r`` modulator vertices on top.

    Each modulator pair gets its own edge probability unless ``p`` is given, so
    both sparse and dense attachment patterns occur.
    """
    edges = []
    base = 0
    for s in sizes:
        edges += [(base + a, base + b) for a in range(s) for b in range(a + 1, s)]
        base += s
    n = base + r
    for x in range(base, n):
        q = rng.random() if p is None else p
        for y in range(x):
            if rng.random() < q:
                edges.append((y, x))
    return Graph(n, edges), frozenset(range(base, n))


def random_sizes(rng: random.Random, k: int, total_max: int, size_max: int = 5) -> list[int]:
    while True:
        sizes = [rng.randint(1, size_max) for _ in range(k)]
        if sum(sizes) <= total_max:
            return sizes


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


@st.composite
def graphs(draw, max_n: int = 8, min_n: int = 0) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def graphs_with_order(draw, max_n: int = 8):
    g = draw(graphs(max_n=max_n))
    order = draw(st.permutations(range(g.n)))
    return g, tuple(order)


@st.composite
def cluster_instances(draw, k_max: int = 3, r_max: int = 2, n_max: int = 9, k_min: int = 1):
    k = draw(st.integers(k_min, k_max))
    sizes = draw(st.lists(st.integers(1, 4), min_size=k, max_size=k).filter(lambda s: sum(s) <= n_max))
    r = draw(st.integers(0, min(r_max, n_max - sum(sizes))))
    seed = draw(st.integers(0, 2**32 - 1))
    return cluster_instance(random.Random(seed), sizes, r)
