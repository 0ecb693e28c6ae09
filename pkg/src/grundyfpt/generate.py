"""Random instances with a planted cluster modulator."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InputError
from .graph import Graph


@dataclass(frozen=True)
class GeneratorSpec:
    clique_sizes: tuple[int, ...]
    r: int
    edge_probability: float
    seed: int

    def __post_init__(self):
        if not self.clique_sizes:
            raise InputError("at least one clique is required")
        if any(s < 1 for s in self.clique_sizes):
            raise InputError("clique sizes must be positive")
        if self.r < 0:
            raise InputError("modulator size must be non-negative")
        if not 0.0 <= self.edge_probability <= 1.0:
            raise InputError("edge probability must lie in [0, 1]")

    @property
    def n(self) -> int:
        return sum(self.clique_sizes) + self.r


def generate(spec: GeneratorSpec) -> tuple[Graph, frozenset[int]]:
    """Cliques occupy the low vertex ids in the given order, the planted ``R`` the top ``r``.

    Each pair with at least one endpoint in ``R`` becomes an edge independently
    with the spec's probability.  Output depends only on the spec.
    """
    rng = random.Random(spec.seed)
    cliques = []
    base = 0
    for size in spec.clique_sizes:
        cliques.append(range(base, base + size))
        base += size
    n = spec.n
    p = spec.edge_probability
    edges = []
    for x in range(base, n):
        for y in range(x):
            if rng.random() < p:
                edges.append((y, x))
    return Graph(n, edges, cliques=cliques), frozenset(range(base, n))
