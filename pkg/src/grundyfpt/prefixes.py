"""Candidate prefixes: a vertex set ``Q`` drawn from the representatives plus a
Grundy coloring of ``G[Q + R]`` that an optimal coloring may contain as a
classwise subsequence.

``Q`` is enumerated up to twin symmetry: within one equivalence class all
vertices have equal closed neighborhoods, so swapping them is a graph
automorphism and only the *number* taken from each class matters.  The
lowest-indexed representatives are used.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass
from functools import cached_property

from . import kernels
from .coloring import ColorClasses
from .graph import EquivalenceStructure, Graph, ModulatorInstance


@dataclass(frozen=True)
class PrefixColoring:
    q: tuple[int, ...]
    classes: ColorClasses
    ordering: tuple[int, ...]

    @property
    def gamma(self) -> int:
        return self.classes.gamma

    @cached_property
    def canonical(self) -> tuple[tuple[int, ...], ...]:
        return self.classes.classes


def _clique_parts(reps: tuple[tuple[int, ...], ...], cap: int) -> list[tuple[int, ...]]:
    """Twin-canonical subsets of one clique's representatives of size <= cap."""
    parts = []
    ranges = [range(len(cls) + 1) for cls in reps]
    for counts in itertools.product(*ranges):
        if sum(counts) > cap:
            continue
        part = tuple(sorted(v for cls, c in zip(reps, counts) for v in cls[:c]))
        parts.append(part)
    return parts


def q_choices(eq: EquivalenceStructure, per_clique: int, total: int | None = None) -> list[tuple[int, ...]]:
    """Sorted list of twin-canonical ``Q`` sets with at most ``per_clique`` per clique."""
    per = [_clique_parts(reps, per_clique) for reps in eq.per_class_reps]
    out = set()
    for combo in itertools.product(*per):
        q = tuple(sorted(v for part in combo for v in part))
        if total is None or len(q) <= total:
            out.add(q)
    return sorted(out)


class ColoringCache:
    """Distinct first-fit colorings of induced subgraphs, memoized per vertex set."""

    def __init__(self, g: Graph):
        self.g = g
        self._cache: dict[tuple[int, ...], list[tuple[ColorClasses, tuple[int, ...]]]] = {}

    def colorings(self, vertices: tuple[int, ...]) -> list[tuple[ColorClasses, tuple[int, ...]]]:
        hit = self._cache.get(vertices)
        if hit is not None:
            return hit
        masks = self.g.induced_masks(vertices)
        raw = kernels.prefix_colorings(masks, range(len(vertices)))
        out = []
        for colors, order in raw:
            buckets: list[list[int]] = [[] for _ in range(max(colors, default=-1) + 1)]
            for local, c in enumerate(colors):
                buckets[c].append(vertices[local])
            out.append((ColorClasses.of(buckets), tuple(vertices[i] for i in order)))
        out.sort(key=lambda item: item[0].classes)
        self._cache[vertices] = out
        return out


def enumerate_prefixes(
    inst: ModulatorInstance,
    per_clique: int | None = None,
    total: int | None = None,
    cache: ColoringCache | None = None,
) -> Iterator[PrefixColoring]:
    """Yield candidate prefixes in (Q, canonical coloring) order.

    Every yielded coloring is a Grundy coloring of ``G[Q + R]`` produced by
    first-fit along some ordering of ``Q + R``, and each of its classes meets
    ``R``.
    """
    r = inst.r
    cap = r if per_clique is None else per_clique
    cache = cache or ColoringCache(inst.graph)
    R = inst.modulator
    for q in q_choices(inst.equivalence, cap, total):
        vertices = tuple(sorted(R.union(q)))
        for classes, order in cache.colorings(vertices):
            if R and any(R.isdisjoint(cls) for cls in classes):
                continue
            yield PrefixColoring(q, classes, order)
