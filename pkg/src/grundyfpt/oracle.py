"""Exhaustive Grundy number, used as ground truth by the test suites.

A Grundy coloring ``(C_1, ..., C_l)`` of ``G`` is exactly a maximal independent
set ``C_1`` followed by a Grundy coloring of ``G - C_1``.  Memoizing the best
value over vertex subsets therefore enumerates ordered independent-set
partitions rather than ``n!`` orderings.
"""

from __future__ import annotations

import time

from .coloring import ColorClasses, GrundySolution, sorted_permutation
from .errors import SizeGuardError
from .graph import Graph

DEFAULT_GUARD = 9


def maximal_independent_sets(masks: list[int], universe: int):
    """Yield every maximal independent set of the subgraph induced by ``universe``.

    Bron-Kerbosch with pivoting, run on the complement restricted to ``universe``.
    """

    def non_adj(v: int) -> int:
        return universe & ~masks[v] & ~(1 << v)

    def expand(chosen: int, cand: int, excl: int):
        if not cand and not excl:
            yield chosen
            return
        pool = cand | excl
        pivot, best = -1, -1
        while pool:
            low = pool & -pool
            u = low.bit_length() - 1
            score = (cand & non_adj(u)).bit_count()
            if score > best:
                pivot, best = u, score
            pool ^= low
        todo = cand & ~non_adj(pivot)
        while todo:
            low = todo & -todo
            v = low.bit_length() - 1
            nv = non_adj(v)
            yield from expand(chosen | low, cand & nv, excl & nv)
            cand &= ~low
            excl |= low
            todo ^= low

    yield from expand(0, universe, 0)


def grundy_number_masks(masks: list[int]) -> tuple[int, list[int]]:
    """Grundy number of a bitmask graph and a witness as a list of class masks."""
    n = len(masks)
    memo: dict[int, tuple[int, int]] = {0: (0, 0)}

    def best(universe: int) -> int:
        hit = memo.get(universe)
        if hit is not None:
            return hit[0]
        top, top_set = -1, 0
        ceiling = universe.bit_count()
        for mis in maximal_independent_sets(masks, universe):
            value = 1 + best(universe & ~mis)
            if value > top:
                top, top_set = value, mis
                if top == ceiling:
                    break
        memo[universe] = (top, top_set)
        return top

    full = (1 << n) - 1
    value = best(full)
    classes = []
    universe = full
    while universe:
        chosen = memo[universe][1]
        classes.append(chosen)
        universe &= ~chosen
    return value, classes


def grundy_oracle(g: Graph, guard: int = DEFAULT_GUARD) -> GrundySolution:
    """Exact Grundy number of ``g`` by exhaustive search (``n <= guard``)."""
    if g.n > guard:
        raise SizeGuardError(f"oracle limited to {guard} vertices, graph has {g.n}")
    start = time.perf_counter()
    masks = g.induced_masks(range(g.n))
    value, class_masks = grundy_number_masks(masks)
    witness = ColorClasses.of(
        [v for v in range(g.n) if (mask >> v) & 1] for mask in class_masks
    )
    assert witness.gamma == value
    ordering = sorted_permutation(witness, g)
    return GrundySolution(
        value,
        witness,
        ordering,
        "oracle",
        {
            "candidates_examined": 0,
            "oracle_calls": 1,
            "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
        },
    )
