"""Exact Grundy number when ``G - R`` is a single clique.

The instance is kernelized to ``G[R + F]``; every clique vertex outside the
kernel ends up in its own trailing singleton class, so the answer is the
kernel's Grundy number plus the number of discarded vertices.  The kernel is
solved by trying each small ``Q`` from ``F`` and each first-fit coloring of
``G[Q + R]``, then extending greedily along the rest of ``F``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import kernels
from .coloring import GrundySolution, first_fit, validate_grundy_coloring
from .errors import SolverInconsistencyError, WrongSolverError
from .graph import Graph, ModulatorInstance
from .prefixes import ColoringCache, q_choices


@dataclass(frozen=True)
class Kernel:
    kernel_graph: Graph
    mapping: tuple[int, ...]  # kernel vertex -> original vertex
    removed_count: int
    removed_vertices: frozenset[int]


def _require_k(inst: ModulatorInstance, k: int, name: str) -> None:
    if inst.k != k:
        raise WrongSolverError(f"{name} needs exactly {k} clique(s) after removing R, found {inst.k}")


def build_kernel(inst: ModulatorInstance) -> Kernel:
    _require_k(inst, 1, "clique solver")
    keep = inst.modulator | inst.equivalence.representatives
    kernel_graph, mapping = inst.graph.subgraph(keep)
    removed = frozenset(inst.decomposition.cliques[0]) - keep
    return Kernel(kernel_graph, mapping, len(removed), removed)


def solve_clique(inst: ModulatorInstance) -> GrundySolution:
    """Grundy number and certificate for a clique modulator instance."""
    start = time.perf_counter()
    kernel = build_kernel(inst)
    kg = kernel.kernel_graph
    local = {v: i for i, v in enumerate(kernel.mapping)}
    eq = inst.equivalence
    r_local = sorted(local[v] for v in inst.modulator)
    f_local = sorted(local[v] for v in eq.representatives)
    masks = kg.induced_masks(range(kg.n))
    cache = ColoringCache(kg)
    ceiling = min(kg.n, kg.max_degree() + 1) if kg.n else 0

    best_count, best_order = -1, ()
    candidates = 0
    qs = q_choices(eq, min(inst.r, len(f_local)))
    for q in qs:
        q_loc = tuple(sorted(local[v] for v in q))
        prefix = tuple(sorted(r_local + list(q_loc)))
        taken = set(q_loc)
        suffix = [v for v in f_local if v not in taken]
        options = cache.colorings(prefix)
        bases = []
        for classes, _ in options:
            base = [-1] * kg.n
            for c, cls in enumerate(classes):
                for v in cls:
                    base[v] = c
            bases.append(base)
        candidates += len(bases)
        idx, count = kernels.best_extension(masks, bases, suffix)
        if count > best_count:
            best_count = count
            best_order = options[idx][1] + tuple(suffix)
        if best_count >= ceiling:
            break

    lifted = tuple(kernel.mapping[v] for v in best_order) + tuple(sorted(kernel.removed_vertices))
    witness = first_fit(inst.graph, lifted)
    expected = best_count + kernel.removed_count
    if witness.gamma != expected or not validate_grundy_coloring(inst.graph, witness):
        raise SolverInconsistencyError(
            f"lifted certificate has {witness.gamma} classes, kernel arithmetic gives {expected}"
        )
    stats = {
        "q_sets": len(qs),
        "candidates_examined": candidates,
        "kernel_vertices": kg.n,
        "removed": kernel.removed_count,
        "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
    }
    return GrundySolution(witness.gamma, witness, lifted, "clique-modulator", stats)
