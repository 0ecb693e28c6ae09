"""Graph representation, file formats, and cluster-modulator structure.

A :class:`Graph` stores ordinary edges as adjacency sets and may additionally
declare *blocks*: vertex sets that are complete subgraphs whose internal edges
are implied rather than stored.  Blocks let the generator and the clique
solver handle instances whose clique has ~10^5 vertices without materializing
~10^10 edges.  Every query (``has_edge``, ``neighbors``, ``degree``, ``m``)
treats implied and stored edges identically.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .errors import GraphParseError, InputError, ModulatorError, SizeGuardError


class Graph:
    """Undirected simple graph on vertices ``0..n-1``."""

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        *,
        cliques: Iterable[Iterable[int]] = (),
    ):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        self.n = n
        self.block_ids = [-1] * n
        blocks: list[tuple[int, ...]] = []
        for members in cliques:
            block = tuple(sorted(set(members)))
            if len(block) < 2:
                continue
            for v in block:
                self._check_vertex(v)
                if self.block_ids[v] != -1:
                    raise InputError(f"vertex {v} belongs to two cliques")
                self.block_ids[v] = len(blocks)
            blocks.append(block)
        self.blocks = tuple(blocks)
        self.explicit_adj: list[set[int]] = [set() for _ in range(n)]
        count = sum(len(b) * (len(b) - 1) // 2 for b in blocks)
        for u, v in edges:
            self._check_vertex(u)
            self._check_vertex(v)
            if u == v:
                raise InputError(f"self-loop on vertex {u}")
            if v in self.explicit_adj[u] or (
                self.block_ids[u] != -1 and self.block_ids[u] == self.block_ids[v]
            ):
                raise InputError(f"duplicate edge {{{u}, {v}}}")
            self.explicit_adj[u].add(v)
            self.explicit_adj[v].add(u)
            count += 1
        self.m = count

    def _check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise InputError(f"vertex {v!r} out of range 0..{self.n - 1}")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        b = self.block_ids[u]
        return (b != -1 and b == self.block_ids[v]) or v in self.explicit_adj[u]

    def neighbors(self, v: int) -> set[int]:
        """Open neighborhood of ``v`` as a fresh set."""
        nbrs = set(self.explicit_adj[v])
        b = self.block_ids[v]
        if b != -1:
            nbrs.update(self.blocks[b])
            nbrs.discard(v)
        return nbrs

    def closed_neighborhood(self, v: int) -> set[int]:
        nbrs = self.neighbors(v)
        nbrs.add(v)
        return nbrs

    def degree(self, v: int) -> int:
        b = self.block_ids[v]
        extra = len(self.blocks[b]) - 1 if b != -1 else 0
        return len(self.explicit_adj[v]) + extra

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        """Materialized neighbor sets; quadratic for large blocks."""
        return tuple(frozenset(self.neighbors(v)) for v in range(self.n))

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u in range(self.n):
            for v in sorted(self.neighbors(u)):
                if u < v:
                    yield u, v

    def induced_masks(self, vertices: Sequence[int]) -> list[int]:
        """Bitmask adjacency of ``G[vertices]`` over local positions."""
        pos = {v: i for i, v in enumerate(vertices)}
        masks = []
        for v in vertices:
            mask = 0
            if len(vertices) <= self.degree(v):
                for u in vertices:
                    if self.has_edge(v, u):
                        mask |= 1 << pos[u]
            else:
                for u in self.neighbors(v):
                    i = pos.get(u)
                    if i is not None:
                        mask |= 1 << i
            masks.append(mask)
        return masks

    def subgraph(self, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
        """Induced subgraph on ``vertices`` (sorted) plus the local-to-original map."""
        mapping = tuple(sorted(set(vertices)))
        for v in mapping:
            self._check_vertex(v)
        edges = []
        masks = self.induced_masks(mapping)
        for i, mask in enumerate(masks):
            j = i + 1
            mask >>= j
            while mask:
                if mask & 1:
                    edges.append((i, j))
                mask >>= 1
                j += 1
        return Graph(len(mapping), edges), mapping

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        seen_blocks = set()
        vset = set(vs)
        for v in vs:
            b = self.block_ids[v]
            if b != -1:
                if b in seen_blocks:
                    return False
                seen_blocks.add(b)
            if not self.explicit_adj[v].isdisjoint(vset):
                return False
        return True


# --------------------------------------------------------------------------
# file formats


def load_graph(text: str) -> Graph:
    """Parse a DIMACS-style edge list (1-based ids) into a :class:`Graph`."""
    n = expected_m = None
    header_line = 0
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise GraphParseError("second problem header", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise GraphParseError("expected 'p edge <n> <m>'", lineno)
            try:
                n, expected_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphParseError("header counts must be integers", lineno) from None
            if n < 0 or expected_m < 0:
                raise GraphParseError("header counts must be non-negative", lineno)
            header_line = lineno
        elif tag == "e":
            if n is None:
                raise GraphParseError("edge line before problem header", lineno)
            if len(parts) != 3:
                raise GraphParseError("expected 'e <u> <v>'", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphParseError("edge endpoints must be integers", lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphParseError(f"endpoint out of range 1..{n}", lineno)
            if u == v:
                raise GraphParseError(f"self-loop on vertex {u}", lineno)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphParseError(f"duplicate edge {u} {v}", lineno)
            seen.add(key)
            edges.append((u - 1, v - 1))
        else:
            raise GraphParseError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise GraphParseError("missing 'p edge <n> <m>' header")
    if len(edges) != expected_m:
        raise GraphParseError(
            f"header declares {expected_m} edges but {len(edges)} were given", header_line
        )
    return Graph(n, edges)


def dump_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {g.n} {g.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def load_modulator(text: str, n: int) -> frozenset[int]:
    """Parse ``r v1 v2 ...`` (1-based); an empty file means the empty set."""
    found = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] != "r":
            raise GraphParseError("expected 'r <v1> <v2> ...'", lineno)
        if found is not None:
            raise GraphParseError("more than one modulator line", lineno)
        vertices = set()
        for tok in parts[1:]:
            try:
                v = int(tok)
            except ValueError:
                raise GraphParseError(f"bad vertex id {tok!r}", lineno) from None
            if not 1 <= v <= n:
                raise GraphParseError(f"modulator vertex {v} out of range 1..{n}", lineno)
            if v - 1 in vertices:
                raise GraphParseError(f"modulator vertex {v} repeated", lineno)
            vertices.add(v - 1)
        found = frozenset(vertices)
    return found if found is not None else frozenset()


def dump_modulator(modulator: Iterable[int]) -> str:
    return " ".join(["r"] + [str(v + 1) for v in sorted(modulator)]) + "\n"


# --------------------------------------------------------------------------
# cluster structure


@dataclass(frozen=True)
class ClusterDecomposition:
    """Cliques of ``G - R`` ordered by their smallest vertex."""

    cliques: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.cliques)

    @cached_property
    def clique_of(self) -> dict[int, int]:
        return {v: i for i, clique in enumerate(self.cliques) for v in clique}


@dataclass(frozen=True)
class EquivalenceStructure:
    """Twin classes of clique vertices and the representative set ``F``.

    ``classes[i][j]`` is the j-th class inside clique ``i`` (sorted vertices,
    classes ordered by smallest member); ``per_class_reps[i][j]`` holds its
    ``min(r, |class|)`` lowest-indexed members.
    """

    classes: tuple[tuple[tuple[int, ...], ...], ...]
    per_class_reps: tuple[tuple[tuple[int, ...], ...], ...]
    signatures: tuple[tuple[int, ...], ...]

    @cached_property
    def representatives(self) -> frozenset[int]:
        return frozenset(v for reps in self.per_class_reps for cls in reps for v in cls)

    @cached_property
    def class_of(self) -> dict[int, tuple[int, int]]:
        return {
            v: (i, j)
            for i, classes in enumerate(self.classes)
            for j, cls in enumerate(classes)
            for v in cls
        }

    @property
    def class_count(self) -> int:
        return sum(len(c) for c in self.classes)


def _components_without(g: Graph, removed: frozenset[int] | set[int]) -> list[list[int]]:
    seen = bytearray(g.n)
    for v in removed:
        seen[v] = 1
    block_done = [False] * len(g.blocks)
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = 1
        comp = [start]
        stack = [start]
        while stack:
            v = stack.pop()
            b = g.block_ids[v]
            nbrs: Iterable[int] = g.explicit_adj[v]
            if b != -1 and not block_done[b]:
                block_done[b] = True
                nbrs = itertools.chain(nbrs, g.blocks[b])
            for u in nbrs:
                if not seen[u]:
                    seen[u] = 1
                    comp.append(u)
                    stack.append(u)
        comp.sort()
        comps.append(comp)
    return comps


def _missing_edge(g: Graph, comp: list[int]) -> tuple[int, int] | None:
    """Lexicographically least non-adjacent pair in ``comp``, or None if complete."""
    size = len(comp)
    members = set(comp)
    block_count: dict[int, int] = {}
    for v in comp:
        b = g.block_ids[v]
        if b != -1:
            block_count[b] = block_count.get(b, 0) + 1
    edge_total = sum(c * (c - 1) // 2 for c in block_count.values())
    edge_total += sum(len(g.explicit_adj[v] & members) for v in comp) // 2
    if edge_total == size * (size - 1) // 2:
        return None
    for u in comp:
        b = g.block_ids[u]
        inside = (block_count[b] - 1 if b != -1 else 0) + len(g.explicit_adj[u] & members)
        if inside < size - 1:
            for v in comp:
                if v != u and not g.has_edge(u, v):
                    return (u, v)
    raise AssertionError("edge count says incomplete but no missing pair found")


def validate_cluster_modulator(g: Graph, modulator: Iterable[int]) -> ClusterDecomposition:
    """Check that ``G - R`` is a cluster graph and return its cliques."""
    R = frozenset(modulator)
    for v in R:
        if not (isinstance(v, int) and 0 <= v < g.n):
            raise InputError(f"modulator vertex {v!r} out of range 0..{g.n - 1}")
    comps = _components_without(g, R)
    for comp in comps:
        missing = _missing_edge(g, comp)
        if missing is not None:
            u, v = missing
            raise ModulatorError(
                f"component containing vertex {comp[0]} is not a clique: "
                f"missing edge {{{u}, {v}}}",
                missing_edge=missing,
            )
    return ClusterDecomposition(tuple(tuple(c) for c in comps))


def compute_equivalence_classes(
    g: Graph, dec: ClusterDecomposition, modulator: Iterable[int]
) -> EquivalenceStructure:
    """Group clique vertices by their neighborhood inside ``R``.

    Inside one clique two vertices have equal closed neighborhoods exactly when
    they see the same modulator vertices, so an r-bit signature suffices.
    """
    R = sorted(modulator)
    r = len(R)
    classes = []
    reps = []
    sigs = []
    for clique in dec.cliques:
        groups: dict[int, list[int]] = {}
        for v in clique:
            sig = 0
            explicit = g.explicit_adj[v]
            b = g.block_ids[v]
            for t, x in enumerate(R):
                if x in explicit or (b != -1 and g.block_ids[x] == b):
                    sig |= 1 << t
            groups.setdefault(sig, []).append(v)
        ordered = sorted(groups.items(), key=lambda item: item[1][0])
        classes.append(tuple(tuple(members) for _, members in ordered))
        reps.append(tuple(tuple(members[: min(r, len(members))]) for _, members in ordered))
        sigs.append(tuple(sig for sig, _ in ordered))
    return EquivalenceStructure(tuple(classes), tuple(reps), tuple(sigs))


@dataclass(frozen=True)
class ModulatorInstance:
    """A graph together with a validated cluster modulator."""

    graph: Graph
    modulator: frozenset[int]
    decomposition: ClusterDecomposition = field(repr=False)

    @classmethod
    def build(cls, g: Graph, modulator: Iterable[int]) -> ModulatorInstance:
        R = frozenset(modulator)
        return cls(g, R, validate_cluster_modulator(g, R))

    @property
    def r(self) -> int:
        return len(self.modulator)

    @property
    def k(self) -> int:
        return self.decomposition.k

    @cached_property
    def equivalence(self) -> EquivalenceStructure:
        return compute_equivalence_classes(self.graph, self.decomposition, self.modulator)


def is_cluster_graph(g: Graph, removed: Iterable[int] = ()) -> bool:
    comps = _components_without(g, frozenset(removed))
    return all(_missing_edge(g, c) is None for c in comps)


def find_min_cluster_modulator(
    g: Graph, k_max: int | None = None, *, guard: int = 24
) -> frozenset[int]:
    """Smallest vertex set whose removal leaves at most ``k_max`` cliques.

    Subsets are tried by size, then lexicographically, so the result is the
    lexicographically least among minimum-size modulators.
    """
    if g.n > guard:
        raise SizeGuardError(
            f"graph has {g.n} vertices; brute-force modulator search is limited to "
            f"{guard}. Supply the modulator explicitly."
        )
    for size in range(g.n + 1):
        for subset in itertools.combinations(range(g.n), size):
            removed = frozenset(subset)
            comps = _components_without(g, removed)
            if k_max is not None and len(comps) > k_max:
                continue
            if all(_missing_edge(g, c) is None for c in comps):
                return removed
    raise AssertionError("removing every vertex always yields a cluster graph")
