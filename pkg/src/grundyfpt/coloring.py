"""First-fit coloring, Grundy-coloring checks, and certificate types."""

from __future__ import annotations

import json
from bisect import bisect_left
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, NamedTuple

from .errors import InputError, StructuralError
from .graph import Graph

Ordering = tuple[int, ...]


@dataclass(frozen=True)
class ColorClasses:
    """Ordered partition ``(C_1, ..., C_gamma)`` of a vertex set.

    Classes are stored as sorted tuples so equality is classwise and
    independent of how the caller listed the members.
    """

    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for i, cls in enumerate(self.classes):
            if not cls:
                raise StructuralError(f"color class {i} is empty")
            for v in cls:
                if v in seen:
                    raise StructuralError(f"vertex {v} appears in more than one class")
                seen.add(v)

    @classmethod
    def of(cls, classes: Iterable[Iterable[int]]) -> ColorClasses:
        return cls(tuple(tuple(sorted(c)) for c in classes))

    @property
    def gamma(self) -> int:
        return len(self.classes)

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i):
        return self.classes[i]

    @cached_property
    def color_of(self) -> dict[int, int]:
        return {v: i for i, c in enumerate(self.classes) for v in c}

    def vertices(self) -> frozenset[int]:
        return frozenset(self.color_of)

    def as_lists(self, offset: int = 0) -> list[list[int]]:
        return [[v + offset for v in c] for c in self.classes]


@dataclass
class GrundySolution:
    """A Grundy number with its witness coloring and the ordering producing it."""

    grundy_number: int
    witness: ColorClasses
    ordering: Ordering
    algorithm: str
    stats: dict[str, Any] = field(default_factory=dict)

    def to_dict(self, *, timing: bool = True) -> dict[str, Any]:
        stats = dict(self.stats)
        if not timing:
            stats.pop("elapsed_ms", None)
        return {
            "grundy_number": self.grundy_number,
            "classes": self.witness.as_lists(offset=1),
            "ordering": [v + 1 for v in self.ordering],
            "algorithm": self.algorithm,
            "stats": stats,
        }

    def to_json(self, *, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing=timing), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> GrundySolution:
        try:
            classes = ColorClasses.of([v - 1 for v in c] for c in data["classes"])
            ordering = tuple(v - 1 for v in data.get("ordering", []))
            return cls(
                int(data["grundy_number"]),
                classes,
                ordering,
                str(data.get("algorithm", "")),
                dict(data.get("stats", {})),
            )
        except (KeyError, TypeError) as exc:
            raise StructuralError(f"malformed solution document: {exc}") from None


# --------------------------------------------------------------------------
# first fit


class _NextFree:
    """Smallest unused color at or above a query point, with path compression."""

    __slots__ = ("nxt",)

    def __init__(self):
        self.nxt: dict[int, int] = {}

    def find(self, c: int) -> int:
        nxt = self.nxt
        root = c
        while root in nxt:
            root = nxt[root]
        while c != root:
            nxt[c], c = root, nxt[c]
        return root

    def use(self, c: int) -> None:
        self.nxt[c] = c + 1


def _check_ordering(g: Graph, order: Sequence[int], full: bool) -> None:
    seen = set()
    for v in order:
        if not (isinstance(v, int) and 0 <= v < g.n):
            raise InputError(f"ordering entry {v!r} out of range")
        if v in seen:
            raise InputError(f"vertex {v} repeated in ordering")
        seen.add(v)
    if full and len(seen) != g.n:
        raise InputError(f"ordering covers {len(seen)} of {g.n} vertices")


def first_fit_colors(g: Graph, order: Sequence[int]) -> dict[int, int]:
    """0-based first-fit color for every vertex of ``order``.

    Vertices not in ``order`` are treated as absent, so a partial ordering
    colors the induced subgraph on its vertices.
    """
    colors: dict[int, int] = {}
    free = [None] * len(g.blocks)
    for v in order:
        taken = {colors[u] for u in g.explicit_adj[v] if u in colors}
        b = g.block_ids[v]
        if b == -1:
            c = 0
            while c in taken:
                c += 1
        else:
            nf = free[b]
            if nf is None:
                nf = free[b] = _NextFree()
            c = nf.find(0)
            while c in taken:
                c = nf.find(c + 1)
            nf.use(c)
        colors[v] = c
    return colors


def _classes_from_colors(colors: dict[int, int]) -> ColorClasses:
    if not colors:
        return ColorClasses(())
    buckets: list[list[int]] = [[] for _ in range(max(colors.values()) + 1)]
    for v, c in colors.items():
        buckets[c].append(v)
    return ColorClasses.of(buckets)


def first_fit(g: Graph, order: Sequence[int]) -> ColorClasses:
    """Run first-fit along a permutation of ``V(g)`` and return its color classes."""
    _check_ordering(g, order, full=True)
    return _classes_from_colors(first_fit_colors(g, order))


def first_fit_partial(g: Graph, order: Sequence[int]) -> ColorClasses:
    """First-fit along an ordering of a vertex subset (colors the induced subgraph)."""
    _check_ordering(g, order, full=False)
    return _classes_from_colors(first_fit_colors(g, order))


# --------------------------------------------------------------------------
# validation


class Violation(NamedTuple):
    """First failed Grundy condition: ``kind`` is ``"edge"`` or ``"missing"``."""

    kind: str
    vertex: int
    other: int  # the adjacent vertex for "edge", the class index for "missing"

    def describe(self, offset: int = 0) -> str:
        if self.kind == "edge":
            return (
                f"vertices {self.vertex + offset} and {self.other + offset} are adjacent "
                f"but share a class"
            )
        return f"vertex {self.vertex + offset} lacks neighbor in class {self.other + offset}"


def _check_structure(g: Graph, cc: ColorClasses) -> None:
    for cls in cc:
        for v in cls:
            if not (isinstance(v, int) and 0 <= v < g.n):
                raise StructuralError(f"vertex {v!r} out of range 0..{g.n - 1}")


def _in_sorted(seq, x: int, hi: int) -> bool:
    i = bisect_left(seq, x, 0, hi)
    return i < hi and seq[i] == x


def find_violation(g: Graph, cc: ColorClasses) -> Violation | None:
    """First violated Grundy condition, scanning classes in order, or None."""
    _check_structure(g, cc)
    color_of = cc.color_of
    touch: dict[int, list[int]] = {}
    touch_first: dict[int, dict[int, int]] = {}
    for i, cls in enumerate(cc):
        for v in cls:
            b = g.block_ids[v]
            if b != -1:
                lst = touch.setdefault(b, [])
                if lst and lst[-1] == i:
                    other = touch_first[b][i]
                    return Violation("edge", min(v, other), max(v, other))
                lst.append(i)
                touch_first.setdefault(b, {})[i] = v
    for i, cls in enumerate(cc):
        for v in cls:
            for u in g.explicit_adj[v]:
                if color_of.get(u) == i:
                    return Violation("edge", min(u, v), max(u, v))
    for i, cls in enumerate(cc):
        for v in cls:
            b = g.block_ids[v]
            blk = touch.get(b, ()) if b != -1 else ()
            seen = bisect_left(blk, i) if blk else 0
            if seen == i:
                continue
            extra = {
                c
                for u in g.explicit_adj[v]
                if (c := color_of.get(u, i)) < i and not _in_sorted(blk, c, seen)
            }
            if seen + len(extra) < i:
                covered = set(blk[:seen]) | extra
                missing = next(j for j in range(i) if j not in covered)
                return Violation("missing", v, missing)
    return None


def validate_grundy_coloring(g: Graph, cc: ColorClasses) -> bool:
    """True iff classes are independent and every vertex sees all earlier classes."""
    return find_violation(g, cc) is None


# --------------------------------------------------------------------------
# orderings and normal forms


def sorted_permutation(cc: ColorClasses, graph: Graph | None = None) -> Ordering:
    """Concatenate the classes, ascending inside each class.

    When ``graph`` is given, the coloring is validated and (under ``__debug__``)
    first-fit on the result is checked to reproduce ``cc``.
    """
    order = tuple(v for cls in cc for v in cls)
    if graph is not None:
        violation = find_violation(graph, cc)
        if violation is not None:
            raise StructuralError(f"not a Grundy coloring: {violation.describe()}")
        if __debug__:
            again = _classes_from_colors(first_fit_colors(graph, order))
            assert again == cc, "sorted permutation failed to reproduce its classes"
    return order


def classes_to_ordering(cc: ColorClasses, suffix: Sequence[int] = ()) -> Ordering:
    """``sorted_permutation(cc)`` followed by ``suffix``."""
    used = cc.vertices()
    clash = used.intersection(suffix)
    if clash:
        raise StructuralError(f"suffix repeats colored vertices {sorted(clash)}")
    if len(set(suffix)) != len(suffix):
        raise StructuralError("suffix contains repeated vertices")
    return sorted_permutation(cc) + tuple(suffix)


def normalize_singletons_last(
    g: Graph, cc: ColorClasses, avoid: Iterable[int] | None = None
) -> ColorClasses:
    """Move singleton classes that precede larger classes to the end.

    A singleton qualifies when it is disjoint from ``avoid`` (every singleton
    qualifies when ``avoid`` is None).  Qualifying singletons are moved one at a
    time, leftmost first, until none precedes a non-qualifying class.
    """
    violation = find_violation(g, cc)
    if violation is not None:
        raise StructuralError(f"not a Grundy coloring: {violation.describe()}")
    blocked = frozenset(avoid) if avoid is not None else frozenset()

    def movable(c: tuple[int, ...]) -> bool:
        return len(c) == 1 and c[0] not in blocked

    classes = list(cc.classes)
    while True:
        last_fixed = max((i for i, c in enumerate(classes) if not movable(c)), default=-1)
        pick = next((i for i in range(last_fixed) if movable(classes[i])), None)
        if pick is None:
            break
        classes.append(classes.pop(pick))
    out = ColorClasses(tuple(classes))
    assert find_violation(g, out) is None
    return out
