"""Integral maximum flow on small directed networks."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import kernels
from .errors import InputError


@dataclass
class FlowNetwork:
    node_count: int
    source: int
    sink: int
    arcs: list[tuple[int, int, int]] = field(default_factory=list)

    def add_arc(self, tail: int, head: int, capacity: int = 1) -> int:
        """Append an arc and return its index."""
        self.arcs.append((tail, head, capacity))
        return len(self.arcs) - 1

    def validate(self) -> None:
        if self.source == self.sink:
            raise InputError("source and sink must differ")
        for v in (self.source, self.sink):
            if not 0 <= v < self.node_count:
                raise InputError(f"terminal {v} out of range")
        for i, (a, b, c) in enumerate(self.arcs):
            if not (0 <= a < self.node_count and 0 <= b < self.node_count):
                raise InputError(f"arc {i} has an endpoint out of range")
            if c < 0:
                raise InputError(f"arc {i} has negative capacity")


def max_flow(net: FlowNetwork) -> tuple[int, list[int]]:
    """Maximum flow value and a per-arc integral flow achieving it."""
    net.validate()
    tails = [a for a, _, _ in net.arcs]
    heads = [b for _, b, _ in net.arcs]
    caps = [c for _, _, c in net.arcs]
    return kernels.max_flow(net.node_count, tails, heads, caps, net.source, net.sink)
