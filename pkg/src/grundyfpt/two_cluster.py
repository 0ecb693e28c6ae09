"""Exact Grundy number when ``G - R`` is a disjoint union of two cliques.

For a prefix coloring of ``G[Q + R]`` the remaining clique vertices form
``beta`` new classes, each holding one vertex of the larger side ``S`` and at
most one vertex of ``S'``.  Whether those classes can be slotted into the
gaps around the prefix is a bipartite matching question, answered with a unit
capacity flow network.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .coloring import ColorClasses, GrundySolution, find_violation, sorted_permutation
from .errors import ContractError, SolverInconsistencyError, WrongSolverError
from .graph import Graph, ModulatorInstance
from .maxflow import FlowNetwork, max_flow
from .prefixes import ColoringCache, PrefixColoring
from .prefixes import enumerate_prefixes as _enumerate
from .search import first_success

Pair = tuple[int, int | None]


def enumerate_prefixes(inst: ModulatorInstance, cache: ColoringCache | None = None):
    """Candidate prefixes with at most ``r`` vertices of ``Q`` per clique."""
    if inst.k != 2:
        raise WrongSolverError(f"two-cluster solver needs exactly 2 cliques, found {inst.k}")
    return _enumerate(inst, cache=cache)


def _sees_all(g: Graph, x: int, classes) -> bool:
    return all(any(g.has_edge(x, y) for y in cls) for cls in classes)


def placement_feasible(
    g: Graph, prefix: PrefixColoring, u: int, partner: int | None, lam: int
) -> bool:
    """Can the class ``{u, partner}`` sit right after prefix class ``lam``?

    ``lam`` counts prefix classes before the slot, so ``0`` is the front.  A
    ``None`` partner stands for the singleton ``{u}``, which only the last gap
    may hold.
    """
    gamma = prefix.gamma
    if not 0 <= lam <= gamma:
        raise ContractError(f"gap {lam} outside 0..{gamma}")
    if partner is None and lam != gamma:
        raise ContractError("a singleton may only be placed in the last gap")
    members = [u] if partner is None else [u, partner]
    before = prefix.classes.classes[:lam]
    if not all(_sees_all(g, x, before) for x in members):
        return False
    return all(
        any(g.has_edge(y, x) for x in members)
        for cls in prefix.classes.classes[lam:]
        for y in cls
    )


class _Placements:
    """Class-level evaluation of the placement predicate.

    Each clique vertex is summarized by how many leading prefix classes it
    sees and, per prefix class, the members it misses.  Both only depend on
    the vertex's twin class, so results are keyed by class.
    """

    def __init__(self, g: Graph, prefix: PrefixColoring, class_of: dict[int, tuple[int, int]]):
        self.g = g
        self.classes = prefix.classes.classes
        self.gamma = prefix.gamma
        self.class_of = class_of
        self._profile: dict[tuple[int, int], tuple[int, tuple[int, ...]]] = {}
        self._window: dict[tuple, tuple[int, int]] = {}

    def profile(self, x: int) -> tuple[int, tuple[int, ...]]:
        key = self.class_of[x]
        hit = self._profile.get(key)
        if hit is None:
            reach = 0
            misses = []
            for cls in self.classes:
                miss = 0
                for t, y in enumerate(cls):
                    if not self.g.has_edge(x, y):
                        miss |= 1 << t
                misses.append(miss)
            for cls, miss in zip(self.classes, misses):
                if miss == (1 << len(cls)) - 1:
                    break
                reach += 1
            hit = self._profile[key] = (reach, tuple(misses))
        return hit

    def window(self, u: int, partner: int | None) -> tuple[int, int]:
        """Inclusive gap range ``(lo, hi)`` where the class may go (empty if lo > hi)."""
        key = (self.class_of[u], None if partner is None else self.class_of[partner])
        hit = self._window.get(key)
        if hit is None:
            reach_u, miss_u = self.profile(u)
            if partner is None:
                hit = (self.gamma, self.gamma) if reach_u >= self.gamma else (1, 0)
            else:
                reach_w, miss_w = self.profile(partner)
                need = self.gamma
                while need > 0 and not (miss_u[need - 1] & miss_w[need - 1]):
                    need -= 1
                hit = (need, min(reach_u, reach_w))
            self._window[key] = hit
        return hit


def _orient(inst: ModulatorInstance, q: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    taken = set(q)
    a, b = (tuple(v for v in c if v not in taken) for c in inst.decomposition.cliques)
    return (a, b) if len(a) >= len(b) else (b, a)


@dataclass
class ExtensionNetwork:
    """Unit-capacity network: source, partners (``S'`` vertices then dummies),
    one node per (``S`` vertex, gap), one auxiliary node per ``S`` vertex, sink.
    """

    network: FlowNetwork
    gamma: int
    big: tuple[int, ...]
    partners: tuple[int | None, ...]
    pair_arcs: list[tuple[int, int, int, int]] = field(default_factory=list)  # (arc, j, i, lam)

    @property
    def s(self) -> int:
        return len(self.big)

    @property
    def s_prime(self) -> int:
        return sum(p is not None for p in self.partners)

    def partner_node(self, j: int) -> int:
        return 2 + j

    def pair_node(self, i: int, lam: int) -> int:
        return 2 + self.s + i * (self.gamma + 1) + lam

    def aux_node(self, i: int) -> int:
        return 2 + self.s + self.s * (self.gamma + 1) + i


def build_extension_network(
    inst: ModulatorInstance, prefix: PrefixColoring, placements: _Placements | None = None
) -> ExtensionNetwork:
    g = inst.graph
    placements = placements or _Placements(g, prefix, inst.equivalence.class_of)
    big, small = _orient(inst, prefix.q)
    s, gamma = len(big), prefix.gamma
    partners = small + (None,) * (s - len(small))
    net = FlowNetwork(s * (gamma + 3) + 2, 0, 1)
    ext = ExtensionNetwork(net, gamma, big, partners)
    for j in range(s):
        net.add_arc(0, ext.partner_node(j))
    for j, w in enumerate(partners):
        for i, u in enumerate(big):
            lo, hi = placements.window(u, w)
            for lam in range(lo, hi + 1):
                arc = net.add_arc(ext.partner_node(j), ext.pair_node(i, lam))
                ext.pair_arcs.append((arc, j, i, lam))
    for i in range(s):
        for lam in range(gamma + 1):
            net.add_arc(ext.pair_node(i, lam), ext.aux_node(i))
    for i in range(s):
        net.add_arc(ext.aux_node(i), 1)
    return ext


def _class_level_flow(inst: ModulatorInstance, prefix: PrefixColoring, placements: _Placements) -> int:
    """Max matching size between partners and ``S`` vertices, computed on twin classes.

    Compatibility is class-invariant, so this equals the unit network's flow
    while using far fewer nodes.
    """
    big, small = _orient(inst, prefix.q)
    s = len(big)
    class_of = inst.equivalence.class_of

    def group(vertices):
        out: dict = {}
        for v in vertices:
            out.setdefault(class_of[v], []).append(v)
        return list(out.values())

    left = group(small)
    if s > len(small):
        left.append([None] * (s - len(small)))
    right = group(big)
    net = FlowNetwork(2 + len(left) + len(right), 0, 1)
    for a, members in enumerate(left):
        net.add_arc(0, 2 + a, len(members))
    for b, members in enumerate(right):
        net.add_arc(2 + len(left) + b, 1, len(members))
    for a, lm in enumerate(left):
        for b, rm in enumerate(right):
            lo, hi = placements.window(rm[0], lm[0])
            if lo <= hi:
                net.add_arc(2 + a, 2 + len(left) + b, s)
    return max_flow(net)[0]


@dataclass(frozen=True)
class ExtensionPlan:
    prefix: PrefixColoring
    gaps: tuple[tuple[Pair, ...], ...]  # per gap: (S vertex, partner or None)

    @property
    def beta(self) -> int:
        return sum(len(gap) for gap in self.gaps)

    def assemble(self) -> ColorClasses:
        out = []
        for lam, gap in enumerate(self.gaps):
            if lam:
                out.append(self.prefix.classes[lam - 1])
            pairs = sorted(p for p in gap if p[1] is not None)
            singles = sorted(p for p in gap if p[1] is None)
            out.extend((u,) if w is None else (u, w) for u, w in pairs + singles)
        return ColorClasses.of(out)


def check_extendable_2(
    inst: ModulatorInstance, prefix: PrefixColoring, stats: dict | None = None
) -> ExtensionPlan | None:
    """Extension plan if the prefix extends by ``beta`` clique-only classes, else None."""
    stats = stats if stats is not None else {}
    placements = _Placements(inst.graph, prefix, inst.equivalence.class_of)
    big, _ = _orient(inst, prefix.q)
    s = len(big)
    if s and _class_level_flow(inst, prefix, placements) < s:
        stats["prefilter_rejections"] = stats.get("prefilter_rejections", 0) + 1
        return None
    ext = build_extension_network(inst, prefix, placements)
    value, flows = max_flow(ext.network)
    stats["flow_calls"] = stats.get("flow_calls", 0) + 1
    if value != s:
        return None
    gaps: list[list[Pair]] = [[] for _ in range(prefix.gamma + 1)]
    for arc, j, i, lam in ext.pair_arcs:
        if flows[arc]:
            gaps[lam].append((big[i], ext.partners[j]))
    return ExtensionPlan(prefix, tuple(tuple(g) for g in gaps))


def _candidates(inst: ModulatorInstance) -> list[tuple[int, PrefixColoring]]:
    out = []
    for prefix in enumerate_prefixes(inst):
        big, _ = _orient(inst, prefix.q)
        out.append((prefix.gamma + len(big), prefix))
    out.sort(key=lambda item: (-item[0], item[1].q, item[1].canonical))
    return out


class _Checker:
    def __init__(self, inst, cands):
        self.inst = inst
        self.cands = cands

    def __call__(self, idx: int):
        part: dict = {}
        return check_extendable_2(self.inst, self.cands[idx][1], stats=part), part


def solve_two_cluster(inst: ModulatorInstance, workers: int = 1) -> GrundySolution:
    """Grundy number and certificate for a two-clique modulator instance."""
    start = time.perf_counter()
    cands = _candidates(inst)
    stats: dict = {"prefixes": len(cands)}
    found = first_success(_Checker(inst, cands), len(cands), workers, stats)
    if found is None:
        raise SolverInconsistencyError("no candidate prefix was extendable")
    idx, plan = found
    witness = plan.assemble()
    violation = find_violation(inst.graph, witness)
    if violation is not None or witness.vertices() != frozenset(range(inst.graph.n)):
        raise SolverInconsistencyError(
            f"assembled coloring is invalid: {violation.describe() if violation else 'not a partition'}"
        )
    if witness.gamma != cands[idx][0]:
        raise SolverInconsistencyError("assembled class count differs from gamma' + beta")
    stats["candidates_examined"] = idx + 1
    stats["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return GrundySolution(witness.gamma, witness, sorted_permutation(witness, inst.graph), "two-cluster", stats)
