"""Exact Grundy number for a general cluster modulator via integer feasibility.

Clique-only classes inserted around a prefix coloring take at most one vertex
per clique; since twins are interchangeable, such a class is described by a
tuple choosing, per clique, nothing or one twin class.  An integer program
counts how often each tuple appears in each gap.

Three monotonicity encodings are available:

``nested`` (default)
    Enforces the condition that makes a decoded plan orderable: supports of
    inserted classes must shrink along the sequence.  A tuple lacking clique
    ``i`` may not precede any class touching ``i``, and two tuples in one gap
    need comparable supports.
``printed``
    The occupancy indicators are only bounded above by gap occupancy, and
    non-decreasing across gaps, together with the complementary indicator
    rows.  Setting every indicator to zero always satisfies these rows.
``reversed``
    Indicators equal gap occupancy exactly and are non-increasing across
    gaps: a clique used in a gap is used in every earlier gap.

The last two are kept for comparison; plans they admit are validated and
rejected when they cannot be realized.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from functools import cached_property

from .coloring import ColorClasses, GrundySolution, find_violation, sorted_permutation
from .errors import InputError, SolverInconsistencyError
from .graph import ModulatorInstance
from .ilp import DEFAULT_BUDGET, IlpInstance, solve_feasibility
from .prefixes import ColoringCache, PrefixColoring
from .prefixes import enumerate_prefixes as _enumerate
from .search import first_success

MODES = ("nested", "printed", "reversed")


@dataclass(frozen=True)
class TupleClass:
    """Per clique, ``None`` or the index of a twin class inside that clique."""

    per_clique: tuple[int | None, ...]

    def __post_init__(self):
        if all(e is None for e in self.per_clique):
            raise InputError("a tuple class must touch at least one clique")

    @cached_property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.per_clique) if e is not None)

    @property
    def sort_key(self) -> tuple:
        return (-len(self.support), tuple(-1 if e is None else e for e in self.per_clique))

    def entries(self) -> list[tuple[int, int]]:
        return [(i, e) for i, e in enumerate(self.per_clique) if e is not None]


def enumerate_prefixes_k(inst: ModulatorInstance, cache: ColoringCache | None = None):
    """Candidate prefixes with at most ``r`` vertices of ``Q`` per clique."""
    return _enumerate(inst, cache=cache)


def remaining_by_class(inst: ModulatorInstance, q) -> dict[tuple[int, int], tuple[int, ...]]:
    """Unused members of each twin class, ascending, for classes with any left."""
    taken = set(q)
    out = {}
    for i, classes in enumerate(inst.equivalence.classes):
        for e, cls in enumerate(classes):
            rest = tuple(v for v in cls if v not in taken)
            if rest:
                out[(i, e)] = rest
    return out


def tuple_placement_feasible(
    inst: ModulatorInstance, prefix: PrefixColoring, t: TupleClass, j: int
) -> bool:
    """Can a class shaped like ``t`` sit right after prefix class ``j``?

    Evaluated on the lowest unused member of each referenced twin class; the
    answer is the same for any other member.
    """
    g = inst.graph
    classes = prefix.classes.classes
    if not 0 <= j <= len(classes):
        raise InputError(f"gap {j} outside 0..{len(classes)}")
    taken = set(prefix.q)
    reps = []
    for i, e in t.entries():
        members = [v for v in inst.equivalence.classes[i][e] if v not in taken]
        if not members:
            raise InputError(f"twin class {(i, e)} has no unused vertex")
        reps.append(members[0])
    for cls in classes[:j]:
        if not all(any(g.has_edge(x, y) for y in cls) for x in reps):
            return False
    return all(any(g.has_edge(y, x) for x in reps) for cls in classes[j:] for y in cls)


@dataclass
class ExtensionIlp:
    ilp: IlpInstance
    beta: int
    tuples: list[TupleClass]
    demand: dict[tuple[int, int], int]
    x_index: dict[tuple[int, int], int] = field(default_factory=dict)  # (tuple, gap) -> var
    y_index: dict[tuple[int, int], int] = field(default_factory=dict)  # (clique, gap) -> var
    y2_index: dict[tuple[int, int], int] = field(default_factory=dict)
    mode: str = "nested"


def _feasible_gaps(inst, prefix, rest, tuples):
    """Per tuple, the gaps passing the placement check, via per-class profiles."""
    g = inst.graph
    classes = prefix.classes.classes
    gamma = len(classes)
    profile = {}
    for key, members in rest.items():
        x = members[0]
        reach = 0
        while reach < gamma and any(g.has_edge(x, y) for y in classes[reach]):
            reach += 1
        misses = tuple(
            sum(1 << t for t, y in enumerate(cls) if not g.has_edge(x, y)) for cls in classes
        )
        profile[key] = (reach, misses)
    out = []
    for t in tuples:
        entries = t.entries()
        hi = min(profile[key][0] for key in entries)
        lo = gamma
        while lo > 0:
            common = (1 << len(classes[lo - 1])) - 1
            for key in entries:
                common &= profile[key][1][lo - 1]
            if common:
                break
            lo -= 1
        out.append(range(lo, hi + 1))
    return out


def _support_chain(inst, demand, beta) -> dict[frozenset[int], int]:
    """Support of each inserted class under nesting, with multiplicities.

    Supports shrink along the sequence and clique ``i`` is touched by exactly
    its remaining count of classes, so the t-th class (1-based) touches
    precisely the cliques with at least ``t`` vertices left.
    """
    remaining = [0] * inst.k
    for (i, _), d in demand.items():
        remaining[i] += d
    chain: dict[frozenset[int], int] = {}
    for t in range(1, beta + 1):
        support = frozenset(i for i, left in enumerate(remaining) if left >= t)
        chain[support] = chain.get(support, 0) + 1
    return chain


def build_extension_ilp(
    inst: ModulatorInstance, prefix: PrefixColoring, mode: str = "nested"
) -> ExtensionIlp:
    if mode not in MODES:
        raise InputError(f"unknown monotonicity mode {mode!r}")
    k, gamma = inst.k, prefix.gamma
    rest = remaining_by_class(inst, prefix.q)
    demand = {key: len(v) for key, v in rest.items()}
    beta = max((sum(d for (i, _), d in demand.items() if i == c) for c in range(k)), default=0)
    options = [
        [None] + [e for e in range(len(inst.equivalence.classes[i])) if (i, e) in demand]
        for i in range(k)
    ]
    tuples = sorted(
        (TupleClass(combo) for combo in itertools.product(*options) if any(e is not None for e in combo)),
        key=lambda t: t.sort_key,
    )
    chain = _support_chain(inst, demand, beta) if mode == "nested" else None
    if chain is not None:
        tuples = [t for t in tuples if t.support in chain]
    ilp = IlpInstance()
    ext = ExtensionIlp(ilp, beta, tuples, demand, mode=mode)
    for l, (t, gaps) in enumerate(zip(tuples, _feasible_gaps(inst, prefix, rest, tuples))):
        cap = min([beta] + [demand[key] for key in t.entries()])
        for j in gaps:
            ext.x_index[(l, j)] = ilp.add_variable(f"X[{l},{j}]", 0, cap)
    for i in range(k):
        for j in range(gamma + 1):
            ext.y_index[(i, j)] = ilp.add_variable(f"Y[{i},{j}]", 0, 1)
            ext.y2_index[(i, j)] = ilp.add_variable(f"Y'[{i},{j}]", 0, 1)

    ilp.add_constraint({v: 1 for v in ext.x_index.values()}, "==", beta)
    if chain is not None:
        for support, count in chain.items():
            terms = {v: 1 for (l, _), v in ext.x_index.items() if tuples[l].support == support}
            ilp.add_constraint(terms, "==", count)
    for key, d in demand.items():
        i, e = key
        terms = {v: 1 for (l, j), v in ext.x_index.items() if tuples[l].per_clique[i] == e}
        ilp.add_constraint(terms, "==", d)
    for i in range(k):
        for j in range(gamma + 1):
            occ = {v: 1 for (l, jj), v in ext.x_index.items() if jj == j and i in tuples[l].support}
            y, y2 = ext.y_index[(i, j)], ext.y2_index[(i, j)]
            ilp.add_constraint({**{v: -1 for v in occ}, y: 1}, "<=", 0)
            ilp.add_constraint({**occ, y2: 1}, ">=", 1)
            ilp.add_constraint({y: 1, y2: 1}, "==", 1)
            if mode != "printed":
                ilp.add_constraint({**occ, y: -beta}, "<=", 0)

    if mode == "nested":
        _add_nesting(ext, k, gamma)
    for i in range(k):
        for j in range(gamma):
            y0, y1 = ext.y_index[(i, j)], ext.y_index[(i, j + 1)]
            if mode == "printed":
                z0, z1 = ext.y2_index[(i, j)], ext.y2_index[(i, j + 1)]
                ilp.add_constraint({y1: 1, y0: -1}, ">=", 0)
                ilp.add_constraint({z0: 1, z1: -1}, "<=", 0)
            elif mode == "reversed":
                ilp.add_constraint({y1: 1, y0: -1}, "<=", 0)
    return ext


def _add_nesting(ext: ExtensionIlp, k: int, gamma: int) -> None:
    ilp, beta, tuples = ext.ilp, ext.beta, ext.tuples
    later = {}
    for i in range(k):
        for j in range(gamma):
            z = later[(i, j)] = ilp.add_variable(f"Z[{i},{j}]", 0, 1)
            for jj in range(j + 1, gamma + 1):
                ilp.add_constraint({z: 1, ext.y_index[(i, jj)]: -1}, ">=", 0)
    for (l, j), x in ext.x_index.items():
        if j == gamma:
            continue
        for i in range(k):
            if i not in tuples[l].support:
                ilp.add_constraint({x: 1, later[(i, j)]: beta}, "<=", beta)
    supports = sorted({t.support for t in tuples}, key=lambda s: (-len(s), sorted(s)))
    w = {}
    for j in range(gamma + 1):
        for a in supports:
            w[(a, j)] = ilp.add_variable(f"W[{sorted(a)},{j}]", 0, 1)
    for (l, j), x in ext.x_index.items():
        ilp.add_constraint({x: 1, w[(tuples[l].support, j)]: -beta}, "<=", 0)
    for a, b in itertools.combinations(supports, 2):
        if not (a <= b or b <= a):
            for j in range(gamma + 1):
                ilp.add_constraint({w[(a, j)]: 1, w[(b, j)]: 1}, "<=", 1)


@dataclass(frozen=True)
class TupleExtensionPlan:
    prefix: PrefixColoring
    gaps: tuple[tuple[TupleClass, ...], ...]  # per gap, in insertion order

    @property
    def beta(self) -> int:
        return sum(len(g) for g in self.gaps)

    def assemble(self, inst: ModulatorInstance) -> ColorClasses:
        pools = {key: list(v) for key, v in remaining_by_class(inst, self.prefix.q).items()}
        out = []
        for j, gap in enumerate(self.gaps):
            if j:
                out.append(self.prefix.classes[j - 1])
            for t in gap:
                out.append([pools[key].pop(0) for key in t.entries()])
        return ColorClasses.of(out)


def check_extendable_k(
    inst: ModulatorInstance,
    prefix: PrefixColoring,
    mode: str = "nested",
    budget: int = DEFAULT_BUDGET,
    stats: dict | None = None,
) -> TupleExtensionPlan | None:
    """Decoded and validated extension plan, or None when the prefix does not extend."""
    stats = stats if stats is not None else {}
    ext = build_extension_ilp(inst, prefix, mode)
    values = solve_feasibility(ext.ilp, budget, stats)
    stats["ilp_calls"] = stats.get("ilp_calls", 0) + 1
    if values is None:
        return None
    gaps: list[list[TupleClass]] = [[] for _ in range(prefix.gamma + 1)]
    for (l, j), var in ext.x_index.items():
        gaps[j].extend([ext.tuples[l]] * values[var])
    plan = TupleExtensionPlan(
        prefix, tuple(tuple(sorted(g, key=lambda t: t.sort_key)) for g in gaps)
    )
    witness = plan.assemble(inst)
    violation = find_violation(inst.graph, witness)
    if violation is None and witness.vertices() == frozenset(range(inst.graph.n)):
        return plan
    if mode == "nested":
        raise SolverInconsistencyError(
            "integer program accepted a plan that does not decode to a Grundy coloring"
        )
    stats["decode_rejections"] = stats.get("decode_rejections", 0) + 1
    return None


def _candidates(inst: ModulatorInstance) -> list[tuple[int, PrefixColoring]]:
    out = []
    for prefix in enumerate_prefixes_k(inst):
        taken = set(prefix.q)
        beta = max((sum(v not in taken for v in c) for c in inst.decomposition.cliques), default=0)
        out.append((prefix.gamma + beta, prefix))
    out.sort(key=lambda item: (-item[0], item[1].q, item[1].canonical))
    return out


class _Checker:
    def __init__(self, inst, cands, mode, budget):
        self.inst, self.cands, self.mode, self.budget = inst, cands, mode, budget

    def __call__(self, idx: int):
        part: dict = {}
        return check_extendable_k(self.inst, self.cands[idx][1], self.mode, self.budget, stats=part), part


def solve_k_cluster(
    inst: ModulatorInstance,
    mode: str = "nested",
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> GrundySolution:
    """Grundy number and certificate for any cluster modulator instance."""
    start = time.perf_counter()
    cands = _candidates(inst)
    stats: dict = {"prefixes": len(cands), "mode": mode}
    found = first_success(_Checker(inst, cands, mode, budget), len(cands), workers, stats)
    if found is None:
        raise SolverInconsistencyError("no candidate prefix was extendable")
    idx, plan = found
    witness = plan.assemble(inst)
    if witness.gamma != cands[idx][0]:
        raise SolverInconsistencyError("assembled class count differs from gamma' + beta")
    stats["candidates_examined"] = idx + 1
    stats["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return GrundySolution(witness.gamma, witness, sorted_permutation(witness, inst.graph), "k-cluster-ilp", stats)
