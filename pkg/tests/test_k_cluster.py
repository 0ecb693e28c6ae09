import random

import pytest
from hypothesis import given, settings

from grundyfpt.clique import solve_clique
from grundyfpt.coloring import ColorClasses, first_fit, validate_grundy_coloring
from grundyfpt.errors import InputError, SolverInconsistencyError
from grundyfpt import search
from grundyfpt.graph import Graph, ModulatorInstance
from grundyfpt.ilp import solve_feasibility
from grundyfpt.k_cluster import (
    MODES,
    TupleClass,
    build_extension_ilp,
    check_extendable_k,
    enumerate_prefixes_k,
    solve_k_cluster,
    tuple_placement_feasible,
)
from grundyfpt.oracle import grundy_oracle
from grundyfpt.prefixes import PrefixColoring
from grundyfpt.two_cluster import check_extendable_2
from grundyfpt.two_cluster import enumerate_prefixes as enumerate_prefixes_2
from support import cluster_instance, cluster_instances


def clique_union(*sizes, extra=0, universal=False):
    edges, base = [], 0
    for s in sizes:
        edges += [(base + a, base + b) for a in range(s) for b in range(a + 1, s)]
        base += s
    n = base + extra
    if universal:
        edges += [(v, n - 1) for v in range(n - 1)]
    return Graph(n, edges)


K2_K3 = clique_union(2, 3)
EMPTY = PrefixColoring((), ColorClasses.of([]), ())


def instance(g, r):
    return ModulatorInstance.build(g, r)


def prefix_of(*classes):
    cc = ColorClasses.of(classes)
    return PrefixColoring((), cc, tuple(v for c in cc for v in c))


def test_solve_examples():
    assert solve_k_cluster(instance(clique_union(2, 3, 4), set())).grundy_number == 4
    sol = solve_k_cluster(instance(clique_union(2, 3, extra=1, universal=True), {5}))
    assert sol.grundy_number == 4 and sol.algorithm == "k-cluster-ilp"
    assert solve_k_cluster(instance(Graph(0), set())).grundy_number == 0
    assert solve_k_cluster(instance(clique_union(3), {0, 1, 2})).grundy_number == 3


def test_ilp_example_k2_k3():
    inst = instance(K2_K3, set())
    ext = build_extension_ilp(inst, EMPTY)
    assert ext.beta == 3 and ext.demand == {(0, 0): 2, (1, 0): 3}
    values = solve_feasibility(ext.ilp)
    counts = {ext.tuples[l].per_clique: values[v] for (l, _), v in ext.x_index.items() if values[v]}
    assert counts == {(0, 0): 2, (None, 0): 1}


def test_ilp_with_nothing_left():
    g = clique_union(1, 1, extra=1, universal=True)
    inst = instance(g, {2})
    pre = PrefixColoring((0, 1), ColorClasses.of([[0, 1], [2]]), (0, 1, 2))
    ext = build_extension_ilp(inst, pre)
    assert ext.beta == 0 and not ext.x_index
    assert check_extendable_k(inst, pre).beta == 0


def test_empty_prefix_extends_by_largest_clique():
    for sizes in [(1,), (3, 1), (2, 2, 4), (1, 1, 1)]:
        inst = instance(clique_union(*sizes), set())
        plan = check_extendable_k(inst, EMPTY)
        assert plan is not None and plan.beta == max(sizes)


def test_tuple_placement_examples():
    inst = instance(K2_K3, set())
    assert tuple_placement_feasible(inst, EMPTY, TupleClass((0, 0)), 0)
    g = clique_union(2, 3, extra=1, universal=True)
    u_inst = instance(g, {5})
    assert tuple_placement_feasible(u_inst, prefix_of([5]), TupleClass((0, 0)), 0)
    lonely = instance(Graph(3, [(1, 2)]), {2})  # clique vertex 0 misses the modulator
    assert not tuple_placement_feasible(lonely, prefix_of([2]), TupleClass((0, None)), 1)
    with pytest.raises(InputError):
        tuple_placement_feasible(inst, EMPTY, TupleClass((0, 0)), 1)
    with pytest.raises(InputError):
        TupleClass((None, None))


def test_unknown_mode():
    with pytest.raises(InputError):
        build_extension_ilp(instance(K2_K3, set()), EMPTY, mode="sideways")


@settings(max_examples=60, deadline=None)
@given(cluster_instances(k_max=3, r_max=2))
def test_matches_oracle_with_structural_invariants(case):
    g, r = case
    inst = instance(g, r)
    sol = solve_k_cluster(inst)
    assert sol.grundy_number == grundy_oracle(g).grundy_number
    assert validate_grundy_coloring(g, sol.witness)
    assert first_fit(g, sol.ordering) == sol.witness
    assert sol.witness.vertices() == frozenset(range(g.n))
    clique_of = inst.decomposition.clique_of
    supports = [{clique_of[v] for v in c} for c in sol.witness if inst.modulator.isdisjoint(c)]
    assert all(later <= earlier for earlier, later in zip(supports, supports[1:]))


@settings(max_examples=40, deadline=None)
@given(cluster_instances(k_max=3, r_max=2))
def test_plans_contain_prefix_and_conserve_classes(case):
    g, r = case
    inst = instance(g, r)
    for prefix in list(enumerate_prefixes_k(inst))[:25]:
        plan = check_extendable_k(inst, prefix)
        if plan is None:
            continue
        witness = plan.assemble(inst)
        it = iter(witness.classes)
        assert all(any(c == w for w in it) for c in prefix.classes.classes)
        used = {}
        for gap in plan.gaps:
            for t in gap:
                for key in t.entries():
                    used[key] = used.get(key, 0) + 1
        for i, classes in enumerate(inst.equivalence.classes):
            for e, members in enumerate(classes):
                in_q = sum(v in prefix.q for v in members)
                assert in_q + used.get((i, e), 0) == len(members)


@settings(max_examples=40, deadline=None)
@given(cluster_instances(k_max=3, r_max=2))
def test_variables_only_for_feasible_placements(case):
    g, r = case
    inst = instance(g, r)
    for prefix in list(enumerate_prefixes_k(inst))[:10]:
        ext = build_extension_ilp(inst, prefix, mode="printed")
        for l, t in enumerate(ext.tuples):
            for j in range(prefix.gamma + 1):
                assert ((l, j) in ext.x_index) == tuple_placement_feasible(inst, prefix, t, j)


@settings(max_examples=40, deadline=None)
@given(cluster_instances(k_min=1, k_max=1, r_max=2, n_max=8))
def test_agrees_with_clique_solver(case):
    g, r = case
    inst = instance(g, r)
    assert solve_k_cluster(inst).grundy_number == solve_clique(inst).grundy_number


@settings(max_examples=40, deadline=None)
@given(cluster_instances(k_min=2, k_max=2, r_max=2))
def test_agrees_with_flow_check_per_prefix(case):
    g, r = case
    inst = instance(g, r)
    for prefix in enumerate_prefixes_2(inst):
        assert (check_extendable_k(inst, prefix) is None) == (check_extendable_2(inst, prefix) is None)


def test_alternative_modes_never_overshoot():
    rng = random.Random(17)
    for _ in range(40):
        k = rng.randint(1, 3)
        sizes = [rng.randint(1, 3) for _ in range(k)]
        g, r = cluster_instance(rng, sizes, rng.randint(0, min(2, 9 - sum(sizes))))
        inst = instance(g, r)
        truth = grundy_oracle(g).grundy_number
        for mode in MODES:
            try:
                sol = solve_k_cluster(inst, mode=mode)
            except SolverInconsistencyError:
                assert mode != "nested"
                continue
            assert validate_grundy_coloring(g, sol.witness)
            assert sol.grundy_number <= truth
            if mode == "nested":
                assert sol.grundy_number == truth


def test_worker_count_does_not_change_output(monkeypatch):
    monkeypatch.setattr(search, "MIN_PARALLEL", 0)
    g, r = cluster_instance(random.Random(4), [3, 3, 2], 2, p=0.5)
    inst = instance(g, r)
    one = solve_k_cluster(inst, workers=1)
    many = solve_k_cluster(inst, workers=3)
    assert one.to_dict(timing=False) == many.to_dict(timing=False)
