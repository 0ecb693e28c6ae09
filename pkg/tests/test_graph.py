import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grundyfpt.errors import GraphParseError, InputError, ModulatorError, SizeGuardError
from grundyfpt.graph import (
    Graph,
    ModulatorInstance,
    compute_equivalence_classes,
    dump_graph,
    dump_modulator,
    find_min_cluster_modulator,
    is_cluster_graph,
    load_graph,
    load_modulator,
    validate_cluster_modulator,
)
from support import cluster_instance, graphs

P4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
C4 = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


def complete(n, offset=0):
    return [(offset + a, offset + b) for a in range(n) for b in range(a + 1, n)]


# -- parsing ---------------------------------------------------------------


def test_load_single_edge():
    g = load_graph("p edge 2 1\ne 1 2\n")
    assert g.n == 2 and g.m == 1 and g.has_edge(0, 1)


def test_load_edgeless():
    g = load_graph("p edge 3 0\n")
    assert g.n == 3 and g.m == 0


def test_load_path_with_comments():
    g = load_graph("c a path\np edge 4 3\ne 1 2\ne 2 3\ne 3 4\n")
    assert list(g.edges()) == [(0, 1), (1, 2), (2, 3)]


@pytest.mark.parametrize(
    "text, line",
    [
        ("p edge x 1\n", 1),
        ("p edge 2 1\ne 1 3\n", 2),
        ("p edge 2 1\ne 1 1\n", 2),
        ("p edge 3 2\ne 1 2\ne 2 1\n", 3),
        ("e 1 2\n", 1),
        ("p edge 3 2\ne 1 2\n", 1),
        ("p edge 3 0\nq\n", 2),
    ],
)
def test_parse_errors_name_line(text, line):
    with pytest.raises(GraphParseError) as info:
        load_graph(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_missing_header():
    with pytest.raises(GraphParseError):
        load_graph("c nothing\n")


@given(graphs(max_n=10))
def test_dump_load_round_trip(g):
    again = load_graph(dump_graph(g, ["x"]))
    assert again.n == g.n and list(again.edges()) == list(g.edges())


def test_modulator_file():
    assert load_modulator("r 2 3\n", 4) == frozenset({1, 2})
    assert load_modulator("", 4) == frozenset()
    assert load_modulator("r\n", 4) == frozenset()
    assert dump_modulator({1, 2}) == "r 2 3\n"
    for bad in ("r 5\n", "x 1\n", "r 1 1\n", "r 1\nr 2\n", "r a\n"):
        with pytest.raises(GraphParseError):
            load_modulator(bad, 4)


# -- graph invariants ------------------------------------------------------


@given(graphs(max_n=10))
def test_adjacency_symmetric_and_edge_count(g):
    total = 0
    for v in range(g.n):
        assert v not in g.neighbors(v)
        for u in g.neighbors(v):
            assert v in g.neighbors(u)
        total += g.degree(v)
    assert total == 2 * g.m


@given(st.integers(0, 2**32 - 1))
def test_block_graph_matches_explicit(seed):
    rng = random.Random(seed)
    sizes = [rng.randint(1, 5) for _ in range(rng.randint(1, 3))]
    g_explicit, R = cluster_instance(rng, sizes, rng.randint(0, 3))
    blocks, base = [], 0
    for s in sizes:
        blocks.append(range(base, base + s))
        base += s
    block_edges = {(a, b) for blk in blocks for a, b in itertools.combinations(blk, 2)}
    g_block = Graph(
        g_explicit.n, [e for e in g_explicit.edges() if e not in block_edges], cliques=blocks
    )
    assert g_block.m == g_explicit.m
    assert list(g_block.edges()) == list(g_explicit.edges())
    for v in range(g_explicit.n):
        assert g_block.neighbors(v) == g_explicit.neighbors(v)
    verts = list(range(g_explicit.n))
    assert g_block.induced_masks(verts) == g_explicit.induced_masks(verts)


def test_constructor_rejects_bad_edges():
    with pytest.raises(InputError):
        Graph(2, [(0, 0)])
    with pytest.raises(InputError):
        Graph(2, [(0, 2)])
    with pytest.raises(InputError):
        Graph(2, [(0, 1), (1, 0)])
    with pytest.raises(InputError):
        Graph(3, [(0, 1)], cliques=[[0, 1]])


# -- cluster structure -----------------------------------------------------


def test_decomposition_of_cluster_graph():
    g = Graph(7, complete(4) + complete(3, 4))
    dec = validate_cluster_modulator(g, set())
    assert dec.cliques == ((0, 1, 2, 3), (4, 5, 6)) and dec.k == 2


def test_p4_middle_modulator():
    dec = validate_cluster_modulator(P4, {1, 2})
    assert dec.cliques == ((0,), (3,))


def test_p4_bad_modulator_names_missing_edge():
    with pytest.raises(ModulatorError) as info:
        validate_cluster_modulator(P4, {3})
    assert info.value.missing_edge == (0, 2)


def test_modulator_out_of_range():
    with pytest.raises(InputError):
        validate_cluster_modulator(P4, {4})


def brute_is_cluster(g, R):
    rest = [v for v in range(g.n) if v not in R]
    # components by union-find
    parent = {v: v for v in rest}

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    for u, v in itertools.combinations(rest, 2):
        if g.has_edge(u, v):
            parent[find(u)] = find(v)
    comps = {}
    for v in rest:
        comps.setdefault(find(v), []).append(v)
    return all(
        sum(g.has_edge(u, v) for u, v in itertools.combinations(c, 2)) == len(c) * (len(c) - 1) // 2
        for c in comps.values()
    )


@settings(max_examples=60)
@given(graphs(max_n=7), st.data())
def test_validator_matches_edge_counting(g, data):
    R = data.draw(st.sets(st.integers(0, max(g.n - 1, 0)), max_size=g.n)) if g.n else set()
    expected = brute_is_cluster(g, R)
    assert is_cluster_graph(g, R) == expected
    if expected:
        validate_cluster_modulator(g, R)
    else:
        with pytest.raises(ModulatorError):
            validate_cluster_modulator(g, R)


def test_equivalence_pendant_example():
    g = Graph(5, complete(4) + [(0, 4)])
    inst = ModulatorInstance.build(g, {4})
    eq = inst.equivalence
    assert eq.classes == (((0,), (1, 2, 3)),)
    assert eq.representatives == frozenset({0, 1})


def test_equivalence_empty_modulator():
    g = Graph(5, complete(5))
    eq = ModulatorInstance.build(g, set()).equivalence
    assert eq.classes == (((0, 1, 2, 3, 4),),)
    assert eq.representatives == frozenset()


def test_equivalence_universal_vertex():
    g = Graph(6, complete(2) + complete(3, 2) + [(v, 5) for v in range(5)])
    eq = ModulatorInstance.build(g, {5}).equivalence
    assert eq.classes == (((0, 1),), ((2, 3, 4),))
    assert eq.representatives == frozenset({0, 2})


@settings(max_examples=80)
@given(st.integers(0, 2**32 - 1))
def test_equivalence_invariants(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 3)
    g, R = cluster_instance(rng, [rng.randint(1, 5) for _ in range(k)], rng.randint(0, 3))
    inst = ModulatorInstance.build(g, R)
    eq = compute_equivalence_classes(g, inst.decomposition, R)
    r = len(R)
    covered = sorted(v for classes in eq.classes for cls in classes for v in cls)
    assert covered == sorted(set(range(g.n)) - R)
    for i, classes in enumerate(eq.classes):
        for j, cls in enumerate(classes):
            assert set(cls) <= set(inst.decomposition.cliques[i])
            for u, v in itertools.combinations(cls, 2):
                assert g.closed_neighborhood(u) == g.closed_neighborhood(v)
            assert eq.per_class_reps[i][j] == cls[: min(r, len(cls))]
        for a, b in itertools.combinations(classes, 2):
            assert g.closed_neighborhood(a[0]) != g.closed_neighborhood(b[0])
    assert eq.class_count <= k * 2**r
    assert len(eq.representatives) <= r * k * 2**r
    assert eq == compute_equivalence_classes(g, inst.decomposition, R)


# -- modulator search ------------------------------------------------------


def test_min_modulator_examples():
    assert find_min_cluster_modulator(Graph(5, complete(5))) == frozenset()
    assert find_min_cluster_modulator(P4) == frozenset({1})
    # {0,1} and {0,2} both leave a cluster graph; {0,1} is lexicographically first
    assert find_min_cluster_modulator(C4) == frozenset({0, 1})


def test_min_modulator_respects_k_max():
    g = Graph(4, [])
    assert find_min_cluster_modulator(g) == frozenset()
    assert find_min_cluster_modulator(g, k_max=2) == frozenset({0, 1})


def test_min_modulator_guard():
    with pytest.raises(SizeGuardError):
        find_min_cluster_modulator(Graph(25, []))


@settings(max_examples=40)
@given(graphs(max_n=7))
def test_min_modulator_is_minimum(g):
    R = find_min_cluster_modulator(g)
    assert is_cluster_graph(g, R)
    for smaller in itertools.combinations(range(g.n), len(R) - 1) if R else ():
        assert not is_cluster_graph(g, smaller)
