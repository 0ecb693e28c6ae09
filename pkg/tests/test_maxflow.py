import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grundyfpt.errors import InputError
from grundyfpt.maxflow import FlowNetwork, max_flow


def check_feasible(net, value, flows):
    balance = [0] * net.node_count
    for (a, b, c), f in zip(net.arcs, flows):
        assert 0 <= f <= c
        balance[a] -= f
        balance[b] += f
    for v in range(net.node_count):
        if v not in (net.source, net.sink):
            assert balance[v] == 0
    assert balance[net.sink] == value == -balance[net.source]


def test_single_path():
    net = FlowNetwork(3, 0, 2, [(0, 1, 1), (1, 2, 1)])
    assert max_flow(net) == (1, [1, 1])


def test_no_source_arcs():
    assert max_flow(FlowNetwork(3, 0, 2, [(1, 2, 1)]))[0] == 0


def test_complete_bipartite_3x3():
    net = FlowNetwork(8, 0, 1)
    for a in range(3):
        net.add_arc(0, 2 + a)
        net.add_arc(5 + a, 1)
        for b in range(3):
            net.add_arc(2 + a, 5 + b)
    value, flows = max_flow(net)
    assert value == 3
    check_feasible(net, value, flows)


def test_validation():
    with pytest.raises(InputError):
        max_flow(FlowNetwork(2, 0, 0))
    with pytest.raises(InputError):
        max_flow(FlowNetwork(2, 0, 1, [(0, 2, 1)]))
    with pytest.raises(InputError):
        max_flow(FlowNetwork(2, 0, 1, [(0, 1, -1)]))


def brute_unit_flow(net):
    """Largest value over all 0/1 arc assignments that respect conservation."""
    best = 0
    for bits in itertools.product((0, 1), repeat=len(net.arcs)):
        if any(f > c for f, (_, _, c) in zip(bits, net.arcs)):
            continue
        balance = [0] * net.node_count
        for f, (a, b, _) in zip(bits, net.arcs):
            balance[a] -= f
            balance[b] += f
        if all(balance[v] == 0 for v in range(net.node_count) if v not in (net.source, net.sink)):
            best = max(best, balance[net.sink])
    return best


@st.composite
def networks(draw, max_nodes=6, max_arcs=12, max_cap=1):
    n = draw(st.integers(2, max_nodes))
    arcs = draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(0, max_cap)).filter(
                lambda t: t[0] != t[1]
            ),
            max_size=max_arcs,
        )
    )
    return FlowNetwork(n, 0, n - 1, arcs)


@settings(max_examples=150, deadline=None)
@given(networks())
def test_matches_brute_force_on_unit_networks(net):
    value, flows = max_flow(net)
    check_feasible(net, value, flows)
    assert value == brute_unit_flow(net)


@settings(max_examples=150)
@given(networks(max_nodes=10, max_arcs=40, max_cap=5), st.randoms(use_true_random=False))
def test_matches_networkx_and_is_order_invariant(net, rnd):
    value, flows = max_flow(net)
    check_feasible(net, value, flows)
    g = nx.DiGraph()
    g.add_nodes_from(range(net.node_count))
    for a, b, c in net.arcs:
        if g.has_edge(a, b):
            g[a][b]["capacity"] += c
        else:
            g.add_edge(a, b, capacity=c)
    assert value == nx.maximum_flow_value(g, net.source, net.sink)
    shuffled = list(net.arcs)
    rnd.shuffle(shuffled)
    assert max_flow(FlowNetwork(net.node_count, net.source, net.sink, shuffled))[0] == value


def test_random_bipartite_matching_against_networkx():
    rng = random.Random(3)
    for _ in range(30):
        left, right = rng.randint(1, 12), rng.randint(1, 12)
        pairs = [(a, b) for a in range(left) for b in range(right) if rng.random() < 0.3]
        net = FlowNetwork(2 + left + right, 0, 1)
        for a in range(left):
            net.add_arc(0, 2 + a)
        for b in range(right):
            net.add_arc(2 + left + b, 1)
        for a, b in pairs:
            net.add_arc(2 + a, 2 + left + b)
        bg = nx.Graph()
        bg.add_nodes_from(("L", a) for a in range(left))
        bg.add_nodes_from(("R", b) for b in range(right))
        bg.add_edges_from((("L", a), ("R", b)) for a, b in pairs)
        matching = nx.bipartite.maximum_matching(bg, top_nodes=[("L", a) for a in range(left)])
        assert max_flow(net)[0] == len(matching) // 2
