"""Both kernel backends must agree exactly; the compiled one is optional."""

import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grundyfpt import _pykernels, kernels
from grundyfpt.coloring import first_fit_partial
from support import graphs, plain_first_fit

try:
    from grundyfpt import _ckernels
except ImportError:
    _ckernels = None

BACKENDS = [pytest.param(_pykernels, id="python")]
BACKENDS.append(
    pytest.param(_ckernels, id="cython", marks=pytest.mark.skipif(_ckernels is None, reason="extension not built"))
)
needs_compiled = pytest.mark.skipif(_ckernels is None, reason="extension not built")


@pytest.mark.parametrize("impl", BACKENDS)
def test_prefix_colorings_cover_all_orderings(impl):
    # P4: the distinct first-fit colorings over all 24 orderings
    import itertools

    edges = [(0, 1), (1, 2), (2, 3)]
    masks = [0b0010, 0b0101, 0b1010, 0b0100]
    expected = {tuple(plain_first_fit(4, edges, p)) for p in itertools.permutations(range(4))}
    found = impl.prefix_colorings(masks, [0, 1, 2, 3])
    assert {c for c, _ in found} == expected
    for colors, order in found:
        assert tuple(plain_first_fit(4, edges, order)) == colors


@pytest.mark.parametrize("impl", BACKENDS)
def test_max_flow_example(impl):
    value, flows = impl.max_flow(4, [0, 0, 2, 3], [2, 3, 1, 1], [1, 1, 1, 1], 0, 1)
    assert value == 2 and flows == [1, 1, 1, 1]


@pytest.mark.parametrize("impl", BACKENDS)
def test_best_extension_empty_batch(impl):
    assert impl.best_extension([0, 0], [], [0, 1]) == (-1, 0)


@needs_compiled
@settings(max_examples=120)
@given(graphs(max_n=8), st.data())
def test_prefix_colorings_parity(g, data):
    masks = g.induced_masks(range(g.n))
    verts = data.draw(st.permutations(range(g.n)))
    sub = list(verts[: data.draw(st.integers(0, g.n))])
    py = _pykernels.prefix_colorings(masks, sub)
    cy = _ckernels.prefix_colorings(masks, sub)
    assert py == cy
    for colors, order in py:
        cc = first_fit_partial(g, order)
        assert tuple(cc.color_of[v] for v in sub) == colors


@needs_compiled
@settings(max_examples=120)
@given(graphs(max_n=12, min_n=1), st.data())
def test_extension_parity(g, data):
    masks = g.induced_masks(range(g.n))
    order = data.draw(st.permutations(range(g.n)))
    cut = data.draw(st.integers(0, g.n))
    prefix, suffix = order[:cut], order[cut:]
    bases = []
    for _ in range(data.draw(st.integers(1, 4))):
        cc = first_fit_partial(g, data.draw(st.permutations(prefix)))
        base = [-1] * g.n
        for v, c in cc.color_of.items():
            base[v] = c
        bases.append(base)
    assert _pykernels.best_extension(masks, bases, suffix) == _ckernels.best_extension(masks, bases, suffix)
    assert _pykernels.extend_count(masks, bases[0], suffix) == _ckernels.extend_count(masks, bases[0], suffix)


@needs_compiled
@settings(max_examples=150)
@given(st.data())
def test_max_flow_parity(data):
    n = data.draw(st.integers(2, 12))
    arcs = data.draw(
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(0, 4)), max_size=50)
    )
    args = (n, [a for a, _, _ in arcs], [b for _, b, _ in arcs], [c for *_, c in arcs], 0, n - 1)
    assert _pykernels.max_flow(*args) == _ckernels.max_flow(*args)


def test_large_vertex_sets_use_python():
    masks = [0] * 70
    assert kernels.best_extension(masks, [[-1] * 70], list(range(70))) == (0, 1)


def test_pure_python_switch():
    env = dict(os.environ, GRUNDYFPT_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from grundyfpt import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
