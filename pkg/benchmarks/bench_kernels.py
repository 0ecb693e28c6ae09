"""Time the compiled kernels against their pure-Python twins on fixed workloads.

    python benchmarks/bench_kernels.py [--repeat N] [--seed S]

Prints one row per kernel with the best-of-N time for each backend and the
speedup.  Both backends are checked to return identical results first.
"""

import argparse
import random
import timeit

from grundyfpt import _pykernels
from grundyfpt.coloring import first_fit_partial
from grundyfpt.graph import Graph

try:
    from grundyfpt import _ckernels
except ImportError:
    _ckernels = None


def random_masks(rng: random.Random, n: int, p: float) -> tuple[Graph, list[int]]:
    g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
    return g, g.induced_masks(range(n))


def workloads(rng: random.Random) -> dict[str, tuple]:
    _, small = random_masks(rng, 9, 0.5)
    g, masks = random_masks(rng, 40, 0.6)
    prefix = list(range(12))
    bases = []
    for _ in range(64):
        order = rng.sample(prefix, len(prefix))
        cc = first_fit_partial(g, order)
        base = [-1] * g.n
        for v, c in cc.color_of.items():
            base[v] = c
        bases.append(base)
    left = right = 150
    tails, heads = [], []
    for a in range(left):
        tails.append(0)
        heads.append(2 + a)
        for b in range(right):
            if rng.random() < 0.05:
                tails.append(2 + a)
                heads.append(2 + left + b)
    for b in range(right):
        tails.append(2 + left + b)
        heads.append(1)
    flow_args = (2 + left + right, tails, heads, [1] * len(tails), 0, 1)
    return {
        "prefix_colorings (n=9)": ("prefix_colorings", (small, list(range(9)))),
        "best_extension (64 bases, n=40)": ("best_extension", (masks, bases, list(range(12, 40)))),
        "max_flow (300 + 2 nodes)": ("max_flow", flow_args),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()
    if _ckernels is None:
        print("compiled kernels are not built; only the Python backend is available")
    print(f"{'kernel':36} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for label, (name, call_args) in workloads(random.Random(args.seed)).items():
        py = getattr(_pykernels, name)
        py_time = min(timeit.repeat(lambda: py(*call_args), number=1, repeat=args.repeat))
        if _ckernels is None:
            print(f"{label:36} {py_time * 1e3:10.2f} {'-':>10} {'-':>8}")
            continue
        cy = getattr(_ckernels, name)
        if py(*call_args) != cy(*call_args):
            raise SystemExit(f"backends disagree on {label}")
        cy_time = min(timeit.repeat(lambda: cy(*call_args), number=1, repeat=args.repeat))
        print(f"{label:36} {py_time * 1e3:10.2f} {cy_time * 1e3:10.2f} {py_time / cy_time:7.1f}x")


if __name__ == "__main__":
    main()
