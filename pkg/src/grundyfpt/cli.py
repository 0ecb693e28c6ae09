"""Command-line front end: ``grundyfpt {solve,oracle,gen,validate,bench,kernel}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from . import kernels
from .clique import build_kernel, solve_clique
from .coloring import GrundySolution, find_violation, first_fit
from .errors import (
    GraphParseError,
    GrundyError,
    InputError,
    ModulatorError,
    ResourceError,
    SizeGuardError,
    StructuralError,
)
from .generate import GeneratorSpec, generate
from .graph import (
    Graph,
    ModulatorInstance,
    dump_graph,
    dump_modulator,
    find_min_cluster_modulator,
    load_graph,
    load_modulator,
)
from .ilp import DEFAULT_BUDGET
from .k_cluster import MODES, solve_k_cluster
from .oracle import DEFAULT_GUARD, grundy_oracle
from .search import default_workers
from .two_cluster import solve_two_cluster

EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_MODULATOR = 3
EXIT_RESOURCE = 4
GEN_EDGE_LIMIT = 20_000_000
BENCH_FIELDS = ["n", "r", "k", "algorithm", "grundy", "millis", "candidates_examined", "oracle", "agree"]


def solve_instance(
    inst: ModulatorInstance,
    *,
    force_ilp: bool = False,
    workers: int = 1,
    ilp_mode: str = "nested",
    ilp_budget: int = DEFAULT_BUDGET,
) -> GrundySolution:
    """Dispatch on the clique count: clique, two-cluster, or integer-program solver."""
    if force_ilp or inst.k not in (1, 2):
        return solve_k_cluster(inst, ilp_mode, ilp_budget, workers)
    if inst.k == 1:
        return solve_clique(inst)
    return solve_two_cluster(inst, workers)


def _read_graph(path: str) -> Graph:
    try:
        return load_graph(Path(path).read_text())
    except OSError as exc:
        raise GraphParseError(f"cannot read {path}: {exc.strerror}") from None


def _instance(g: Graph, args) -> ModulatorInstance:
    if args.modulator:
        try:
            R = load_modulator(Path(args.modulator).read_text(), g.n)
        except OSError as exc:
            raise GraphParseError(f"cannot read {args.modulator}: {exc.strerror}") from None
    else:
        R = find_min_cluster_modulator(g, args.k_max)
    return ModulatorInstance.build(g, R)


def _oracle_guard(args) -> int:
    if args.oracle_guard > DEFAULT_GUARD:
        print(
            f"warning: oracle guard raised to {args.oracle_guard}; running time grows very fast",
            file=sys.stderr,
        )
    return args.oracle_guard


def _emit_solution(sol: GrundySolution, args) -> None:
    if args.format == "csv":
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["grundy_number", "algorithm", "ordering"])
        w.writerow([sol.grundy_number, sol.algorithm, " ".join(str(v + 1) for v in sol.ordering)])
        sys.stdout.write(out.getvalue())
    else:
        print(sol.to_json(timing=args.timing))


def cmd_solve(args) -> int:
    inst = _instance(_read_graph(args.graph), args)
    sol = solve_instance(
        inst,
        force_ilp=args.force_ilp,
        workers=args.workers,
        ilp_mode=args.ilp_mode,
        ilp_budget=args.ilp_budget,
    )
    sol.stats["k"] = inst.k
    sol.stats["r"] = inst.r
    _emit_solution(sol, args)
    return 0


def cmd_oracle(args) -> int:
    g = _read_graph(args.graph)
    start = time.perf_counter()
    sol = grundy_oracle(g, guard=_oracle_guard(args))
    sol.stats["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    _emit_solution(sol, args)
    return 0


def cmd_gen(args) -> int:
    spec = GeneratorSpec(tuple(args.cliques), args.r, args.p, args.seed)
    g, R = generate(spec)
    if g.m > GEN_EDGE_LIMIT:
        raise SizeGuardError(f"instance has {g.m} edges; writing more than {GEN_EDGE_LIMIT} is refused")
    comments = [
        f"cliques {' '.join(map(str, spec.clique_sizes))} r {spec.r} p {spec.edge_probability} seed {spec.seed}",
        f"modulator {' '.join(str(v + 1) for v in sorted(R))}",
    ]
    text = dump_graph(g, comments)
    if args.graph_out:
        Path(args.graph_out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.modulator_out:
        Path(args.modulator_out).write_text(dump_modulator(R))
    if args.graph_out:
        sys.stdout.write(dump_modulator(R))
    return 0


def cmd_validate(args) -> int:
    g = _read_graph(args.graph)
    try:
        data = json.loads(Path(args.solution).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise GraphParseError(f"cannot read solution {args.solution}: {exc}") from None
    try:
        sol = GrundySolution.from_dict(data)
        violation = find_violation(g, sol.witness)
    except StructuralError as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if violation is not None:
        print(f"FAIL: {violation.describe(offset=1)}", file=sys.stderr)
        return EXIT_FAIL
    if sol.witness.vertices() != frozenset(range(g.n)):
        missing = sorted(frozenset(range(g.n)) - sol.witness.vertices())
        print(f"FAIL: vertex {missing[0] + 1} is not colored", file=sys.stderr)
        return EXIT_FAIL
    if sol.grundy_number != sol.witness.gamma:
        print(
            f"FAIL: declared grundy_number {sol.grundy_number} but {sol.witness.gamma} classes",
            file=sys.stderr,
        )
        return EXIT_FAIL
    if sol.ordering and first_fit(g, sol.ordering) != sol.witness:
        print("FAIL: first-fit on the ordering does not reproduce the classes", file=sys.stderr)
        return EXIT_FAIL
    print(f"OK: valid Grundy coloring with {sol.witness.gamma} classes")
    return 0


def _split_sizes(total: int, k: int) -> tuple[int, ...]:
    base, extra = divmod(total, k)
    return tuple(base + (1 if i < extra else 0) for i in range(k))


def bench_rows(ns, rs, ks, p, seed, guard, force_ilp=False, timing=True) -> list[dict]:
    rows = []
    for n in ns:
        for k in ks:
            for r in rs:
                if n - r < k:
                    continue
                g, R = generate(GeneratorSpec(_split_sizes(n - r, k), r, p, seed))
                inst = ModulatorInstance.build(g, R)
                start = time.perf_counter()
                sol = solve_instance(inst, force_ilp=force_ilp)
                millis = round((time.perf_counter() - start) * 1000, 3)
                oracle = grundy_oracle(g, guard).grundy_number if n <= guard else None
                rows.append({
                    "n": n,
                    "r": r,
                    "k": inst.k,
                    "algorithm": sol.algorithm,
                    "grundy": sol.grundy_number,
                    "millis": millis if timing else "",
                    "candidates_examined": sol.stats.get("candidates_examined", ""),
                    "oracle": "" if oracle is None else oracle,
                    "agree": "" if oracle is None else ("=" if oracle == sol.grundy_number else "!="),
                })
    return rows


def cmd_bench(args) -> int:
    rows = bench_rows(
        args.n, args.r, args.k, args.p, args.seed, _oracle_guard(args), args.force_ilp, args.timing
    )
    if args.format == "json":
        print(json.dumps(rows))
    else:
        w = csv.DictWriter(sys.stdout, BENCH_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return 0


def cmd_kernel(args) -> int:
    inst = _instance(_read_graph(args.graph), args)
    kernel = build_kernel(inst)
    comments = [
        f"removed_count {kernel.removed_count}",
        f"mapping {' '.join(str(v + 1) for v in kernel.mapping)}",
    ]
    sys.stdout.write(dump_graph(kernel.kernel_graph, comments))
    return 0


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grundyfpt", description="Exact Grundy numbers for graphs with a small cluster modulator."
    )
    parser.add_argument("--backend", action="version", version=f"kernels: {kernels.BACKEND}",
                        help="print the selected kernel backend and exit")
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flags(p, default="json"):
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="format", action="store_const", const="json")
        fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
        p.set_defaults(format=default)
        p.add_argument("--timing", action=argparse.BooleanOptionalAction, default=True,
                       help="include wall-clock fields (disable for byte-identical output)")

    def modulator_flags(p):
        p.add_argument("--modulator", help="modulator file ('r v1 v2 ...'); searched for when omitted")
        p.add_argument("--k-max", type=int, default=None,
                       help="cap on the clique count when searching for a modulator")

    p = sub.add_parser("solve", help="compute the Grundy number with the FPT solvers")
    p.add_argument("graph")
    modulator_flags(p)
    p.add_argument("--force-ilp", action="store_true", help="use the integer-program solver for any k")
    p.add_argument("--ilp-mode", choices=MODES, default="nested")
    p.add_argument("--ilp-budget", type=int, default=DEFAULT_BUDGET, help="search-node cap per program")
    p.add_argument("--workers", type=int, default=default_workers())
    output_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exhaustive Grundy number for small graphs")
    p.add_argument("graph")
    p.add_argument("--oracle-guard", type=int, default=DEFAULT_GUARD)
    output_flags(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate an instance with a planted modulator")
    p.add_argument("--cliques", type=_int_list, required=True, help="clique sizes, e.g. 2,3")
    p.add_argument("--r", type=int, default=0, help="modulator size")
    p.add_argument("--p", type=float, default=0.5, help="probability of each modulator edge")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--graph-out")
    p.add_argument("--modulator-out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("validate", help="check a solution JSON against a graph")
    p.add_argument("graph")
    p.add_argument("solution")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bench", help="sweep generated instances and report timings")
    p.add_argument("--n", type=_int_list, default=[1000])
    p.add_argument("--r", type=_int_list, default=[1, 2, 3])
    p.add_argument("--k", type=_int_list, default=[1])
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force-ilp", action="store_true")
    p.add_argument("--oracle-guard", type=int, default=DEFAULT_GUARD)
    output_flags(p, default="csv")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("kernel", help="emit the clique-modulator kernel graph")
    p.add_argument("graph")
    modulator_flags(p)
    p.set_defaults(func=cmd_kernel)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GraphParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ModulatorError as exc:
        if exc.missing_edge is not None:
            u, v = exc.missing_edge
            print(f"error: not a cluster modulator: missing edge {u + 1} {v + 1}", file=sys.stderr)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODULATOR
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODULATOR
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except GrundyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
