"""Command-line front end for .bcg files, plus a kernel benchmark.

Exit codes: 0 success or true, 1 false or nothing found, 2 usage or
input error. All randomness comes from --seed (default 0), never the
clock, so runs are reproducible.
"""

from __future__ import annotations

import argparse
import sys
import time
import warnings

import numpy as np

from . import _kernels
from .explorer import build_edit_graph, find_uniquely_pressable, is_connected, random_walk
from .gf2 import Gf2Matrix, cholesky, leading_principal_minors
from .graph import (
    BcgError,
    BicoloredGraph,
    PressingSequence,
    augmented_adjacency,
    construct_successful_sequence,
    press,
    pressing_number,
)
from .sequences import (
    average_count,
    count_sequences,
    enumerate_sequences,
    unique_coloring,
    verify_cholesky,
    verify_matchings,
    verify_minors,
    verify_psi,
    verify_simulation,
)

BENCH_MAX_N = 1 << 14

_METHODS = ("sim", "minors", "matchings", "cholesky", "psi")


def _load(path: str) -> BicoloredGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return BicoloredGraph.from_bcg(fh.read())


def _parse_sequence(text: str, n: int) -> PressingSequence:
    return PressingSequence.from_text(text, n)


def _verdict_line(report) -> str:
    if report.verdict:
        return "true"
    return f"false witness={report.witness}"


def cmd_press(args) -> int:
    g = _load(args.file)
    sys.stdout.write(press(g, args.vertex).to_bcg())
    return 0


def cmd_verify(args) -> int:
    g = _load(args.file)
    seq = _parse_sequence(args.sequence, g.n)
    methods = _METHODS if args.method == "all" else (args.method,)
    plain = {
        "sim": verify_simulation,
        "minors": verify_minors,
        "matchings": verify_matchings,
        "cholesky": verify_cholesky,
    }
    verdicts = []
    for m in methods:
        if m == "psi":
            try:
                base = construct_successful_sequence(g)
                report = verify_psi(g, base, seq)
            except ValueError as e:
                if args.method != "all":
                    raise
                print(f"skip {e}")
                continue
        else:
            report = plain[m](g, seq)
        verdicts.append(report.verdict)
        print(_verdict_line(report))
    return 0 if all(verdicts) else 1


def cmd_rank(args) -> int:
    p = pressing_number(_load(args.file))
    print(int(p))
    if not p.reachable:
        print("unreachable")
        return 1
    return 0


def cmd_cholesky(args) -> int:
    L = cholesky(augmented_adjacency(_load(args.file)))
    if L is None:
        print("no decomposition")
        return 1
    sys.stdout.write(L.to_text())
    return 0


def cmd_minors(args) -> int:
    bits = leading_principal_minors(augmented_adjacency(_load(args.file)))
    print("".join(str(b) for b in bits))
    return 0


def cmd_enumerate(args) -> int:
    g = _load(args.file)
    if args.limit is not None and args.limit < 0:
        raise ValueError(f"limit must be nonnegative, got {args.limit}")
    found = 0
    if args.count_only:
        found = sum(1 for _ in enumerate_sequences(g, limit=args.limit))
        print(found)
    else:
        for s in enumerate_sequences(g, limit=args.limit):
            print(s.to_text())
            found += 1
    return 0 if found else 1


def cmd_count(args) -> int:
    c = count_sequences(_load(args.file))
    print(c)
    return 0 if c else 1


def cmd_unique_coloring(args) -> int:
    # colors in the input file are ignored: the answer recolors the graph
    g = _load(args.file)
    sigma = _parse_sequence(args.sequence, g.n)
    print(unique_coloring(g.n, g.edges, sigma.vertices))
    return 0


def cmd_average(args) -> int:
    g = _load(args.file)
    print(average_count(g.n, g.edges))
    return 0


def cmd_pi(args) -> int:
    eg = build_edit_graph(_load(args.file), args.max_edit)
    if args.check_connected:
        ok = is_connected(eg)
        print("true" if ok else "false")
        return 0 if ok else 1
    sys.stdout.write(eg.to_text())
    return 0


def cmd_walk(args) -> int:
    s = random_walk(_load(args.file), args.steps, args.seed, args.max_edit)
    print(s.to_text())
    return 0


def cmd_uniquely_pressable(args) -> int:
    graphs = find_uniquely_pressable(args.n)
    if args.count_only:
        print(len(graphs))
        return 0
    print(f"# {len(graphs)} graphs")
    sys.stdout.write("\n".join(g.to_bcg() for g in graphs))
    return 0


def cmd_bench(args) -> int:
    n = args.n
    if not 1 <= n <= BENCH_MAX_N:
        raise ValueError(f"bench supports 1 <= n <= {BENCH_MAX_N}, got {n}")
    rng = np.random.default_rng(args.seed)
    upper = np.triu(rng.integers(0, 2, size=(n, n), dtype=np.uint8))
    sym = upper | upper.T
    M = Gf2Matrix.from_array(sym)
    low = np.tril(rng.integers(0, 2, size=(n, n), dtype=np.uint8), -1) | np.eye(
        n, dtype=np.uint8
    )
    Lm = Gf2Matrix.from_array(low)
    S = Lm @ Lm.transpose()

    warm = Gf2Matrix.identity(2)._words
    _kernels.gf2_rank(warm, 2, 2)
    _kernels.gf2_lu_nopivot(warm, 2)
    _kernels.gf2_cholesky(warm, 2)
    _kernels.gf2_orthogonalize(warm.copy(), 2)

    print(f"n {n} seed {args.seed}")

    t0 = time.perf_counter_ns()
    r, ops = _kernels.gf2_rank(M._words, n, n)
    dt = time.perf_counter_ns() - t0
    rate = int(ops) / (dt / 1e9) if dt > 0 else 0.0
    print(f"rank: value {int(r)}, {dt} ns, {rate:.3e} row-ops/s")

    t0 = time.perf_counter_ns()
    ok, _, _, ops = _kernels.gf2_lu_nopivot(M._words, n)
    dt = time.perf_counter_ns() - t0
    rate = int(ops) / (dt / 1e9) if dt > 0 else 0.0
    print(f"lu: success {'true' if ok else 'false'}, {dt} ns, {rate:.3e} row-ops/s")

    t0 = time.perf_counter_ns()
    ok, _, ops = _kernels.gf2_cholesky(S._words, n)
    dt = time.perf_counter_ns() - t0
    rate = int(ops) / (dt / 1e9) if dt > 0 else 0.0
    print(
        f"cholesky: success {'true' if ok else 'false'}, {dt} ns, {rate:.3e} row-ops/s"
    )

    t0 = time.perf_counter_ns()
    _, ops = _kernels.gf2_orthogonalize(M._words.copy(), n)
    dt = time.perf_counter_ns() - t0
    rate = int(ops) / (dt / 1e9) if dt > 0 else 0.0
    print(f"psi: {dt} ns, {rate:.3e} row-ops/s")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="pressing-lab",
        description="Pressing games on bicolored graphs: verify, enumerate, explore.",
    )
    sub = top.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        return p

    p = verb("press", cmd_press, "press one black vertex, print the result")
    p.add_argument("file")
    p.add_argument("vertex", type=int)

    p = verb("verify", cmd_verify, "check a pressing sequence")
    p.add_argument("file")
    p.add_argument("sequence", help="comma-separated vertices, e.g. 1,2")
    p.add_argument(
        "--method", choices=_METHODS + ("all",), default="sim", help="criterion to run"
    )

    p = verb("rank", cmd_rank, "pressing number; flags unreachable graphs")
    p.add_argument("file")

    p = verb("cholesky", cmd_cholesky, "factor the augmented adjacency matrix")
    p.add_argument("file")

    p = verb("minors", cmd_minors, "leading principal minors, one bit each")
    p.add_argument("file")

    p = verb("enumerate", cmd_enumerate, "list successful sequences")
    p.add_argument("file")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--count-only", action="store_true")

    p = verb("count", cmd_count, "count successful sequences")
    p.add_argument("file")

    p = verb(
        "unique-coloring",
        cmd_unique_coloring,
        "the one coloring an ordering presses out (file colors ignored)",
    )
    p.add_argument("file")
    p.add_argument("sequence", help="full vertex ordering, e.g. 2,1")

    p = verb("average", cmd_average, "mean sequence count over all colorings")
    p.add_argument("file")

    p = verb("pi", cmd_pi, "graph of sequences under small edit distance")
    p.add_argument("file")
    p.add_argument("--max-edit", type=int, default=4)
    p.add_argument("--check-connected", action="store_true")

    p = verb("walk", cmd_walk, "lazy random walk over sequences")
    p.add_argument("file")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-edit", type=int, default=4)

    p = verb("uniquely-pressable", cmd_uniquely_pressable, "graphs with one sequence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count-only", action="store_true")

    p = verb("bench", cmd_bench, "time the elimination kernels")
    p.add_argument("--n", type=int, default=1024)
    p.add_argument("--seed", type=int, default=0)

    return top


def run(argv) -> int:
    # stale-TBB advisory from numba's threading layer probe; harmless here
    warnings.filterwarnings("ignore", message="The TBB threading layer requires TBB")
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args)
    except (BcgError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
