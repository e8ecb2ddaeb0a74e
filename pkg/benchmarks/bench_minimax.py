"""Compare the compiled and pure-Python game-tree kernels.

    python benchmarks/bench_minimax.py [--rounds 2] [--grade 2] [--max-nodes 3]

Both kernels solve the same instances (every pair from the small-graph
corpus, plus a few larger random pairs) and must return identical tables.
"""

from __future__ import annotations

import argparse
import sys
import time

from gnnlogic.corpus import small_graphs
from gnnlogic.fuzz import FuzzConfig, gen_graph
from gnnlogic.games import KINDS, game_tables
from gnnlogic.games.minimax import BACKENDS


def workload(max_nodes, extra):
    graphs = small_graphs(max_nodes, 1)
    pairs = [(a, b) for i, a in enumerate(graphs) for b in graphs[i:]]
    cfg = FuzzConfig(seed=0, trials=extra, max_nodes=5, dim=1)
    pairs += [(gen_graph(cfg, i, "l", 5, 5), gen_graph(cfg, i, "r", 5, 5)) for i in range(extra)]
    return pairs


def run(backend, pairs, rounds, grade):
    t = time.perf_counter()
    out = [game_tables(a, b, kind, rounds, grade, backend=backend)[1]
           for a, b in pairs for kind in KINDS]
    return time.perf_counter() - t, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rounds", type=int, default=2)
    ap.add_argument("--grade", type=int, default=2)
    ap.add_argument("--max-nodes", type=int, default=3)
    ap.add_argument("--extra", type=int, default=10, help="random 5+5 instances")
    args = ap.parse_args(argv)
    pairs = workload(args.max_nodes, args.extra)
    print(f"{len(pairs)} model pairs x {len(KINDS)} game kinds, "
          f"rounds={args.rounds} grade={args.grade}")
    results = {}
    for name in sorted(BACKENDS):
        dt, tables = run(name, pairs, args.rounds, args.grade)
        results[name] = (dt, tables)
        print(f"  {name:<8} {dt:8.3f} s")
    if len(results) < 2:
        print("compiled kernel not available; nothing to compare")
        return 0
    if results["cython"][1] != results["python"][1]:
        print("MISMATCH between kernels")
        return 1
    print(f"  tables identical; speedup x{results['python'][0] / results['cython'][0]:.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
