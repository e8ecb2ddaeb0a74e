"""Exhaustive corpora of small coloured graphs, one per isomorphism class."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product

from .graph import ColouredGraph, PointedGraph


def _canonical(n, labels, edges):
    best = None
    for perm in permutations(range(n)):
        lab = tuple(labels[perm.index(i)] for i in range(n))
        es = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in edges))
        key = (lab, es)
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def _classes(n, dim):
    pairs = list(combinations(range(n), 2))
    seen = {}
    for labels in product(product((0, 1), repeat=dim), repeat=n):
        for mask in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            key = _canonical(n, labels, edges)
            seen.setdefault(key, None)
    return tuple(sorted(seen))


def small_graphs(max_nodes: int, dim: int, min_nodes: int = 1) -> list:
    """All graphs with min_nodes..max_nodes nodes up to isomorphism.

    Node ids are ``n0``, ``n1``, ...  Counts grow quickly; intended for
    max_nodes ≤ 4 with dim 1, or max_nodes ≤ 3 with dim 2.
    """
    out = []
    for n in range(min_nodes, max_nodes + 1):
        for labels, edges in _classes(n, dim):
            out.append(ColouredGraph(dim, [(f"n{i}", labels[i]) for i in range(n)],
                                     [(f"n{a}", f"n{b}") for a, b in edges]))
    return out


def pointed(graphs) -> list:
    return [PointedGraph(g, v) for g in graphs for v in g.ids]
