"""Exhaustive game-tree search, used as an oracle for the refinement deciders.

The search plays the rounds as stated: Spoiler chooses a model, a move type
(a pebble, or a local/global round) and a non-empty set of at most ``c``
candidate positions; Duplicator answers with a set of the same size in the
other model; Spoiler picks from Duplicator's set and Duplicator from
Spoiler's.  A player who cannot choose a set loses; Duplicator loses as soon
as the pebbled positions disagree atomically, and wins if Spoiler has no
move at all.  Nothing here looks at the partition refinement.
"""

from __future__ import annotations

import os
from array import array
from itertools import combinations

from ..graph import PointedGraph
from . import _minimax_py
from .refine import GameError, build_arena, start_position

try:
    if os.environ.get("GNNLOGIC_PURE_PYTHON") == "1":
        raise ImportError
    from . import _minimax_c as _kernel
    BACKEND = "cython"
except ImportError:  # no compiler at install time, or disabled
    _kernel = _minimax_py
    BACKEND = "python"

BACKENDS = {"python": _minimax_py.solve}
if BACKEND == "cython":
    BACKENDS["cython"] = _kernel.solve

MAX_WORLDS = 12
_MAX_CANDIDATES = 62


def _csr(lists_per_move):
    """Flatten per-move successor lists; move m, position a owns
    ``idx[ptr[m*(n+1)+a] : ptr[m*(n+1)+a+1]]``."""
    ptr, idx = [], []
    for lists in lists_per_move:
        ptr.append(len(idx))
        for lst in lists:
            idx.extend(lst)
            ptr.append(len(idx))
    idx.append(0)  # sentinel so an empty list still has a valid address
    return array("i", ptr), array("i", idx)


def game_tables(g1, g2, kind: str, rounds: int, grade: int, backend: str | None = None,
                max_worlds: int | None = MAX_WORLDS):
    """Duplicator-win tables for every position pair, for 0..rounds rounds.

    Returns ``(arena, tables, n1)``; ``tables[r][a * n2 + b]`` is 1 when
    Duplicator wins the r-round game from side-0 position ``a`` and
    side-1 position ``n1 + b``.
    """
    if g1.dim != g2.dim:
        raise GameError(f"dimension mismatch: {g1.dim} vs {g2.dim}")
    if grade < 1 or rounds < 0:
        raise GameError("need rounds >= 0 and grade >= 1")
    if max_worlds is not None and len(g1) + len(g2) > max_worlds:
        raise GameError(f"instance too large for exhaustive search "
                        f"({len(g1) + len(g2)} worlds, limit {max_worlds})")
    arena = build_arena(g1, g2, kind)
    n1 = arena.side.count(0)
    n2 = arena.size - n1
    atomic = bytearray(n1 * n2)
    for a in range(n1):
        for b in range(n2):
            atomic[a * n2 + b] = arena.atomic[a] == arena.atomic[n1 + b]
    left, right = [], []
    for succ in arena.succ:
        left.append([succ[a] for a in range(n1)])
        right.append([[u - n1 for u in succ[n1 + b]] for b in range(n2)])
        longest = max((len(s) for s in succ), default=0)
        if longest > _MAX_CANDIDATES:
            raise GameError("too many candidates per move for exhaustive search")
    ptr1, idx1 = _csr(left)
    ptr2, idx2 = _csr(right)
    solve = BACKENDS[backend or BACKEND]
    tables = solve(n1, n2, bytes(atomic), ptr1, idx1, ptr2, idx2, len(arena.succ), rounds, grade)
    return arena, tables, n1


def minimax_game(kind: str, pg1: PointedGraph, pg2: PointedGraph, rounds: int, grade: int,
                 backend: str | None = None) -> str:
    """Winner of the game started on (pg1.point, pg2.point)."""
    arena, tables, n1 = game_tables(pg1.graph, pg2.graph, kind, rounds, grade, backend)
    p, q = start_position(arena, pg1.point, pg2.point)
    n2 = arena.size - n1
    return "Duplicator" if tables[rounds][p * n2 + (q - n1)] else "Spoiler"


def replay_witness(report, pg1: PointedGraph, pg2: PointedGraph) -> bool:
    """Check that a report's opening Spoiler move wins against every answer."""
    w = report.witness
    if w is None:
        return False
    arena, tables, n1 = game_tables(pg1.graph, pg2.graph, report.kind, report.rounds,
                                    report.grade)
    n2 = arena.size - n1
    p, q = start_position(arena, pg1.point, pg2.point)
    if w["rounds_needed"] == 0:
        return arena.atomic[p] != arena.atomic[q]
    prev = tables[w["rounds_needed"] - 1]
    move_index = {"local": 0, "global": 1, "pebble1": 0, "pebble2": 1}[w["move"]]
    succ = arena.succ[move_index]
    index = {label: i for i, label in enumerate(arena.labels)}
    U = [index[x] for x in w["set"]]
    here, there = (p, q) if w["model"] == "L" else (q, p)
    if not set(U) <= set(succ[here]) or not 1 <= len(U) <= report.grade:
        return False

    def dup_ok(u, u2):  # u from Spoiler's model, u2 from Duplicator's
        a, b = (u, u2) if w["model"] == "L" else (u2, u)
        return prev[a * n2 + (b - n1)]

    for U2 in combinations(succ[there], len(U)):
        if all(any(dup_ok(u, u2) for u in U) for u2 in U2):
            return False
    return True
