"""Game equivalences decided by level-indexed partition refinement.

All three games are solved on the pair of models at once: worlds (or pebble
configurations) of both models are refined together, so class ids are
shared and two positions are equivalent after ``n`` rounds iff they sit in
the same level-``n`` class.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from ..graph import ColouredGraph, GraphError, PointedGraph

KINDS = ("local", "global", "pebble2")


class GameError(ValueError):
    pass


@dataclass(frozen=True)
class Arena:
    """The two models laid side by side.

    ``positions`` are world indices (local, global) or pebble configurations
    ``(side, a1, a2)`` with ``a2 = -1`` while the second pair is unplaced.
    World indices run over both graphs: side 0 first, then side 1.
    """

    kind: str
    g1: ColouredGraph
    g2: ColouredGraph
    labels: tuple          # printable name per position
    side: tuple            # 0 or 1 per position
    atomic: tuple          # level-0 signature per position
    succ: tuple            # per move type: successor position lists
    position_of: dict = field(repr=False)

    @property
    def size(self):
        return len(self.labels)


def _check(g1, g2, rounds, grade):
    if g1.dim != g2.dim:
        raise GameError(f"dimension mismatch: {g1.dim} vs {g2.dim}")
    if not isinstance(rounds, int) or rounds < 0:
        raise GameError("rounds must be a non-negative integer")
    if not isinstance(grade, int) or grade < 1:
        raise GameError("grade must be >= 1")


def _worlds(g1, g2):
    """Per side: list of (global world index, node id, bits); and adjacency."""
    worlds, adj, offset = [], [], 0
    for s, g in enumerate((g1, g2)):
        for i, (nid, bits) in enumerate(g.nodes):
            worlds.append((s, nid, bits))
        adj.extend(tuple(offset + j for j in a) for a in g.adjacency())
        offset += len(g)
    return worlds, adj


def build_arena(g1: ColouredGraph, g2: ColouredGraph, kind: str) -> Arena:
    if kind not in KINDS:
        raise GameError(f"unknown game kind {kind!r}")
    if g1.dim != g2.dim:
        raise GameError(f"dimension mismatch: {g1.dim} vs {g2.dim}")
    worlds, adj = _worlds(g1, g2)
    prefix = ("L:", "R:")
    if kind != "pebble2":
        labels = tuple(prefix[s] + nid for s, nid, _ in worlds)
        side = tuple(s for s, _, _ in worlds)
        atomic = tuple(bits for _, _, bits in worlds)
        succ = [tuple(adj)]
        if kind == "global":
            members = [tuple(i for i, w in enumerate(worlds) if w[0] == s) for s in (0, 1)]
            succ.append(tuple(members[s] for s in side))
        pos = {(s, nid): i for i, (s, nid, _) in enumerate(worlds)}
        return Arena(kind, g1, g2, labels, side, atomic, tuple(succ), pos)

    members = [[i for i, w in enumerate(worlds) if w[0] == s] for s in (0, 1)]
    adjset = [set(a) for a in adj]
    configs = []
    for s in (0, 1):
        for a1 in members[s]:
            for a2 in [-1] + members[s]:
                configs.append((s, a1, a2))
    pos = {cfg: i for i, cfg in enumerate(configs)}
    labels, atomic = [], []
    for s, a1, a2 in configs:
        name2 = "_" if a2 < 0 else worlds[a2][1]
        labels.append(f"{prefix[s]}({worlds[a1][1]},{name2})")
        if a2 < 0:
            atomic.append((worlds[a1][2], (), 0, 0, 0))
        else:
            atomic.append((worlds[a1][2], worlds[a2][2], 1, int(a1 == a2), int(a2 in adjset[a1])))
    move1 = tuple(tuple(pos[(s, u, a2)] for u in members[s]) for s, a1, a2 in configs)
    move2 = tuple(tuple(pos[(s, a1, u)] for u in members[s]) for s, a1, a2 in configs)
    keyed = {(s, worlds[a1][1], None if a2 < 0 else worlds[a2][1]): i
             for i, (s, a1, a2) in enumerate(configs)}
    return Arena(kind, g1, g2, tuple(labels), tuple(s for s, _, _ in configs), tuple(atomic),
                 (move1, move2), keyed)


def start_position(arena: Arena, v1: str, v2: str) -> tuple[int, int]:
    try:
        if arena.kind == "pebble2":
            return arena.position_of[(0, v1, None)], arena.position_of[(1, v2, None)]
        return arena.position_of[(0, v1)], arena.position_of[(1, v2)]
    except KeyError as exc:
        raise GraphError(f"unknown node id {exc.args[0][1]!r}") from None


def _renumber(sigs):
    order = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return tuple(order[s] for s in sigs)


def _capped(classes, succ, c):
    counts = Counter(classes[u] for u in succ)
    return tuple(sorted((x, min(c, k)) for x, k in counts.items()))


def refine_step(arena: Arena, classes: tuple, c: int) -> tuple:
    sigs = []
    if arena.kind == "global":
        per_side = [Counter(), Counter()]
        for p, x in enumerate(classes):
            per_side[arena.side[p]][x] += 1
        capped = [{x: min(c, k) for x, k in cnt.items()} for cnt in per_side]
        split = capped[0] != capped[1]
    # for the global game the second move type is handled by the split flag
    local_moves = arena.succ[:1] if arena.kind == "global" else arena.succ
    for p in range(arena.size):
        sig = (classes[p],) + tuple(_capped(classes, m[p], c) for m in local_moves)
        if arena.kind == "global" and split:
            sig += (arena.side[p],)
        sigs.append(sig)
    return _renumber(sigs)


@dataclass(frozen=True)
class LevelPartition:
    kind: str
    rounds: int
    grade: int
    labels: tuple
    levels: tuple   # per level, a class id per position

    def classes(self, level: int) -> list:
        groups = {}
        for p, x in enumerate(self.levels[level]):
            groups.setdefault(x, []).append(self.labels[p])
        return [sorted(groups[x]) for x in sorted(groups)]

    def same(self, level: int, p: int, q: int) -> bool:
        return self.levels[level][p] == self.levels[level][q]


def refine(arena: Arena, rounds: int, grade: int) -> LevelPartition:
    levels = [_renumber(arena.atomic)]
    stable = False
    for _ in range(rounds):
        if stable:
            levels.append(levels[-1])
            continue
        nxt = refine_step(arena, levels[-1], grade)
        stable = len(set(nxt)) == len(set(levels[-1]))
        levels.append(nxt)
    return LevelPartition(arena.kind, rounds, grade, arena.labels, tuple(levels))


def equivalence_classes(g1: ColouredGraph, g2: ColouredGraph, kind: str, rounds: int,
                        grade: int) -> LevelPartition:
    _check(g1, g2, rounds, grade)
    return refine(build_arena(g1, g2, kind), rounds, grade)


@dataclass(frozen=True)
class EquivalenceReport:
    kind: str
    rounds: int
    grade: int
    verdict: bool
    separating_level: int | None
    witness: dict | None
    levels: LevelPartition

    def to_dict(self) -> dict:
        return {
            "kind": self.kind, "rounds": self.rounds, "grade": self.grade,
            "verdict": self.verdict, "separating_level": self.separating_level,
            "witness": self.witness,
            "levels": [self.levels.classes(n) for n in range(self.rounds + 1)],
        }


def _witness(arena: Arena, part: LevelPartition, p: int, q: int, level: int, c: int) -> dict:
    """Spoiler's opening move in a game of ``level`` rounds from (p, q)."""
    if level == 0:
        return {"rounds_needed": 0, "reason": "atomic types differ"}
    prev = part.levels[level - 1]
    names = ["local"] if arena.kind != "pebble2" else ["pebble1", "pebble2"]
    moves = list(zip(names, arena.succ[:len(names)]))
    if arena.kind == "global":
        moves.append(("global", arena.succ[1]))
    for name, succ in moves:
        cnt_p = Counter(prev[u] for u in succ[p])
        cnt_q = Counter(prev[u] for u in succ[q])
        for x in sorted(set(cnt_p) | set(cnt_q)):
            a, b = min(c, cnt_p[x]), min(c, cnt_q[x])
            if a == b:
                continue
            here = p if a > b else q
            take = min(a, b) + 1
            chosen = [u for u in succ[here] if prev[u] == x][:take]
            return {
                "rounds_needed": level,
                "move": name,
                "model": "L" if arena.side[here] == 0 else "R",
                "set": [arena.labels[u] for u in chosen],
                "class_size_capped": {"L": a, "R": b},
            }
    raise AssertionError("positions separate without a distinguishing move")


def decide(kind: str, pg1: PointedGraph, pg2: PointedGraph, rounds: int, grade: int) -> EquivalenceReport:
    _check(pg1.graph, pg2.graph, rounds, grade)
    arena = build_arena(pg1.graph, pg2.graph, kind)
    part = refine(arena, rounds, grade)
    p, q = start_position(arena, pg1.point, pg2.point)
    sep = next((n for n in range(rounds + 1) if not part.same(n, p, q)), None)
    witness = None if sep is None else _witness(arena, part, p, q, sep, grade)
    return EquivalenceReport(kind, rounds, grade, sep is None, sep, witness, part)


def graded_bisim(pg1, pg2, rounds, grade) -> EquivalenceReport:
    return decide("local", pg1, pg2, rounds, grade)


def global_graded_bisim(pg1, pg2, rounds, grade) -> EquivalenceReport:
    return decide("global", pg1, pg2, rounds, grade)


def two_pebble_equiv(pg1, pg2, rounds, grade) -> EquivalenceReport:
    return decide("pebble2", pg1, pg2, rounds, grade)


DECIDERS = {"local": graded_bisim, "global": global_graded_bisim, "pebble2": two_pebble_equiv}


def model_classes(g: ColouredGraph, rounds: int, grade: int) -> list:
    """Per level, a class id per node of ``g`` (worlds of one model only).

    Within a single model the local and global relations coincide, since a
    global round can always be copied move for move.
    """
    part = equivalence_classes(g, g, "local", rounds, grade)
    n = len(g)
    return [lvl[:n] for lvl in part.levels]
