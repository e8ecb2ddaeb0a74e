"""Characteristic formulas of pointed models, and classifier extraction.

``char_gml(pg, l, c)`` holds exactly on the pointed models that are
l-round c-graded bisimilar to ``pg``; ``char_gmlc`` does the same for the
global game.  Both are built level by level from the model's own partition
into game classes, with one conjunct per class rather than per world.
"""

from __future__ import annotations

from dataclasses import dataclass

from .games import DECIDERS, model_classes
from .gnn import GnnClassifier, GnnError, classify
from .graph import PointedGraph
from .logic import Diamond, Exists, Not, Prop, conj, disj

VARIANTS = ("local", "global")


class CharFormError(ValueError):
    pass


@dataclass(frozen=True)
class CharFormula:
    formula: object
    source: PointedGraph
    rounds: int
    grade: int
    variant: str


def _literals(bits):
    pos = [Prop(i) for i, b in enumerate(bits) if b]
    neg = [Not(Prop(i)) for i, b in enumerate(bits) if not b]
    return conj(pos + neg)


def _representatives(members, cls):
    """First member of each class, in order of first appearance."""
    seen = {}
    for u in members:
        seen.setdefault(cls[u], u)
    return list(seen.values())


def _build(pg: PointedGraph, rounds: int, grade: int, variant: str, closure: bool = True):
    if variant not in VARIANTS:
        raise CharFormError(f"unknown variant {variant!r}")
    if not isinstance(grade, int) or grade < 1:
        raise CharFormError("grade must be >= 1")
    if not isinstance(rounds, int) or rounds < 0:
        raise CharFormError("rounds must be >= 0")
    g = pg.graph
    n = len(g)
    adj = g.adjacency()
    levels = model_classes(g, rounds, grade)
    c = grade
    prev = [_literals(bits) for _, bits in g.nodes]
    for lvl in range(rounds):
        cls = levels[lvl]
        cur = []
        for v in range(n):
            parts = [_literals(g.nodes[v][1])]
            nbr = _representatives(adj[v], cls)
            size = {w: sum(1 for u in adj[v] if cls[u] == cls[w]) for w in nbr}
            parts += [Diamond(k, prev[w]) for w in nbr for k in range(1, min(size[w], c) + 1)]
            parts += [Not(Diamond(k, prev[w])) for w in nbr for k in range(size[w] + 1, c + 1)]
            if variant == "global":
                every = _representatives(range(n), cls)
                total = {w: sum(1 for u in range(n) if cls[u] == cls[w]) for w in every}
                parts += [Exists(k, prev[w]) for w in every for k in range(1, min(total[w], c) + 1)]
                parts += [Not(Exists(k, prev[w])) for w in every
                          for k in range(total[w] + 1, c + 1)]
            if closure:
                parts.append(Not(Diamond(1, conj(Not(prev[w]) for w in nbr))))
                if variant == "global":
                    parts.append(Not(Exists(1, conj(Not(prev[w]) for w in every))))
            cur.append(conj(parts))
        prev = cur
    return prev[g.index(pg.point)]


def char_gml(pg: PointedGraph, rounds: int, grade: int) -> CharFormula:
    return CharFormula(_build(pg, rounds, grade, "local"), pg, rounds, grade, "local")


def char_gmlc(pg: PointedGraph, rounds: int, grade: int) -> CharFormula:
    return CharFormula(_build(pg, rounds, grade, "global"), pg, rounds, grade, "global")


def char_formula(pg: PointedGraph, rounds: int, grade: int, variant: str,
                 closure: bool = True) -> CharFormula:
    """``closure=False`` drops the conjuncts that rule out extra neighbour
    (and world) classes; that variant is incomplete and kept for contrast."""
    return CharFormula(_build(pg, rounds, grade, variant, closure), pg, rounds, grade, variant)


def extract_classifier(n: GnnClassifier, corpus, variant: str):
    """Disjunction of characteristic formulas of the accepted corpus members.

    The result agrees with ``n`` on every pointed model that is game
    equivalent to some corpus member; elsewhere it promises nothing.
    """
    allowed = {"local": ("AC",), "global": ("AC", "ACR")}.get(variant)
    if allowed is None:
        raise CharFormError(f"unknown variant {variant!r}")
    if not n.bounded:
        raise GnnError("classifier uses an unbounded aggregator")
    if n.family() not in allowed:
        raise GnnError(f"classifier family {n.family()} does not match variant {variant}")
    L, k = len(n.layers), n.max_bound()
    decide = DECIDERS[variant]
    kept = []
    for pg in corpus:
        if not classify(n, pg):
            continue
        if any(decide(pg, other, L, k).verdict for other in kept):
            continue
        kept.append(pg)
    return disj(_build(pg, L, k, variant) for pg in kept)
