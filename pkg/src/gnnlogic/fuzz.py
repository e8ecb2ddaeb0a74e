"""Deterministic generators and differential test drivers.

Every random choice draws from a stream keyed by (seed, trial, purpose), so
each generator is a pure function of its configuration and trial index and
adding a new consumer never shifts another one's stream.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .charform import char_formula
from .compiler import COMPILERS, CompilationArtifact, build_classifier
from .corpus import small_graphs
from .games import DECIDERS, equivalence_classes, game_tables
from .gnn import Cls, GnnClassifier, Layer, gnn_to_dict, max_k_sum, run_levels
from .graph import ColouredGraph, PointedGraph, graph_to_dict
from .logic import (RELATIONS, And, Diamond, Exists, Modal, Not, Prop, counting_rank, depth,
                    eval_mask, print_formula)

FAMILIES = ("AC", "ACR", "ACPlus")
FRAGMENTS = ("ML", "GML", "MLE", "GMLC", "EML", "EMLC")
FAMILY_GAME = {"AC": "local", "ACR": "global", "ACPlus": "pebble2"}
FAMILY_FRAGMENT = {"AC": ("gml", "GML"), "ACR": ("gmlc", "GMLC"), "ACPlus": ("emlc", "EMLC")}
SUITES = ("compiler", "games-oracle", "invariance", "charform")


@dataclass(frozen=True)
class FuzzConfig:
    seed: int = 0
    trials: int = 100
    max_nodes: int = 6
    dim: int = 2
    depth: int = 2
    grade: int = 2
    edge_prob: Fraction = Fraction(1, 2)
    family: str = "AC"

    def __post_init__(self):
        object.__setattr__(self, "edge_prob", Fraction(self.edge_prob))
        for name in ("trials", "max_nodes", "dim", "grade"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.depth < 0:
            raise ValueError("depth must be non-negative")
        if not 0 <= self.edge_prob <= 1:
            raise ValueError("edge probability must lie in [0, 1]")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")


def stream(cfg: FuzzConfig, i: int, tag: str) -> random.Random:
    key = f"{cfg.seed & (2 ** 64 - 1)}/{i}/{tag}".encode()
    return random.Random(int.from_bytes(hashlib.blake2b(key, digest_size=16).digest(), "big"))


def _bernoulli(rng, p: Fraction) -> bool:
    return rng.randrange(p.denominator) < p.numerator


def gen_graph(cfg: FuzzConfig, i: int, tag: str = "graph", max_nodes: int | None = None,
              min_nodes: int = 1) -> ColouredGraph:
    rng = stream(cfg, i, tag)
    n = rng.randint(min_nodes, max_nodes or cfg.max_nodes)
    nodes = [(f"n{j}", [rng.randint(0, 1) for _ in range(cfg.dim)]) for j in range(n)]
    edges = [(f"n{a}", f"n{b}") for a in range(n) for b in range(a + 1, n)
             if _bernoulli(rng, cfg.edge_prob)]
    return ColouredGraph(cfg.dim, nodes, edges)


def _gen_formula(rng, fragment, dim, budget_depth, grade, size):
    """``size`` is a one-element list holding the remaining node budget."""
    size[0] -= 1
    choices = ["prop"]
    if size[0] > 0:
        choices += ["not", "and"]
        if budget_depth > 0:
            choices += ["modal"] * 2
    pick = rng.choice(choices)
    graded = fragment in ("GML", "GMLC", "EMLC")
    k = rng.randint(1, grade) if graded else 1
    rec = lambda d: _gen_formula(rng, fragment, dim, d, grade, size)
    if pick == "prop":
        return Prop(rng.randrange(dim))
    if pick == "not":
        return Not(rec(budget_depth))
    if pick == "and":
        return And(rec(budget_depth), rec(budget_depth))
    if fragment in ("EML", "EMLC"):
        rel = rng.choice(RELATIONS)
        return Modal(rel, 1 if rel == "id" else k, rec(budget_depth - 1))
    if fragment in ("MLE", "GMLC") and rng.random() < 0.5:
        return Exists(k, rec(budget_depth - 1))
    return Diamond(k, rec(budget_depth - 1))


def gen_formula(cfg: FuzzConfig, i: int, fragment: str, max_size: int = 12):
    if fragment not in FRAGMENTS:
        raise ValueError(f"unknown fragment {fragment!r}")
    rng = stream(cfg, i, "formula:" + fragment)
    return _gen_formula(rng, fragment, cfg.dim, cfg.depth, cfg.grade, [max_size])


def _rand_matrix(rng, rows, cols, lo=-2, hi=2):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def gen_bounded_gnn(cfg: FuzzConfig, i: int, layers: int | None = None) -> GnnClassifier:
    """Random member of the bounded family ``cfg.family``.

    ``layers`` fixes the layer count; by default it is drawn from 0..depth.
    """
    rng = stream(cfg, i, "gnn")
    L = rng.randint(0, cfg.depth) if layers is None else layers
    d = cfg.dim
    out = []
    for _ in range(L):
        e = rng.randint(1, 6)
        agg = max_k_sum(rng.randint(1, cfg.grade))
        agg2 = max_k_sum(rng.randint(1, cfg.grade)) if cfg.family != "AC" else None
        extra = _rand_matrix(rng, d, e) if cfg.family != "AC" else None
        out.append(Layer(cfg.family, agg, _rand_matrix(rng, d, e), _rand_matrix(rng, d, e),
                         [rng.randint(-3, 3) for _ in range(e)], extra, agg2))
        d = e
    t = rng.randrange(d)
    cls = Cls(t) if rng.random() < 0.5 else Cls(t, ">=", Fraction(1, 2))
    return GnnClassifier(cfg.dim, out, cls)


# ---------------------------------------------------------------- drivers

def _report(suite, cfg, checked, failures, first):
    return {"suite": suite, "seed": cfg.seed, "trials": cfg.trials, "family": cfg.family,
            "checked": checked, "failures": failures, "first_counterexample": first}


def _truth_per_subformula(art: CompilationArtifact, g):
    return [eval_mask(f, g) for f in art.order]


def mutate_bias(compile_fn):
    """A compiler whose last bias entry is off by one (a canary for the suite)."""
    def broken(f, dim=None):
        art = compile_fn(f, dim)
        b = list(art.b)
        b[-1] += 1
        X = art.R if art.R is not None else art.Abar
        clf = build_classifier(art.family, art.D, art.C, art.A, X, b, art.n)
        return replace(art, classifier=clf, b=tuple(b))
    return broken


def _suite_compiler(cfg, compile_fn=None):
    name, fragment = FAMILY_FRAGMENT[cfg.family]
    compile_fn = compile_fn or COMPILERS[name]
    checked = failures = 0
    first = None
    for i in range(cfg.trials):
        g = gen_graph(cfg, i)
        f = gen_formula(cfg, i, fragment)
        art = compile_fn(f, cfg.dim)
        levels = run_levels(art.classifier, g)
        truth = _truth_per_subformula(art, g)
        L = len(art.order)
        for v in range(len(g)):
            checked += 1
            expect = bool(truth[-1] >> v & 1)
            got = art.classifier.cls(levels[-1][v])
            # after the lifting layer and j shared layers, the first j
            # coordinates (and all propositions) must already be exact
            coords_ok = all(
                levels[1 + j][v][l] == (truth[l] >> v & 1)
                for j in range(1, L + 1) for l in range(j))
            if got != expect or not coords_ok:
                failures += 1
                if first is None:
                    first = {"trial": i, "graph": graph_to_dict(g), "formula": print_formula(f),
                             "fragment": name, "node": g.ids[v], "expected": expect,
                             "got": got, "intermediate_ok": coords_ok}
    return _report("compiler", cfg, checked, failures, first)


def _suite_games_oracle(cfg):
    checked = failures = 0
    first = None
    cap = min(cfg.max_nodes, 6)
    for i in range(cfg.trials):
        rng = stream(cfg, i, "game-params")
        g1 = gen_graph(cfg, i, "left", cap)
        g2 = gen_graph(cfg, i, "right", cap)
        rounds = rng.randint(0, cfg.depth)
        grade = rng.randint(1, cfg.grade)
        for kind in DECIDERS:
            part = equivalence_classes(g1, g2, kind, rounds, grade)
            arena, tables, n1 = game_tables(g1, g2, kind, rounds, grade)
            n2 = arena.size - n1
            lvl, tab = part.levels[rounds], tables[rounds]
            for a in range(n1):
                for b in range(n2):
                    checked += 1
                    if (lvl[a] == lvl[n1 + b]) != bool(tab[a * n2 + b]):
                        failures += 1
                        if first is None:
                            first = {"trial": i, "kind": kind, "rounds": rounds, "grade": grade,
                                     "left": graph_to_dict(g1), "right": graph_to_dict(g2),
                                     "position": [arena.labels[a], arena.labels[n1 + b]],
                                     "refinement": lvl[a] == lvl[n1 + b]}
    return _report("games-oracle", cfg, checked, failures, first)


@lru_cache(maxsize=64)
def equivalent_pairs(kind: str, rounds: int, grade: int, dim: int, max_nodes: int = 3) -> tuple:
    """Cross-model equivalent pointed pairs over the exhaustive small corpus.

    Each entry is ``(g1, v1, g2, v2)`` with v1 ≠ v2 or g1 ≠ g2.
    """
    gs = small_graphs(max_nodes, dim)
    out = []
    for i, g1 in enumerate(gs):
        for g2 in gs[i:]:
            out.extend(_pairs_of(g1, g2, kind, rounds, grade))
    return tuple(out)


def _pairs_of(g1, g2, kind, rounds, grade):
    part = equivalence_classes(g1, g2, kind, rounds, grade)
    cls = part.levels[rounds]
    if kind == "pebble2":
        # start positions: pebble 1 placed, pebble 2 not
        n1 = len(g1) * (len(g1) + 1)
        left = [(v, cls[j * (len(g1) + 1)]) for j, v in enumerate(g1.ids)]
        right = [(v, cls[n1 + j * (len(g2) + 1)]) for j, v in enumerate(g2.ids)]
    else:
        left = [(v, cls[j]) for j, v in enumerate(g1.ids)]
        right = [(v, cls[len(g1) + j]) for j, v in enumerate(g2.ids)]
    return [(g1, v1, g2, v2) for v1, x in left for v2, y in right
            if x == y and (g1 is not g2 or v1 != v2)]


def _suite_invariance(cfg):
    kind = FAMILY_GAME[cfg.family]
    checked = failures = 0
    first = None
    for i in range(cfg.trials):
        n = gen_bounded_gnn(cfg, i)
        L, k = len(n.layers), n.max_bound()
        pairs = list(equivalent_pairs(kind, L, k, cfg.dim, 3 if cfg.dim == 1 else 2))
        g1 = gen_graph(cfg, i, "left")
        g2 = gen_graph(cfg, i, "right")
        if len(g1) + len(g2) <= 16:
            pairs += _pairs_of(g1, g2, kind, L, k)
        cache = {}

        def out(g, v):
            key = id(g)
            if key not in cache:
                cache[key] = (g, run_levels(n, g)[-1])
            return n.cls(cache[key][1][g.index(v)])

        for g1_, v1, g2_, v2 in pairs:
            checked += 1
            if out(g1_, v1) != out(g2_, v2):
                failures += 1
                if first is None:
                    first = {"trial": i, "kind": kind, "gnn": gnn_to_dict(n),
                             "left": graph_to_dict(g1_), "left_node": v1,
                             "right": graph_to_dict(g2_), "right_node": v2}
    return _report("invariance", cfg, checked, failures, first)


def _suite_charform(cfg):
    variant = "global" if cfg.family == "ACR" else "local"
    decide = DECIDERS[variant]
    checked = failures = 0
    first = None
    cap = min(cfg.max_nodes, 5)
    for i in range(cfg.trials):
        rng = stream(cfg, i, "charform-params")
        g = gen_graph(cfg, i, "source", cap)
        pg = PointedGraph(g, rng.choice(g.ids))
        rounds = rng.randint(0, min(cfg.depth, 2))
        grade = rng.randint(1, cfg.grade)
        cf = char_formula(pg, rounds, grade, variant).formula
        targets = [gen_graph(cfg, i, f"target{j}", cap) for j in range(4)] + [g]
        problems = []
        if depth(cf) > rounds or counting_rank(cf) > grade:
            problems.append("budget")
        for h in targets:
            mask = eval_mask(cf, h)
            for j, v in enumerate(h.ids):
                checked += 1
                want = decide(pg, PointedGraph(h, v), rounds, grade).verdict
                if bool(mask >> j & 1) != want:
                    problems.append(("biconditional", graph_to_dict(h), v, want))
        if problems:
            failures += 1
            if first is None:
                first = {"trial": i, "variant": variant, "source": graph_to_dict(g),
                         "point": pg.point, "rounds": rounds, "grade": grade,
                         "formula": print_formula(cf), "problem": repr(problems[0])}
    return _report("charform", cfg, checked, failures, first)


def run_differential(suite: str, cfg: FuzzConfig, compile_fn=None) -> dict:
    if suite == "compiler":
        return _suite_compiler(cfg, compile_fn)
    if suite == "games-oracle":
        return _suite_games_oracle(cfg)
    if suite == "invariance":
        return _suite_invariance(cfg)
    if suite == "charform":
        return _suite_charform(cfg)
    raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
