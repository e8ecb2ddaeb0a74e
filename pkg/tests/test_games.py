import itertools

import pytest

from gnnlogic.corpus import pointed, small_graphs
from gnnlogic.fixtures import M, M_AT_V, M_PRIME_AT_V, PHI_C2, PHI_EMLC
from gnnlogic.fuzz import FuzzConfig, equivalent_pairs, gen_formula, gen_graph
from gnnlogic.games import (BACKEND, DECIDERS, KINDS, GameError, equivalence_classes,
                            game_tables, global_graded_bisim, graded_bisim, minimax_game,
                            replay_witness, two_pebble_equiv)
from gnnlogic.games.minimax import BACKENDS
from gnnlogic.graph import ColouredGraph, PointedGraph
from gnnlogic.logic import eval_c2, eval_mask, holds

M_U2_Q = ColouredGraph(2, [("v", [1, 0]), ("u1", [1, 0]), ("u2", [0, 1]), ("u3", [0, 1])],
                       [("v", "u1"), ("v", "u2"), ("v", "u3")])
TWO = ColouredGraph(1, [("a", [1]), ("b", [1])], [])
ONE = ColouredGraph(1, [("a", [1])], [])


def test_local_examples():
    assert not graded_bisim(M_AT_V, M_PRIME_AT_V, 1, 3).verdict
    assert graded_bisim(M_AT_V, M_AT_V, 2, 3).verdict
    u1 = PointedGraph(M, "u1")
    assert graded_bisim(M_AT_V, u1, 0, 1).verdict
    assert not graded_bisim(M_AT_V, u1, 1, 1).verdict


def test_global_examples():
    assert not global_graded_bisim(M_AT_V, M_PRIME_AT_V, 1, 3).verdict
    assert global_graded_bisim(M_PRIME_AT_V, M_PRIME_AT_V, 2, 2).verdict
    assert not global_graded_bisim(M_AT_V, PointedGraph(M_U2_Q, "v"), 1, 2).verdict


def test_pebble_examples():
    assert two_pebble_equiv(M_AT_V, M_AT_V, 2, 3).verdict
    assert not two_pebble_equiv(M_AT_V, M_PRIME_AT_V, 1, 3).verdict
    assert not two_pebble_equiv(PointedGraph(TWO, "a"), PointedGraph(ONE, "a"), 1, 2).verdict


def test_minimax_examples():
    assert minimax_game("local", M_AT_V, M_PRIME_AT_V, 1, 3) == "Spoiler"
    for kind in KINDS:
        assert minimax_game(kind, M_AT_V, M_AT_V, 2, 2) == "Duplicator"
    assert minimax_game("local", M_AT_V, PointedGraph(M, "u1"), 0, 1) == "Duplicator"


def test_classes_examples():
    def named(level):
        return sorted(sorted(x.split(":")[1] for x in cls if x.startswith("L:"))
                      for cls in part.classes(level))

    part = equivalence_classes(M, M, "local", 0, 1)
    assert named(0) == [["u1", "u2", "v"], ["u3"]]
    part = equivalence_classes(M, M, "local", 1, 3)
    assert named(1) == [["u1", "u2"], ["u3"], ["v"]]


def test_report_levels_honour_rounds():
    rep = graded_bisim(M_AT_V, M_AT_V, 5, 1)
    assert len(rep.to_dict()["levels"]) == 6


def test_errors():
    with pytest.raises(GameError):
        graded_bisim(M_AT_V, PointedGraph(ONE, "a"), 1, 1)
    with pytest.raises(GameError):
        graded_bisim(M_AT_V, M_AT_V, 1, 0)
    with pytest.raises(ValueError):
        graded_bisim(M_AT_V, PointedGraph(M, "zz"), 1, 1)
    big = ColouredGraph(1, [(f"n{i}", [0]) for i in range(7)], [])
    with pytest.raises(GameError, match="too large"):
        game_tables(big, big, "local", 1, 1)


@pytest.mark.parametrize("kind", KINDS)
def test_witness_replays(kind):
    cfg = FuzzConfig(seed=13, trials=40, max_nodes=4, dim=1)
    seen = 0
    for i in range(40):
        g1, g2 = gen_graph(cfg, i, "a"), gen_graph(cfg, i, "b")
        for v1, v2 in itertools.product(g1.ids, g2.ids):
            pg1, pg2 = PointedGraph(g1, v1), PointedGraph(g2, v2)
            rep = DECIDERS[kind](pg1, pg2, 2, 2)
            if not rep.verdict:
                seen += 1
                assert replay_witness(rep, pg1, pg2)
    assert seen > 20
    rep = DECIDERS[kind](M_AT_V, M_PRIME_AT_V, 1, 3)
    assert replay_witness(rep, M_AT_V, M_PRIME_AT_V)


def _pairs(n=25, nodes=4, seed=17):
    cfg = FuzzConfig(seed=seed, trials=n, max_nodes=nodes, dim=1, edge_prob=0.4)
    return [(gen_graph(cfg, i, "a"), gen_graph(cfg, i, "b")) for i in range(n)]


def test_monotonicity_and_global_refines_local():
    for g1, g2 in _pairs():
        for v1, v2 in itertools.product(g1.ids, g2.ids):
            pg1, pg2 = PointedGraph(g1, v1), PointedGraph(g2, v2)
            for kind in KINDS:
                dec = DECIDERS[kind]
                for r, c in itertools.product(range(3), (1, 2, 3)):
                    if dec(pg1, pg2, r + 1, c).verdict:
                        assert dec(pg1, pg2, r, c).verdict
                    if c >= 2 and dec(pg1, pg2, r, c).verdict:
                        assert dec(pg1, pg2, r, c - 1).verdict
            for r, c in itertools.product(range(3), (1, 2)):
                if global_graded_bisim(pg1, pg2, r, c).verdict:
                    assert graded_bisim(pg1, pg2, r, c).verdict


def test_oracle_agreement_deeper_games():
    """Up to 5+5 worlds, three rounds and grade three, on random pairs."""
    cfg = FuzzConfig(seed=29, trials=12, max_nodes=5, dim=1, edge_prob=0.5)
    for i in range(12):
        g1, g2 = gen_graph(cfg, i, "a"), gen_graph(cfg, i, "b")
        for kind in KINDS:
            arena, tables, n1 = game_tables(g1, g2, kind, 3, 3)
            part = equivalence_classes(g1, g2, kind, 3, 3)
            n2 = arena.size - n1
            for r in range(4):
                lv = part.levels[r]
                for a, b in itertools.product(range(n1), range(n2)):
                    assert (lv[a] == lv[n1 + b]) == bool(tables[r][a * n2 + b])


@pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernel not built")
def test_backend_parity():
    for g1, g2 in _pairs(10, 4, 31):
        for kind in KINDS:
            a = game_tables(g1, g2, kind, 2, 2, backend="python")[1]
            b = game_tables(g1, g2, kind, 2, 2, backend="cython")[1]
            assert a == b


def test_backend_is_reported():
    assert BACKEND in BACKENDS


def test_isolated_worlds_stall():
    # no move is available on either side, so Duplicator survives every round
    for kind in ("local",):
        assert minimax_game(kind, PointedGraph(ONE, "a"), PointedGraph(TWO, "a"), 3, 2) == "Duplicator"
        assert graded_bisim(PointedGraph(ONE, "a"), PointedGraph(TWO, "a"), 3, 2).verdict
    assert minimax_game("global", PointedGraph(ONE, "a"), PointedGraph(TWO, "a"), 1, 2) == "Spoiler"


@pytest.mark.parametrize("kind,fragment", [("local", "GML"), ("global", "GMLC"),
                                           ("pebble2", "EMLC")])
def test_game_logic_agreement(kind, fragment):
    for rounds, grade in ((1, 1), (1, 2), (2, 2)):
        pairs = equivalent_pairs(kind, rounds, grade, 1, 3)
        cfg = FuzzConfig(seed=37, trials=60, dim=1, depth=rounds, grade=grade)
        formulas = [gen_formula(cfg, i, fragment) for i in range(60)]
        for g1, v1, g2, v2 in pairs:
            for f in formulas:
                assert holds(f, PointedGraph(g1, v1)) == holds(f, PointedGraph(g2, v2))


def test_c2_fixture_respects_pebble_game():
    pairs = equivalent_pairs("pebble2", 2, 3, 1, 3)
    assert pairs
    for g1, v1, g2, v2 in pairs:
        assert eval_c2(PHI_C2, g1, {"x": v1}) == eval_c2(PHI_C2, g2, {"x": v2})
        assert bool(eval_mask(PHI_EMLC, g1) >> g1.index(v1) & 1) == \
            bool(eval_mask(PHI_EMLC, g2) >> g2.index(v2) & 1)


def test_equivalence_within_corpus_is_an_equivalence():
    pgs = pointed(small_graphs(3, 1))
    for kind in KINDS:
        for a in pgs[:12]:
            assert DECIDERS[kind](a, a, 2, 2).verdict
            for b in pgs[:12]:
                assert DECIDERS[kind](a, b, 2, 2).verdict == DECIDERS[kind](b, a, 2, 2).verdict
