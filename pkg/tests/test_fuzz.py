import json
from fractions import Fraction

import pytest

from gnnlogic.compiler import COMPILERS
from gnnlogic.fuzz import (FAMILIES, SUITES, FuzzConfig, gen_bounded_gnn, gen_formula,
                           gen_graph, mutate_bias, run_differential)
from gnnlogic.gnn import validate_family
from gnnlogic.logic import And, Not, Prop, classify_fragment, depth, walk


def test_graph_determinism_and_edge_probability():
    cfg = FuzzConfig(seed=1)
    assert gen_graph(cfg, 0) == gen_graph(cfg, 0)
    assert gen_graph(cfg, 0) != gen_graph(cfg, 1) or gen_graph(cfg, 1) != gen_graph(cfg, 2)
    empty = FuzzConfig(seed=1, edge_prob=0)
    assert all(not gen_graph(empty, i).edge_list() for i in range(20))
    full = FuzzConfig(seed=1, edge_prob=1, max_nodes=3)
    for i in range(20):
        g = gen_graph(full, i)
        assert len(g.edge_list()) == len(g) * (len(g) - 1) // 2
    tri = next(gen_graph(full, i) for i in range(50) if len(gen_graph(full, i)) == 3)
    assert len(tri.edge_list()) == 3


def test_formula_generation():
    cfg = FuzzConfig(seed=5, depth=3, grade=3)
    assert all(classify_fragment(gen_formula(cfg, i, "ML")) == "ML" for i in range(100))
    flat = FuzzConfig(seed=5, depth=0)
    for i in range(50):
        f = gen_formula(flat, i, "GMLC")
        assert depth(f) == 0
        assert all(isinstance(g, (Prop, Not, And)) for g in walk(f))
    assert gen_formula(cfg, 7, "EMLC") == gen_formula(cfg, 7, "EMLC")
    with pytest.raises(ValueError):
        gen_formula(cfg, 0, "FO")


def test_gnn_generation():
    for family in FAMILIES:
        cfg = FuzzConfig(seed=3, depth=3, grade=1, family=family)
        for i in range(20):
            n = gen_bounded_gnn(cfg, i)
            assert len(n.layers) <= 3
            assert all(a.name() == "max-1-sum" for a in n.aggregators())
            validate_family(n, family, set_based=True)
            assert n == gen_bounded_gnn(cfg, i)
            for layer in n.layers:
                assert layer.out_dim <= 6
                assert all(-2 <= x <= 2 for row in layer.C + layer.A for x in row)
                assert all(-3 <= x <= 3 for x in layer.bias)


def test_config_validation():
    with pytest.raises(ValueError):
        FuzzConfig(trials=0)
    with pytest.raises(ValueError):
        FuzzConfig(edge_prob=Fraction(3, 2))
    with pytest.raises(ValueError):
        FuzzConfig(family="GIN")
    with pytest.raises(ValueError):
        run_differential("nonsense", FuzzConfig())


def test_streams_are_independent():
    # the formula stream does not depend on how many graphs were drawn
    cfg = FuzzConfig(seed=11)
    f = gen_formula(cfg, 4, "GML")
    for i in range(10):
        gen_graph(cfg, i)
    assert gen_formula(cfg, 4, "GML") == f


@pytest.mark.parametrize("suite", SUITES)
def test_suites_clean_and_deterministic(suite):
    for family in FAMILIES:
        cfg = FuzzConfig(seed=2, trials=15, family=family)
        a = run_differential(suite, cfg)
        b = run_differential(suite, cfg)
        assert a["failures"] == 0, a["first_counterexample"]
        assert a["checked"] > 0
        assert json.dumps(a) == json.dumps(b)


def test_mutation_canary():
    for family, name in (("AC", "gml"), ("ACR", "gmlc"), ("ACPlus", "emlc")):
        cfg = FuzzConfig(seed=42, trials=100, family=family)
        rep = run_differential("compiler", cfg, mutate_bias(COMPILERS[name]))
        assert rep["failures"] > 0
        ce = rep["first_counterexample"]
        assert {"graph", "formula", "node", "trial"} <= set(ce)
