import random
from fractions import Fraction

import pytest

from gnnlogic.compiler import compile_gml, compile_gmlc
from gnnlogic.fixtures import M, M_AT_V, PHI_GML, PHI_GMLC
from gnnlogic.fuzz import FAMILIES, FuzzConfig, gen_bounded_gnn, gen_graph
from gnnlogic.gnn import (COMPONENTWISE_MAX, MEAN, SUM, AggregationError, Cls, GnnClassifier,
                          GnnError, Layer, aggregate, apply_layer, cap_multiset, classify,
                          gnn_from_dict, gnn_to_dict, max_k_sum, measure_spectrum, parse_gnn,
                          run, serialize_gnn, spectrum_bound, validate_family)
from gnnlogic.gnn.model import activate
from gnnlogic.graph import ColouredGraph, PointedGraph
from gnnlogic.logic import Prop

from oracles import dense_run

EXAMPLE = [(3, 2), (2, 4), (2, 4)]
ONE = ColouredGraph(1, [("n1", [1])], [])
ZERO = ColouredGraph(1, [("n0", [0])], [])


def test_example_values():
    assert aggregate(COMPONENTWISE_MAX, EXAMPLE) == (3, 4)
    assert aggregate(max_k_sum(2), EXAMPLE) == (5, 8)
    assert aggregate(SUM, EXAMPLE) == (7, 10)
    assert aggregate(MEAN, EXAMPLE) == (Fraction(7, 3), Fraction(10, 3))
    assert aggregate(max_k_sum(3), [], dim=2) == (0, 0)


def test_cap_examples():
    a, b = (1,), (2,)
    assert sorted(cap_multiset([a, a, a, b], 2)) == [a, a, b]
    m = [a, b, a]
    assert sorted(cap_multiset(m, 5)) == sorted(m)
    assert cap_multiset([a, a], 1) == [a]


def test_bad_aggregators():
    with pytest.raises(AggregationError):
        max_k_sum(0)
    with pytest.raises(AggregationError):
        aggregate(SUM, [])
    with pytest.raises(AggregationError):
        aggregate(SUM, [(1,), (1, 2)])


def test_k_bounded_property():
    rng = random.Random(8)
    for k in (1, 2, 3):
        for _ in range(200):
            m = [tuple(rng.randint(-2, 2) for _ in range(2)) for _ in range(rng.randint(0, 7))]
            for a in (max_k_sum(k),) + ((COMPONENTWISE_MAX,) if k == 1 else ()):
                assert aggregate(a, m, 2) == aggregate(a, cap_multiset(m, k), 2)


def test_truncated_relu():
    for x in (Fraction(-3, 2), 0, Fraction(1, 3), 1, 7):
        y = activate("truncated-relu", x)
        assert y == min(max(0, x), 1)
        assert activate("truncated-relu", y) == y


def test_identity_layer_keeps_labels():
    layer = Layer("AC", max_k_sum(1), [[1, 0], [0, 1]], [[0, 0], [0, 0]], [0, 0])
    labels = {v: bits for v, bits in M.nodes}
    assert apply_layer(layer, M, labels) == labels


def test_acplus_non_neighbours_empty_at_centre():
    # Ā reads the non-neighbours; v in M has none, so it contributes 0
    layer = Layer("ACPlus", max_k_sum(1), [[0], [0]], [[0], [0]], [0], [[1], [1]], max_k_sum(1),
                  activation="identity")
    out = apply_layer(layer, M, {v: bits for v, bits in M.nodes})
    assert out["v"] == (0,)
    assert out["u1"] == (2,)  # max over u2 [1,0] and u3 [0,1] is [1,1]


def test_zero_layer_classifier():
    n = GnnClassifier(2, [], Cls(1))
    assert run(n, M) == {v: bits for v, bits in M.nodes}
    assert not classify(n, M_AT_V)


def test_run_examples():
    art = compile_gml(PHI_GML)
    assert run(art.classifier, M)["v"][5] == 0
    assert not classify(art.classifier, M_AT_V)
    assert not classify(compile_gmlc(PHI_GMLC).classifier, M_AT_V)
    single = compile_gml(Prop(0))
    assert run(single.classifier, ONE)["n1"] == (1,)
    assert classify(single.classifier, PointedGraph(ONE, "n1"))


def test_layer_validation():
    with pytest.raises(GnnError, match="rows"):
        Layer("AC", max_k_sum(1), [[1]], [[1], [1]], [0])
    with pytest.raises(GnnError):
        Layer("AC", max_k_sum(1), [[1]], [[1]], [0], [[1]], max_k_sum(1))
    with pytest.raises(GnnError):
        Layer("ACR", max_k_sum(1), [[1]], [[1]], [0])
    with pytest.raises(GnnError):
        Layer("AC", max_k_sum(1), [[0.5]], [[1]], [0])
    layer = Layer("AC", max_k_sum(1), [[1]], [[1]], [0])
    with pytest.raises(GnnError, match="dimension"):
        GnnClassifier(2, [layer], Cls(0))
    with pytest.raises(GnnError):
        validate_family(GnnClassifier(1, [Layer("AC", SUM, [[1]], [[1]], [0])], Cls(0)), "AC")
    with pytest.raises(GnnError, match="set-based"):
        validate_family(GnnClassifier(1, [Layer("AC", max_k_sum(2), [[1]], [[1]], [0])],
                                      Cls(0)), "AC", set_based=True)


def _rational_gnn(rng, family, agg_kinds=("max-k-sum", "sum", "mean")):
    """Random classifier with fractional weights and unbounded aggregators."""
    def agg():
        kind = rng.choice(agg_kinds)
        return max_k_sum(rng.randint(1, 3)) if kind == "max-k-sum" else {"sum": SUM, "mean": MEAN}[kind]

    def mat(r, c):
        return [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(c)] for _ in range(r)]

    d, layers = 2, []
    for _ in range(rng.randint(1, 3)):
        e = rng.randint(1, 4)
        extra = mat(d, e) if family != "AC" else None
        layers.append(Layer(family, agg(), mat(d, e), mat(d, e), [Fraction(rng.randint(-2, 2), 2)
                                                                  for _ in range(e)],
                            extra, agg() if family != "AC" else None))
        d = e
    return GnnClassifier(2, layers, Cls(0, ">=", Fraction(1, 2)))


@pytest.mark.parametrize("family", FAMILIES)
def test_sparse_runtime_matches_dense_reference(family):
    rng = random.Random(hash(family) & 0xFFFF)
    cfg = FuzzConfig(seed=4, trials=30, max_nodes=6, dim=2)
    for i in range(30):
        n = _rational_gnn(rng, family)
        g = gen_graph(cfg, i)
        assert run(n, g) == dense_run(n, g)


def test_isomorphism_invariance_and_determinism():
    rng = random.Random(2)
    for family in FAMILIES:
        cfg = FuzzConfig(seed=9, trials=20, dim=2, depth=3, grade=3, family=family)
        for i in range(20):
            n = gen_bounded_gnn(cfg, i)
            g = gen_graph(cfg, i)
            perm = list(g.ids)
            rng.shuffle(perm)
            rename = {v: f"z{perm.index(v)}" for v in g.ids}
            h = ColouredGraph(g.dim, [(rename[v], b) for v, b in g.nodes],
                              [(rename[a], rename[b]) for a, b in g.edge_list()])
            out_g, out_h = run(n, g), run(n, h)
            assert all(out_g[v] == out_h[rename[v]] for v in g.ids)
            assert run(n, g) == out_g


def test_serialization_round_trip():
    rng = random.Random(1)
    for family in FAMILIES:
        n = _rational_gnn(rng, family)
        assert parse_gnn(serialize_gnn(n)) == n
        assert serialize_gnn(parse_gnn(serialize_gnn(n))) == serialize_gnn(n)
    d = gnn_to_dict(compile_gml(PHI_GML).classifier)
    assert d["format_version"] == 1
    assert gnn_from_dict(d) == compile_gml(PHI_GML).classifier


def test_serialization_errors():
    d = gnn_to_dict(compile_gml(PHI_GML).classifier)
    with pytest.raises(GnnError):
        gnn_from_dict({**d, "format_version": 99})
    with pytest.raises(GnnError):
        parse_gnn(b"[1,2")


def test_spectrum_bound_examples():
    assert spectrum_bound(2, 1, 1, "AC") == [4, 64]
    assert spectrum_bound(1, 1, 2, "ACR") == [2, 162]
    assert spectrum_bound(1, 0, 3, "AC") == [2]
    big = spectrum_bound(2, 3, 3, "ACR")
    assert big[:2] == [4, 4 * 4 ** 8] and big[-1] is None


def test_measure_spectrum_examples():
    rep = measure_spectrum(compile_gml(Prop(0)).classifier, [ONE, ZERO])
    assert rep.levels[0] == {(1,), (0,)}
    assert rep.within_bounds()
    unbounded = GnnClassifier(1, [Layer("AC", SUM, [[1]], [[1]], [0])], Cls(0))
    assert measure_spectrum(unbounded, [ONE]).bounds is None


def test_spectrum_property_small():
    for family in FAMILIES:
        cfg = FuzzConfig(seed=5, trials=10, dim=2, depth=2, grade=2, family=family)
        corpus = [gen_graph(cfg, i, "corpus") for i in range(20)]
        for i in range(10):
            rep = measure_spectrum(gen_bounded_gnn(cfg, i), corpus)
            assert rep.within_bounds()
            assert rep.levels[0] <= {(a, b) for a in (0, 1) for b in (0, 1)}
