import json
import random

import pytest

from gnnlogic.fixtures import M, M_PRIME
from gnnlogic.graph import (ColouredGraph, GraphError, canonical_json, disjoint_union,
                            graph_to_dict, neighbours, non_neighbours, parse_graph,
                            serialize_graph)

SINGLE = ColouredGraph(1, [("n", [1])], [])


def test_neighbours_examples():
    assert neighbours(M, "v") == {"u1", "u2", "u3"}
    assert neighbours(SINGLE, "n") == set()
    assert neighbours(M, "u1") == {"v"}


def test_non_neighbours_examples():
    assert non_neighbours(M, "v") == set()
    assert non_neighbours(M, "u1") == {"u2", "u3"}
    assert non_neighbours(SINGLE, "n") == set()


def test_round_trip_fixture():
    assert parse_graph(serialize_graph(M)) == M
    assert parse_graph(serialize_graph(M_PRIME)) == M_PRIME


def test_self_loop_rejected():
    text = json.dumps({"dim": 1, "nodes": [{"id": "v", "bits": [1]}], "edges": [["v", "v"]]})
    with pytest.raises(GraphError, match="self-loop"):
        parse_graph(text)


def test_width_mismatch_rejected():
    text = json.dumps({"dim": 2, "nodes": [{"id": "v", "bits": [1]}], "edges": []})
    with pytest.raises(GraphError, match=r"nodes\[0\]"):
        parse_graph(text)


@pytest.mark.parametrize("bad", [[2], [0.5], ["1"], [True]])
def test_non_binary_bits_rejected(bad):
    with pytest.raises(GraphError):
        ColouredGraph(1, [("v", bad)], [])


def test_duplicate_edge_and_unknown_endpoint():
    with pytest.raises(GraphError, match="duplicate edge"):
        ColouredGraph(1, [("a", [0]), ("b", [0])], [("a", "b"), ("b", "a")])
    with pytest.raises(GraphError, match="unknown endpoint"):
        ColouredGraph(1, [("a", [0])], [("a", "z")])


def test_malformed_json_location():
    with pytest.raises(GraphError, match="line 1 column"):
        parse_graph('{"dim": 1,')


def test_canonical_order():
    out = json.loads(serialize_graph(M))
    assert [n["id"] for n in out["nodes"]] == ["u1", "u2", "u3", "v"]
    assert list(out) == ["dim", "nodes", "edges"]


def test_empty_graph_json():
    assert serialize_graph(ColouredGraph(1, [], [])) == b'{"dim":1,"nodes":[],"edges":[]}'


def test_edge_pair_order():
    g = ColouredGraph(1, [("v", [0]), ("u1", [1])], [("v", "u1")])
    assert graph_to_dict(g)["edges"] == [["u1", "v"]]


def test_disjoint_union_examples():
    u, (left, right) = disjoint_union(M, M_PRIME)
    assert len(u) == 9 and len(u.edge_list()) == 7
    assert left["v"] == "L:v" and right["u4"] == "R:u4"
    e = ColouredGraph(1, [], [])
    assert len(disjoint_union(e, e)[0]) == 0
    with pytest.raises(GraphError, match="dimension"):
        disjoint_union(SINGLE, M)


def _random_graph(rng, n, dim):
    nodes = [(f"x{i}", [rng.randint(0, 1) for _ in range(dim)]) for i in range(n)]
    edges = [(f"x{a}", f"x{b}") for a in range(n) for b in range(a + 1, n) if rng.random() < 0.4]
    return ColouredGraph(dim, nodes, edges)


def test_partition_and_symmetry_properties():
    rng = random.Random(5)
    for _ in range(50):
        g = _random_graph(rng, rng.randint(1, 7), 2)
        for v in g.ids:
            nb, nn = neighbours(g, v), non_neighbours(g, v)
            assert not nb & nn
            assert nb | nn | {v} == set(g.ids)
            for w in nb:
                assert v in neighbours(g, w)
        assert parse_graph(serialize_graph(g)) == g


def test_orientation_does_not_matter():
    a = ColouredGraph(1, [("a", [0]), ("b", [1])], [("b", "a")])
    b = ColouredGraph(1, [("b", [1]), ("a", [0])], [("a", "b")])
    assert a == b
    assert canonical_json(graph_to_dict(a)) == canonical_json(graph_to_dict(b))
