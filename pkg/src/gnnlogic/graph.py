"""Coloured graphs: undirected, simple, with fixed-width binary node labels.

A graph doubles as a Kripke model: nodes are worlds, edges the symmetric
accessibility relation and bit ``i`` of a label is proposition ``p{i+1}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for structurally invalid graphs or malformed graph JSON."""


@dataclass(frozen=True)
class ColouredGraph:
    """An immutable coloured graph.

    Nodes are kept sorted by id; each node also gets a dense index in that
    order, and neighbourhoods are stored as tuples of indices.
    """

    dim: int
    nodes: tuple[tuple[str, tuple[int, ...]], ...]
    edges: frozenset[frozenset[str]]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)
    _adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _ids: tuple[str, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, dim: int, nodes: Iterable[tuple[str, Sequence[int]]],
                 edges: Iterable[Iterable[str]] = ()):
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise GraphError(f"dim must be a positive integer, got {dim!r}")
        recs = []
        seen = set()
        for pos, (nid, bits) in enumerate(nodes):
            if not isinstance(nid, str):
                raise GraphError(f"nodes[{pos}]: id must be a string")
            if nid in seen:
                raise GraphError(f"nodes[{pos}]: duplicate id {nid!r}")
            seen.add(nid)
            bits = tuple(bits)
            if len(bits) != dim:
                raise GraphError(
                    f"nodes[{pos}] ({nid!r}): bits width {len(bits)} does not match dim {dim}")
            for b in bits:
                if isinstance(b, (bool, float)) or b not in (0, 1):
                    raise GraphError(f"nodes[{pos}] ({nid!r}): bits must be 0 or 1, got {b!r}")
            recs.append((nid, tuple(int(b) for b in bits)))
        recs.sort(key=lambda r: r[0])
        index = {nid: i for i, (nid, _) in enumerate(recs)}

        edge_set = set()
        for pos, e in enumerate(edges):
            pair = tuple(e)
            if len(pair) != 2:
                raise GraphError(f"edges[{pos}]: an edge needs exactly two endpoints")
            a, b = pair
            for x in pair:
                if x not in index:
                    raise GraphError(f"edges[{pos}]: unknown endpoint {x!r}")
            if a == b:
                raise GraphError(f"edges[{pos}]: self-loop on {a!r}")
            key = frozenset(pair)
            if key in edge_set:
                raise GraphError(f"edges[{pos}]: duplicate edge {sorted(pair)}")
            edge_set.add(key)

        adj = [[] for _ in recs]
        for e in edge_set:
            a, b = (index[x] for x in e)
            adj[a].append(b)
            adj[b].append(a)

        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "nodes", tuple(recs))
        object.__setattr__(self, "edges", frozenset(edge_set))
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_ids", tuple(nid for nid, _ in recs))
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def ids(self) -> tuple[str, ...]:
        return self._ids

    def index(self, nid: str) -> int:
        try:
            return self._index[nid]
        except KeyError:
            raise GraphError(f"unknown node id {nid!r}") from None

    def bits(self, nid: str) -> tuple[int, ...]:
        return self.nodes[self.index(nid)][1]

    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Neighbour index lists, one per node in sorted-id order."""
        return self._adj

    def has_edge(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.edges

    def edge_list(self) -> list[tuple[str, str]]:
        return sorted(tuple(sorted(e)) for e in self.edges)


@dataclass(frozen=True)
class PointedGraph:
    graph: ColouredGraph
    point: str

    def __post_init__(self):
        self.graph.index(self.point)


def neighbours(g: ColouredGraph, v: str) -> set[str]:
    ids = g.ids
    return {ids[i] for i in g.adjacency()[g.index(v)]}


def non_neighbours(g: ColouredGraph, v: str) -> set[str]:
    return set(g.ids) - neighbours(g, v) - {v}


def graph_to_dict(g: ColouredGraph) -> dict:
    return {
        "dim": g.dim,
        "nodes": [{"id": nid, "bits": list(bits)} for nid, bits in g.nodes],
        "edges": [list(e) for e in g.edge_list()],
    }


def graph_from_dict(obj) -> ColouredGraph:
    if not isinstance(obj, dict):
        raise GraphError("graph JSON must be an object")
    for key in ("dim", "nodes"):
        if key not in obj:
            raise GraphError(f"missing field {key!r}")
    extra = set(obj) - {"dim", "nodes", "edges"}
    if extra:
        raise GraphError(f"unknown fields {sorted(extra)}")
    nodes = []
    if not isinstance(obj["nodes"], list):
        raise GraphError("'nodes' must be a list")
    for pos, rec in enumerate(obj["nodes"]):
        if not isinstance(rec, dict) or set(rec) != {"id", "bits"}:
            raise GraphError(f"nodes[{pos}]: expected an object with 'id' and 'bits'")
        if not isinstance(rec["bits"], list):
            raise GraphError(f"nodes[{pos}]: 'bits' must be a list")
        nodes.append((rec["id"], rec["bits"]))
    edges = obj.get("edges", [])
    if not isinstance(edges, list):
        raise GraphError("'edges' must be a list")
    for pos, e in enumerate(edges):
        if not isinstance(e, list):
            raise GraphError(f"edges[{pos}]: an edge is a two-element list")
    return ColouredGraph(obj["dim"], nodes, edges)


def parse_graph(text: bytes | str) -> ColouredGraph:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GraphError(f"graph JSON is not UTF-8: {exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return graph_from_dict(obj)


def canonical_json(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def serialize_graph(g: ColouredGraph) -> bytes:
    return canonical_json(graph_to_dict(g)).encode("utf-8")


def disjoint_union(g1: ColouredGraph, g2: ColouredGraph):
    """Union with ids prefixed ``L:`` and ``R:``.

    Returns ``(graph, (left_map, right_map))`` where each map sends an
    original id to its id in the union.
    """
    if g1.dim != g2.dim:
        raise GraphError(f"dimension mismatch: {g1.dim} vs {g2.dim}")
    left = {nid: "L:" + nid for nid in g1.ids}
    right = {nid: "R:" + nid for nid in g2.ids}
    nodes = [(left[n], b) for n, b in g1.nodes] + [(right[n], b) for n, b in g2.nodes]
    edges = [(left[a], left[b]) for a, b in g1.edge_list()]
    edges += [(right[a], right[b]) for a, b in g2.edge_list()]
    return ColouredGraph(g1.dim, nodes, edges), (left, right)
