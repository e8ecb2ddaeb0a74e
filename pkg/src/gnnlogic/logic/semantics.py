"""Model checking over coloured graphs.

Valuations are computed bottom-up as int bitmasks over the graph's dense
node indices; public functions convert back to node-id sets.
"""

from __future__ import annotations

from ..graph import ColouredGraph, PointedGraph
from .syntax import (And, CountExists, Diamond, EdgeAtom, Eq, Exists, FormulaError,
                     Modal, Not, Prop, Unary, free_vars, is_emlc, is_modal)


class _Model:
    def __init__(self, g: ColouredGraph):
        self.g = g
        self.n = len(g)
        self.full = (1 << self.n) - 1
        self.nbr = [sum(1 << j for j in adj) for adj in g.adjacency()]
        self.props = [
            sum(1 << i for i, (_, bits) in enumerate(g.nodes) if bits[p])
            for p in range(g.dim)
        ]

    def prop(self, i):
        if i >= self.g.dim:
            raise FormulaError(f"proposition p{i + 1} out of range for dim {self.g.dim}")
        return self.props[i]

    def to_ids(self, mask):
        ids = self.g.ids
        return {ids[i] for i in range(self.n) if mask >> i & 1}


def _count_mask(model, counts_ok):
    return sum(1 << v for v in range(model.n) if counts_ok(v))


def _relation_count(model, rel, v, s):
    bit = 1 << v
    if rel == "id":
        return 1 if s & bit else 0
    if rel == "nid":
        return (s & ~bit).bit_count()
    if rel == "e":
        return (s & model.nbr[v]).bit_count()
    if rel == "ne":
        # non-edges include the reflexive pair {v, v}
        return (s & ~model.nbr[v] & model.full).bit_count()
    if rel == "id+e":
        return (s & (model.nbr[v] | bit)).bit_count()
    if rel == "nid&ne":
        return (s & ~(model.nbr[v] | bit) & model.full).bit_count()
    if rel == "e+ne":
        return s.bit_count()
    if rel == "e&ne":
        return 0
    raise FormulaError(f"unknown modal parameter {rel!r}")


def _eval(f, model, memo):
    key = id(f)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    if isinstance(f, Prop):
        out = model.prop(f.index)
    elif isinstance(f, Not):
        out = model.full & ~_eval(f.sub, model, memo)
    elif isinstance(f, And):
        out = _eval(f.left, model, memo) & _eval(f.right, model, memo)
    elif isinstance(f, Diamond):
        s = _eval(f.sub, model, memo)
        out = _count_mask(model, lambda v: (model.nbr[v] & s).bit_count() >= f.k)
    elif isinstance(f, Exists):
        s = _eval(f.sub, model, memo)
        out = model.full if s.bit_count() >= f.k else 0
    elif isinstance(f, Modal):
        s = _eval(f.sub, model, memo)
        out = _count_mask(model, lambda v: _relation_count(model, f.rel, v, s) >= f.k)
    else:
        raise FormulaError(f"unexpected node {type(f).__name__}")
    memo[key] = (f, out)  # keep f alive so its id stays unique
    return out


def eval_mask(f, g: ColouredGraph) -> int:
    """Valuation of a modal or EMLC formula as a bitmask over node indices."""
    return _eval(f, _Model(g), {})


def _check_modal(f):
    if not is_modal(f):
        raise FormulaError("eval_modal expects a formula over ◇/∃ (use eval_emlc for EMLC)")


def _check_emlc(f):
    if not is_emlc(f):
        raise FormulaError("eval_emlc expects an EMLC formula")


def eval_modal(f, g: ColouredGraph) -> set[str]:
    _check_modal(f)
    model = _Model(g)
    return model.to_ids(_eval(f, model, {}))


def eval_emlc(f, g: ColouredGraph) -> set[str]:
    _check_emlc(f)
    model = _Model(g)
    return model.to_ids(_eval(f, model, {}))


def holds(f, pg: PointedGraph) -> bool:
    mask = eval_mask(f, pg.graph)
    return bool(mask >> pg.graph.index(pg.point) & 1)


def eval_c2(f, g: ColouredGraph, assignment: dict) -> bool:
    """First-order semantics with counting quantifiers, by enumeration."""
    missing = free_vars(f) - set(assignment)
    if missing:
        raise FormulaError(f"unassigned free variables: {sorted(missing)}")
    model = _Model(g)
    env = {var: g.index(node) for var, node in assignment.items()}
    return _eval_c2(f, model, env)


def _eval_c2(f, model, env):
    if isinstance(f, Unary):
        return bool(model.prop(f.index) >> env[f.var] & 1)
    if isinstance(f, EdgeAtom):
        return bool(model.nbr[env[f.t1]] >> env[f.t2] & 1)
    if isinstance(f, Eq):
        return env[f.t1] == env[f.t2]
    if isinstance(f, Not):
        return not _eval_c2(f.sub, model, env)
    if isinstance(f, And):
        return _eval_c2(f.left, model, env) and _eval_c2(f.right, model, env)
    if isinstance(f, CountExists):
        count = 0
        inner = dict(env)
        for u in range(model.n):
            inner[f.var] = u
            if _eval_c2(f.sub, model, inner):
                count += 1
                if count >= f.k:
                    return True
        return False
    raise FormulaError(f"unexpected node {type(f).__name__} in a C² formula")
