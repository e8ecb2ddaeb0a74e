"""AC, ACR and AC+ layers and classifiers, executed in exact arithmetic.

A layer computes, for every node v with state x = λ(v),

    AC   σ(x·C + agg(N(v))·A + b)
    ACR  σ(x·C + agg(N(v))·A + read(V)·R + b)
    AC+  σ(x·C + agg(N(v))·A + āgg(N̄(v))·Ā + b)

where N̄(v) are the non-neighbours of v other than v itself.  Matrices are
stored row-major with one row per input coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..graph import ColouredGraph, PointedGraph
from .aggregate import Aggregator, aggregate_column, norm

LAYER_KINDS = ("AC", "ACR", "ACPlus")
ACTIVATIONS = ("truncated-relu", "identity")


class GnnError(ValueError):
    pass


def as_rational(x):
    if isinstance(x, bool):
        raise GnnError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return norm(x)
    if isinstance(x, str):
        try:
            return norm(Fraction(x))
        except (ValueError, ZeroDivisionError):
            raise GnnError(f"not a rational: {x!r}") from None
    raise GnnError(f"not an exact rational: {x!r}")


def _matrix(rows, name):
    out = tuple(tuple(as_rational(x) for x in row) for row in rows)
    widths = {len(r) for r in out}
    if len(widths) > 1:
        raise GnnError(f"{name}: ragged matrix")
    return out


def _sparse(mat):
    return tuple((i, j, w) for i, row in enumerate(mat) for j, w in enumerate(row) if w != 0)


def activate(name, x):
    if name == "identity":
        return x
    if x <= 0:
        return 0
    if x >= 1:
        return 1
    return x


@dataclass(frozen=True)
class Layer:
    kind: str
    agg: Aggregator
    C: tuple
    A: tuple
    bias: tuple
    extra: tuple | None = None        # R for ACR, Ā for AC+
    agg2: Aggregator | None = None    # read for ACR, āgg for AC+
    activation: str = "truncated-relu"
    _plan: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in LAYER_KINDS:
            raise GnnError(f"unknown layer kind {self.kind!r}")
        if self.activation not in ACTIVATIONS:
            raise GnnError(f"unknown activation {self.activation!r}")
        C = _matrix(self.C, "C")
        A = _matrix(self.A, "A")
        bias = tuple(as_rational(x) for x in self.bias)
        out = len(bias)
        if len(C) != len(A):
            raise GnnError(f"C has {len(C)} rows but A has {len(A)}; aggregation keeps the dimension")
        for name, mat in (("C", C), ("A", A)):
            if mat and len(mat[0]) != out:
                raise GnnError(f"{name} has {len(mat[0])} columns, bias has {out}")
        extra = None
        if self.kind == "AC":
            if self.extra is not None or self.agg2 is not None:
                raise GnnError("AC layers have no readout or non-neighbour block")
        else:
            if self.extra is None or self.agg2 is None:
                raise GnnError(f"{self.kind} layers need a second aggregator and matrix")
            extra = _matrix(self.extra, "R" if self.kind == "ACR" else "Abar")
            if len(extra) != len(C) or (extra and len(extra[0]) != out):
                raise GnnError("second matrix has the wrong shape")
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "bias", bias)
        object.__setattr__(self, "extra", extra)
        plan = (_sparse(C), _sparse(A), _sparse(extra) if extra is not None else (),
                sorted({i for i, _, _ in _sparse(A)}),
                sorted({i for i, _, _ in _sparse(extra)}) if extra is not None else [])
        object.__setattr__(self, "_plan", plan)

    @property
    def in_dim(self) -> int:
        return len(self.C)

    @property
    def out_dim(self) -> int:
        return len(self.bias)

    def aggregators(self) -> list:
        return [self.agg] + ([self.agg2] if self.agg2 is not None else [])


@dataclass(frozen=True)
class Cls:
    """Classification rule: coordinate ``t`` equals 1, or is at least θ."""

    coordinate: int
    predicate: str = "=1"
    threshold: object = None

    def __post_init__(self):
        if self.predicate == "=1":
            if self.threshold is not None:
                raise GnnError("'=1' takes no threshold")
        elif self.predicate == ">=":
            object.__setattr__(self, "threshold", as_rational(self.threshold))
        else:
            raise GnnError(f"unknown predicate {self.predicate!r}")

    def __call__(self, vec) -> bool:
        x = vec[self.coordinate]
        return x == 1 if self.predicate == "=1" else x >= self.threshold


@dataclass(frozen=True)
class GnnClassifier:
    input_dim: int
    layers: tuple
    cls: Cls

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        d = self.input_dim
        if not isinstance(d, int) or d < 1:
            raise GnnError("input dimension must be positive")
        for i, layer in enumerate(self.layers):
            if layer.in_dim != d:
                raise GnnError(f"layer {i} expects dimension {layer.in_dim}, gets {d}")
            d = layer.out_dim
        if not 0 <= self.cls.coordinate < d:
            raise GnnError(f"cls coordinate {self.cls.coordinate} outside final dimension {d}")

    @property
    def output_dim(self) -> int:
        return self.layers[-1].out_dim if self.layers else self.input_dim

    def aggregators(self) -> list:
        return [a for layer in self.layers for a in layer.aggregators()]

    @property
    def bounded(self) -> bool:
        return all(a.bounded for a in self.aggregators())

    def max_bound(self) -> int | None:
        """Largest aggregator bound, or None when some aggregator is unbounded."""
        if not self.bounded:
            return None
        return max((a.bound for a in self.aggregators()), default=1)

    def family(self) -> str | None:
        kinds = {layer.kind for layer in self.layers}
        if not kinds:
            return "AC"
        return kinds.pop() if len(kinds) == 1 else None


def validate_family(n: GnnClassifier, family: str, set_based: bool = False) -> None:
    """Reject classifiers outside the bounded family (or set-based if asked)."""
    if family not in LAYER_KINDS:
        raise GnnError(f"unknown family {family!r}")
    kinds = {layer.kind for layer in n.layers}
    if kinds - {family}:
        raise GnnError(f"layers of kind {sorted(kinds - {family})} outside family {family}")
    for a in n.aggregators():
        if not a.bounded:
            raise GnnError(f"aggregator {a.name()} is unbounded")
        if set_based and a.bound != 1:
            raise GnnError(f"aggregator {a.name()} is not set-based")


def _apply(layer: Layer, g: ColouredGraph, labels: list) -> list:
    c_sp, a_sp, x_sp, a_rows, x_rows = layer._plan
    adj = g.adjacency()
    n = len(labels)
    readout = None
    if layer.kind == "ACR" and x_rows:
        readout = {i: aggregate_column(layer.agg2, [lab[i] for lab in labels]) for i in x_rows}
    out = []
    for v in range(n):
        x = labels[v]
        acc = list(layer.bias)
        for i, j, w in c_sp:
            if x[i]:
                acc[j] += x[i] * w
        if a_sp:
            nb = [labels[u] for u in adj[v]]
            y = {i: aggregate_column(layer.agg, [lab[i] for lab in nb]) for i in a_rows}
            for i, j, w in a_sp:
                if y[i]:
                    acc[j] += y[i] * w
        if x_sp:
            if layer.kind == "ACR":
                z = readout
            else:
                near = set(adj[v])
                far = [labels[u] for u in range(n) if u != v and u not in near]
                z = {i: aggregate_column(layer.agg2, [lab[i] for lab in far]) for i in x_rows}
            for i, j, w in x_sp:
                if z[i]:
                    acc[j] += z[i] * w
        out.append(tuple(norm(activate(layer.activation, s)) for s in acc))
    return out


def _initial(g: ColouredGraph) -> list:
    return [bits for _, bits in g.nodes]


def _check_dims(n: GnnClassifier, g: ColouredGraph):
    if g.dim != n.input_dim:
        raise GnnError(f"graph dimension {g.dim} does not match classifier input {n.input_dim}")


def apply_layer(layer: Layer, g: ColouredGraph, labels: dict) -> dict:
    """One layer over a labelling given as node id → vector."""
    ids = g.ids
    vecs = [tuple(as_rational(x) for x in labels[i]) for i in ids]
    for i, v in zip(ids, vecs):
        if len(v) != layer.in_dim:
            raise GnnError(f"label of {i!r} has dimension {len(v)}, layer expects {layer.in_dim}")
    return dict(zip(ids, _apply(layer, g, vecs)))


def run_levels(n: GnnClassifier, g: ColouredGraph) -> list:
    """All labellings λ^(0..L), each a list in node-index order."""
    _check_dims(n, g)
    levels = [_initial(g)]
    for layer in n.layers:
        levels.append(_apply(layer, g, levels[-1]))
    return levels


def run(n: GnnClassifier, g: ColouredGraph) -> dict:
    return dict(zip(g.ids, run_levels(n, g)[-1]))


def classify_all(n: GnnClassifier, g: ColouredGraph) -> dict:
    return {v: n.cls(vec) for v, vec in run(n, g).items()}


def classify(n: GnnClassifier, pg: PointedGraph) -> bool:
    final = run_levels(n, pg.graph)[-1]
    return n.cls(final[pg.graph.index(pg.point)])
