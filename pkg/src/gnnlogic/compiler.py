"""Compile modal formulas into bounded GNN classifiers.

Every subformula gets one coordinate.  Layer 0 copies each input bit into
the coordinates of its proposition.  The remaining layers all share one
(C, A, second block, b); with the truncated ReLU each application pushes
correct truth values one level further up the subformula order, so after
as many layers as there are subformulas the last coordinate holds the
truth value of the whole formula.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gnn import Cls, GnnClassifier, Layer, max_k_sum
from .logic import (And, Diamond, Exists, Modal, Not, Prop, classify_fragment,
                    counting_rank, is_emlc, is_modal, max_prop, print_formula)
from .logic.syntax import children


class CompileError(ValueError):
    pass


def subformula_order(f) -> list:
    """Distinct subformulas, each after all of its own subformulas.

    Ordered by height (propositions first), ties broken by first occurrence
    in a left-to-right post-order walk.
    """
    first = {}
    height = {}

    def visit(g):
        if g in height:
            return height[g]
        h = 1 + max((visit(c) for c in children(g)), default=-1)
        height[g] = h
        first.setdefault(g, len(first))
        return h

    visit(f)
    return sorted(first, key=lambda g: (height[g], first[g]))


@dataclass(frozen=True)
class CompilationArtifact:
    classifier: GnnClassifier
    order: tuple
    family: str
    D: tuple
    C: tuple
    A: tuple
    R: tuple | None
    Abar: tuple | None
    b: tuple
    n: int

    def columns(self) -> list:
        return [print_formula(g) for g in self.order]


def _zeros(rows, cols):
    return [[0] * cols for _ in range(rows)]


def build_classifier(family, D, C, A, X, b, n) -> GnnClassifier:
    """Assemble the lifting layer plus len(b) copies of the shared layer."""
    dim, L = len(D), len(b)
    agg = max_k_sum(n)
    agg2 = agg if family != "AC" else None
    lift = Layer(family, agg, D, _zeros(dim, L), [0] * L,
                 _zeros(dim, L) if family != "AC" else None, agg2, activation="identity")
    body = Layer(family, agg, C, A, b, X if family != "AC" else None, agg2)
    return GnnClassifier(dim, [lift] + [body] * L, Cls(L - 1))


def _compile(f, family: str, dim: int | None) -> CompilationArtifact:
    order = subformula_order(f)
    L = len(order)
    idx = {g: i for i, g in enumerate(order)}
    need = max_prop(f) + 1
    if dim is None:
        dim = max(need, 1)
    elif need > dim:
        raise CompileError(f"formula uses p{need} but the input dimension is {dim}")
    D = _zeros(dim, L)
    C, A, X = _zeros(L, L), _zeros(L, L), _zeros(L, L)
    b = [0] * L
    for l, g in enumerate(order):
        if isinstance(g, Prop):
            D[g.index][l] = 1
            C[l][l] = 1
        elif isinstance(g, And):
            C[idx[g.left]][l] += 1
            C[idx[g.right]][l] += 1
            b[l] = -1
        elif isinstance(g, Not):
            C[idx[g.sub]][l] = -1
            b[l] = 1
        elif isinstance(g, Diamond):
            A[idx[g.sub]][l] = 1
            b[l] = -g.k + 1
        elif isinstance(g, Exists):
            X[idx[g.sub]][l] = 1
            b[l] = -g.k + 1
        elif isinstance(g, Modal):
            k = idx[g.sub]
            rel = g.rel
            if rel == "id":
                if g.k != 1:
                    raise CompileError("⟨id⟩ with grade above 1 is constant false; not compiled")
                C[k][l] = 1
                continue
            if rel in ("ne", "id+e", "e+ne"):
                C[k][l] = 1
            if rel in ("nid", "e", "id+e", "e+ne"):
                A[k][l] = 1
            if rel in ("nid", "ne", "nid&ne", "e+ne"):
                X[k][l] = 1
            b[l] = -g.k + 1
        else:
            raise CompileError(f"cannot compile {type(g).__name__}")
    n = counting_rank(f) or 1
    clf = build_classifier(family, D, C, A, X, b, n)
    tup = lambda m: tuple(tuple(r) for r in m)
    return CompilationArtifact(
        clf, tuple(order), family, tup(D), tup(C), tup(A),
        tup(X) if family == "ACR" else None, tup(X) if family == "ACPlus" else None,
        tuple(b), n)


def compile_gml(f, dim: int | None = None) -> CompilationArtifact:
    if not is_modal(f) or classify_fragment(f) not in ("ML", "GML"):
        raise CompileError("compile_gml accepts GML formulas only (no ∃, no EMLC parameters)")
    return _compile(f, "AC", dim)


def compile_gmlc(f, dim: int | None = None) -> CompilationArtifact:
    if not is_modal(f):
        raise CompileError("compile_gmlc accepts formulas over ◇ and ∃ only")
    return _compile(f, "ACR", dim)


def compile_emlc(f, dim: int | None = None) -> CompilationArtifact:
    if not is_emlc(f):
        raise CompileError("compile_emlc accepts EMLC formulas only")
    return _compile(f, "ACPlus", dim)


COMPILERS = {"gml": compile_gml, "gmlc": compile_gmlc, "emlc": compile_emlc}
