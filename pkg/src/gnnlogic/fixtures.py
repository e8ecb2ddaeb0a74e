"""Small reference models and formulas shared by tests, docs and the CLI.

``M`` is a star whose centre ``v`` (labelled p) has two p-neighbours and one
q-neighbour; ``M_PRIME`` adds a fourth, unlabelled neighbour.  The two are
told apart in one round with grade 3, although the graded bisimulation
characteristic formula without its closure conjunct does not notice.
"""

from __future__ import annotations

from .graph import ColouredGraph, PointedGraph
from .logic import (And, CountExists, EdgeAtom, Modal, Not, Prop, Unary, parse_formula)

M = ColouredGraph(2, [("v", [1, 0]), ("u1", [1, 0]), ("u2", [1, 0]), ("u3", [0, 1])],
                  [("v", "u1"), ("v", "u2"), ("v", "u3")])
M_PRIME = ColouredGraph(
    2, [("v", [1, 0]), ("u1", [1, 0]), ("u2", [1, 0]), ("u3", [0, 1]), ("u4", [0, 0])],
    [("v", "u1"), ("v", "u2"), ("v", "u3"), ("v", "u4")])

M_AT_V = PointedGraph(M, "v")
M_PRIME_AT_V = PointedGraph(M_PRIME, "v")

PHI_GML = parse_formula("<3>p1 & !<3>p2")
PHI_GMLC = parse_formula("<3>p1 & E3 !<3>p2")
# ¬⟨e⟩³p ∧ ⟨e∪¬e⟩³(p ∧ ⟨¬e⟩³p), over a single proposition
PHI_EMLC = And(Not(Modal("e", 3, Prop(0))),
               Modal("e+ne", 3, And(Prop(0), Modal("ne", 3, Prop(0)))))

# The two-variable counting formula with the same meaning as PHI_EMLC:
# ¬∃³y(R(x,y) ∧ P(y)) ∧ ∃³x(P(x) ∧ ∃³y(¬R(x,y) ∧ P(y)))
PHI_C2 = And(
    Not(CountExists(3, "y", And(EdgeAtom("x", "y"), Unary(0, "y")))),
    CountExists(3, "x", And(Unary(0, "x"),
                            CountExists(3, "y", And(Not(EdgeAtom("x", "y")), Unary(0, "y"))))),
)
