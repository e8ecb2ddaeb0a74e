"""Formula ASTs for the modal logics and the two-variable counting logic.

One node hierarchy serves all logics.  A modal formula uses ``Diamond`` and
``Exists``; an EMLC formula uses ``Modal``; propositional formulas (only
``Prop``/``Not``/``And``) belong to both.  C² formulas use their own atoms
and quantifier but share ``Not``/``And``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union


class FormulaError(ValueError):
    pass


def _check_grade(k):
    if not isinstance(k, int) or isinstance(k, bool):
        raise FormulaError(f"grade must be an integer, got {k!r}")
    if k < 1:
        raise FormulaError("grades start at 1")


@dataclass(frozen=True)
class Prop:
    index: int  # bit position, printed 1-based

    def __post_init__(self):
        if not isinstance(self.index, int) or self.index < 0:
            raise FormulaError(f"proposition index must be >= 0, got {self.index!r}")


@dataclass(frozen=True)
class Not:
    sub: "Node"


@dataclass(frozen=True)
class And:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Diamond:
    k: int
    sub: "Node"

    def __post_init__(self):
        _check_grade(self.k)


@dataclass(frozen=True)
class Exists:
    k: int
    sub: "Node"

    def __post_init__(self):
        _check_grade(self.k)


# Modal parameters, keyed by their concrete syntax.
RELATIONS = ("id", "nid", "e", "ne", "id+e", "nid&ne", "e+ne", "e&ne")
RELATION_NAMES = {
    "id": "id", "nid": "¬id", "e": "e", "ne": "¬e",
    "id+e": "id∪e", "nid&ne": "¬id∩¬e", "e+ne": "e∪¬e", "e&ne": "e∩¬e",
}


@dataclass(frozen=True)
class Modal:
    rel: str
    k: int
    sub: "Node"

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise FormulaError(f"unknown modal parameter {self.rel!r}")
        _check_grade(self.k)


VARS = ("x", "y")


def _check_var(v):
    if v not in VARS:
        raise FormulaError(f"variables are x and y, got {v!r}")


@dataclass(frozen=True)
class Unary:
    index: int
    var: str

    def __post_init__(self):
        _check_var(self.var)
        if not isinstance(self.index, int) or self.index < 0:
            raise FormulaError(f"predicate index must be >= 0, got {self.index!r}")


@dataclass(frozen=True)
class EdgeAtom:
    t1: str
    t2: str

    def __post_init__(self):
        _check_var(self.t1)
        _check_var(self.t2)


@dataclass(frozen=True)
class Eq:
    t1: str
    t2: str

    def __post_init__(self):
        _check_var(self.t1)
        _check_var(self.t2)


@dataclass(frozen=True)
class CountExists:
    k: int
    var: str
    sub: "Node"

    def __post_init__(self):
        _check_grade(self.k)
        _check_var(self.var)


Node = Union[Prop, Not, And, Diamond, Exists, Modal, Unary, EdgeAtom, Eq, CountExists]
Formula = Union[Prop, Not, And, Diamond, Exists]
EmlcFormula = Union[Prop, Not, And, Modal]
C2Formula = Union[Unary, EdgeAtom, Eq, Not, And, CountExists]

_GRADED = (Diamond, Exists, Modal, CountExists)


def children(f) -> tuple:
    if isinstance(f, And):
        return (f.left, f.right)
    if isinstance(f, (Not, Diamond, Exists, Modal, CountExists)):
        return (f.sub,)
    return ()


def walk(f) -> Iterator:
    """Pre-order traversal (every occurrence, duplicates included)."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(children(g)))


def depth(f) -> int:
    if isinstance(f, _GRADED):
        return 1 + depth(f.sub)
    return max((depth(c) for c in children(f)), default=0)


def counting_rank(f) -> int:
    return max((g.k for g in walk(f) if isinstance(g, _GRADED)), default=0)


def max_prop(f) -> int:
    """Largest proposition index used, or -1 when there is none."""
    return max((g.index for g in walk(f) if isinstance(g, (Prop, Unary))), default=-1)


def is_modal(f) -> bool:
    return all(isinstance(g, (Prop, Not, And, Diamond, Exists)) for g in walk(f))


def is_emlc(f) -> bool:
    return all(isinstance(g, (Prop, Not, And, Modal)) for g in walk(f))


def is_c2(f) -> bool:
    return all(isinstance(g, (Unary, EdgeAtom, Eq, Not, And, CountExists)) for g in walk(f))


def classify_fragment(f) -> str:
    """Smallest fragment tag containing ``f``.

    Propositional formulas count as modal, so their tag is ML.
    """
    nodes = list(walk(f))
    if any(isinstance(g, Modal) for g in nodes):
        if not is_emlc(f):
            raise FormulaError("formula mixes EMLC modal parameters with ◇/∃")
        return "EML" if all(g.k == 1 for g in nodes if isinstance(g, Modal)) else "EMLC"
    if not is_modal(f):
        raise FormulaError("not a modal formula")
    graded = any(isinstance(g, (Diamond, Exists)) and g.k > 1 for g in nodes)
    if any(isinstance(g, Exists) for g in nodes):
        return "GMLC" if graded else "MLE"
    return "GML" if graded else "ML"


FRAGMENT_ORDER = {
    "ML": {"ML"}, "GML": {"ML", "GML"}, "MLE": {"ML", "MLE"},
    "GMLC": {"ML", "GML", "MLE", "GMLC"}, "EML": {"EML"}, "EMLC": {"EML", "EMLC"},
}


def in_fragment(f, tag: str) -> bool:
    """Purely propositional formulas belong to every fragment."""
    if all(isinstance(g, (Prop, Not, And)) for g in walk(f)):
        return tag in FRAGMENT_ORDER
    return classify_fragment(f) in FRAGMENT_ORDER[tag]


# Derived connectives used by the characteristic formulas.

def conj(items) -> Node:
    """Left-nested conjunction; the empty conjunction is ⊤ = ¬(p1 ∧ ¬p1)."""
    items = list(items)
    if not items:
        return TOP
    out = items[0]
    for g in items[1:]:
        out = And(out, g)
    return out


def disj(items) -> Node:
    """Disjunction via De Morgan; the empty disjunction is ⊥ = p1 ∧ ¬p1."""
    items = list(items)
    if not items:
        return BOTTOM
    if len(items) == 1:
        return items[0]
    return Not(conj(Not(g) for g in items))


def conjuncts(f) -> list:
    """Flatten nested conjunctions into their leaves, left to right."""
    if isinstance(f, And):
        return conjuncts(f.left) + conjuncts(f.right)
    return [f]


BOTTOM = And(Prop(0), Not(Prop(0)))
TOP = Not(BOTTOM)


def free_vars(f) -> set:
    if isinstance(f, Unary):
        return {f.var}
    if isinstance(f, (EdgeAtom, Eq)):
        return {f.t1, f.t2}
    if isinstance(f, CountExists):
        return free_vars(f.sub) - {f.var}
    out = set()
    for c in children(f):
        out |= free_vars(c)
    return out
