"""Concrete syntax for modal and EMLC formulas.

Grammar::

    f     := conj
    conj  := unary ("&" unary)*            # left-associative
    unary := "!" unary | "<" INT ">" unary | "E" INT unary
           | "[" S ";" INT "]" unary | atom | "(" f ")"
    atom  := "p" INT                        # p1 is bit 0
    S     := id | nid | e | ne | id+e | nid&ne | e+ne | e&ne
"""

from __future__ import annotations

import re

from .syntax import (RELATIONS, And, CountExists, Diamond, EdgeAtom, Eq, Exists,
                     FormulaError, Modal, Not, Prop, Unary)


class FormulaSyntaxError(FormulaError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|(\[[^\]]*\])|(.))")


def _tokenize(text):
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        start = m.start(1) if m.group(1) else m.start(2) if m.group(2) else m.start(3)
        if m.group(1):
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("rel", m.group(2), start))
        else:
            toks.append((m.group(3), m.group(3), start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind):
        tok = self.toks[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise FormulaSyntaxError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def grade(self):
        tok = self.take("int")
        if tok[1] < 1:
            raise FormulaSyntaxError("grades start at 1", tok[2])
        return tok[1]

    def formula(self):
        f = self.unary()
        while self.peek()[0] == "&":
            self.i += 1
            f = And(f, self.unary())
        return f

    def unary(self):
        kind, val, pos = self.peek()
        if kind == "!":
            self.i += 1
            return Not(self.unary())
        if kind == "<":
            self.i += 1
            k = self.grade()
            self.take(">")
            return Diamond(k, self.unary())
        if kind == "E":
            self.i += 1
            return Exists(self.grade(), self.unary())
        if kind == "rel":
            self.i += 1
            return self.modal(val, pos)
        if kind == "p":
            self.i += 1
            tok = self.take("int")
            if tok[1] < 1:
                raise FormulaSyntaxError("propositions start at p1", tok[2])
            return Prop(tok[1] - 1)
        if kind == "(":
            self.i += 1
            f = self.formula()
            self.take(")")
            return f
        what = "end of input" if kind == "end" else repr(val)
        raise FormulaSyntaxError(f"unexpected {what}", pos)

    def modal(self, text, pos):
        body = text[1:-1]
        if ";" not in body:
            raise FormulaSyntaxError("modal parameter needs the form [S;INT]", pos)
        rel, _, k = body.partition(";")
        rel = re.sub(r"\s+", "", rel)
        k = k.strip()
        if rel not in RELATIONS:
            raise FormulaSyntaxError(f"unknown modal parameter {rel!r}", pos)
        if not k.isdigit():
            raise FormulaSyntaxError(f"bad grade {k!r}", pos)
        if int(k) < 1:
            raise FormulaSyntaxError("grades start at 1", pos)
        return Modal(rel, int(k), self.unary())


def parse_formula(text: str):
    p = _Parser(text)
    f = p.formula()
    kind, val, pos = p.peek()
    if kind != "end":
        raise FormulaSyntaxError(f"trailing input {val!r}", pos)
    return f


def print_formula(f) -> str:
    if isinstance(f, Prop):
        return f"p{f.index + 1}"
    if isinstance(f, Not):
        return "!" + print_formula(f.sub)
    if isinstance(f, And):
        return f"({print_formula(f.left)} & {print_formula(f.right)})"
    if isinstance(f, Diamond):
        return f"<{f.k}>" + print_formula(f.sub)
    if isinstance(f, Exists):
        return f"E{f.k} " + print_formula(f.sub)
    if isinstance(f, Modal):
        return f"[{f.rel};{f.k}]" + print_formula(f.sub)
    # C² formulas have no parser; this rendering is for reports only.
    if isinstance(f, Unary):
        return f"P{f.index + 1}({f.var})"
    if isinstance(f, EdgeAtom):
        return f"R({f.t1},{f.t2})"
    if isinstance(f, Eq):
        return f"{f.t1}={f.t2}"
    if isinstance(f, CountExists):
        return f"E{f.k}{f.var}." + print_formula(f.sub)
    raise FormulaError(f"not a formula: {f!r}")
