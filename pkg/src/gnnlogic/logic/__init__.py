from .syntax import (BOTTOM, RELATIONS, TOP, And, CountExists, Diamond, EdgeAtom, Eq, Exists,
                     FormulaError, Modal, Not, Prop, Unary, classify_fragment, conj,
                     conjuncts, counting_rank, depth, disj, free_vars, in_fragment,
                     is_c2, is_emlc, is_modal, max_prop, walk)
from .parser import FormulaSyntaxError, parse_formula, print_formula
from .semantics import eval_c2, eval_emlc, eval_mask, eval_modal, holds
