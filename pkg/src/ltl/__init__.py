"""
Linear temporal logic: formulas, Büchi translation and model checking.
"""

from .buchi import BuchiAutomaton, format_label, label_holds, ltl_to_buchi
from .checker import ENGINES, UnresolvedAtomError, model_check, resolve_atoms
from .evaluate import eval_word
from .formula import (
    FALSE,
    TRUE,
    Always,
    And,
    Atom,
    Const,
    Eventually,
    Implies,
    LtlFormula,
    Next,
    Not,
    Or,
    Release,
    Until,
    atoms,
    depth,
    format_ltl,
    subformulas,
)
from .nnf import is_nnf, negate, to_nnf
from .parser import check_ltl, parse_ltl
from .verdict import HOLDS, VIOLATED, Lasso, Step, Verdict

__all__ = [
    "ENGINES",
    "FALSE",
    "HOLDS",
    "TRUE",
    "VIOLATED",
    "Always",
    "And",
    "Atom",
    "BuchiAutomaton",
    "Const",
    "Eventually",
    "Implies",
    "Lasso",
    "LtlFormula",
    "Next",
    "Not",
    "Or",
    "Release",
    "Step",
    "Until",
    "UnresolvedAtomError",
    "Verdict",
    "atoms",
    "check_ltl",
    "depth",
    "eval_word",
    "format_label",
    "format_ltl",
    "is_nnf",
    "label_holds",
    "ltl_to_buchi",
    "model_check",
    "negate",
    "parse_ltl",
    "resolve_atoms",
    "subformulas",
    "to_nnf",
]
