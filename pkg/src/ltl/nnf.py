"""Negation normal form."""

from .formula import (
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
)


def _nnf(formula: LtlFormula, negated: bool) -> LtlFormula:
    if isinstance(formula, Const):
        return Const(formula.value != negated)
    if isinstance(formula, Atom):
        return Not(formula) if negated else formula
    if isinstance(formula, Not):
        return _nnf(formula.operand, not negated)
    if isinstance(formula, Next):
        return Next(_nnf(formula.operand, negated))
    if isinstance(formula, Eventually):
        inner = _nnf(formula.operand, negated)
        return Always(inner) if negated else Eventually(inner)
    if isinstance(formula, Always):
        inner = _nnf(formula.operand, negated)
        return Eventually(inner) if negated else Always(inner)
    if isinstance(formula, Implies):
        left = _nnf(formula.left, not negated)
        right = _nnf(formula.right, negated)
        return And(left, right) if negated else Or(left, right)
    left = _nnf(formula.left, negated)
    right = _nnf(formula.right, negated)
    dual = {And: Or, Or: And, Until: Release, Release: Until}
    cls = dual[type(formula)] if negated else type(formula)
    return cls(left, right)


def to_nnf(formula: LtlFormula) -> LtlFormula:
    """
    Push negations down to the atoms and eliminate ``->``.

    F and G are kept; the Büchi translation reads them as ``true U`` and
    ``false R``.

    Example:
        >>> str(to_nnf(parse_ltl("!(F G (a @ q))")))
        'G F !(a @ q)'
    """
    return _nnf(formula, False)


def negate(formula: LtlFormula) -> LtlFormula:
    """NNF of the negation of ``formula``."""
    return _nnf(formula, True)


def is_nnf(formula: LtlFormula) -> bool:
    if isinstance(formula, Not):
        return isinstance(formula.operand, Atom)
    if isinstance(formula, Implies):
        return False
    if isinstance(formula, (Const, Atom)):
        return True
    if isinstance(formula, (Next, Eventually, Always)):
        return is_nnf(formula.operand)
    return is_nnf(formula.left) and is_nnf(formula.right)
