"""Direct evaluation of LTL on ultimately periodic words."""

from typing import Dict, List, Sequence

from .buchi import Letter, atom_holds
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


def _fixpoint(n: int, succ: List[int], step, start: bool) -> List[bool]:
    values = [start] * n
    changed = True
    while changed:
        changed = False
        for i in reversed(range(n)):
            value = step(i, values[succ[i]])
            if value != values[i]:
                values[i] = value
                changed = True
    return values


def eval_word(formula: LtlFormula, prefix: Sequence[Letter], cycle: Sequence[Letter]) -> bool:
    """
    Truth of ``formula`` on the infinite word ``prefix · cycle^ω``.

    Every position of the lasso stands for one suffix of the infinite word,
    so each subformula is a vector of booleans over the positions; ``U`` is
    the least and ``R`` the greatest fixpoint of its one-step unfolding.

    Args:
        formula: Any LTL formula
        prefix: Letters before the loop
        cycle: Letters of the loop, nonempty

    Returns:
        True if the word satisfies the formula

    Raises:
        ValueError: If the cycle is empty
    """
    if not cycle:
        raise ValueError("cycle must be nonempty")
    word = list(prefix) + list(cycle)
    n = len(word)
    succ = [i + 1 if i + 1 < n else len(prefix) for i in range(n)]
    memo: Dict[LtlFormula, List[bool]] = {}

    def values(f: LtlFormula) -> List[bool]:
        if f in memo:
            return memo[f]
        if isinstance(f, Const):
            result = [f.value] * n
        elif isinstance(f, Atom):
            result = [atom_holds(letter, f) for letter in word]
        elif isinstance(f, Not):
            result = [not v for v in values(f.operand)]
        elif isinstance(f, Next):
            inner = values(f.operand)
            result = [inner[succ[i]] for i in range(n)]
        elif isinstance(f, (And, Or, Implies)):
            left, right = values(f.left), values(f.right)
            if isinstance(f, And):
                result = [a and b for a, b in zip(left, right)]
            elif isinstance(f, Or):
                result = [a or b for a, b in zip(left, right)]
            else:
                result = [not a or b for a, b in zip(left, right)]
        elif isinstance(f, Eventually):
            inner = values(f.operand)
            result = _fixpoint(n, succ, lambda i, later: inner[i] or later, False)
        elif isinstance(f, Always):
            inner = values(f.operand)
            result = _fixpoint(n, succ, lambda i, later: inner[i] and later, True)
        elif isinstance(f, Until):
            left, right = values(f.left), values(f.right)
            result = _fixpoint(n, succ, lambda i, later: right[i] or (left[i] and later), False)
        elif isinstance(f, Release):
            left, right = values(f.left), values(f.right)
            result = _fixpoint(n, succ, lambda i, later: right[i] and (left[i] or later), True)
        else:
            raise TypeError(f"not an LTL formula: {f!r}")
        memo[f] = result
        return result

    return values(formula)[0]
