"""LTL formulas over component-state atoms."""

import re
from dataclasses import dataclass
from typing import Iterator, Tuple

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_KEYWORDS = frozenset({"true", "false", "X", "F", "G", "U", "R"})


class LtlFormula:
    """Base class of formula nodes; ``str()`` gives re-parsable text."""

    def __str__(self) -> str:
        return format_ltl(self)


@dataclass(frozen=True, repr=False)
class Const(LtlFormula):
    value: bool

    def __repr__(self) -> str:
        return "TRUE" if self.value else "FALSE"


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True, repr=False)
class Atom(LtlFormula):
    """``component @ state``: true when the component is in that local state."""

    component: str
    state: str

    def __repr__(self) -> str:
        return f"Atom({self.component!r}, {self.state!r})"


@dataclass(frozen=True)
class Not(LtlFormula):
    operand: LtlFormula


@dataclass(frozen=True)
class Next(LtlFormula):
    operand: LtlFormula


@dataclass(frozen=True)
class Eventually(LtlFormula):
    operand: LtlFormula


@dataclass(frozen=True)
class Always(LtlFormula):
    operand: LtlFormula


@dataclass(frozen=True)
class And(LtlFormula):
    left: LtlFormula
    right: LtlFormula


@dataclass(frozen=True)
class Or(LtlFormula):
    left: LtlFormula
    right: LtlFormula


@dataclass(frozen=True)
class Implies(LtlFormula):
    left: LtlFormula
    right: LtlFormula


@dataclass(frozen=True)
class Until(LtlFormula):
    left: LtlFormula
    right: LtlFormula


@dataclass(frozen=True)
class Release(LtlFormula):
    left: LtlFormula
    right: LtlFormula


UNARY = {Not: "!", Next: "X", Eventually: "F", Always: "G"}
BINARY = {And: "&&", Or: "||", Implies: "->", Until: "U", Release: "R"}


def _name(text: str) -> str:
    if _IDENT.match(text) and text not in _KEYWORDS:
        return text
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def format_ltl(formula: LtlFormula) -> str:
    """Print a formula with every binary operator parenthesized."""
    if isinstance(formula, Const):
        return "true" if formula.value else "false"
    if isinstance(formula, Atom):
        return f"{_name(formula.component)} @ {_name(formula.state)}"
    op = UNARY.get(type(formula))
    if op is not None:
        inner = format_ltl(formula.operand)
        if isinstance(formula.operand, Atom):
            inner = f"({inner})"
        return f"{op}{inner}" if op == "!" else f"{op} {inner}"
    return f"({format_ltl(formula.left)} {BINARY[type(formula)]} {format_ltl(formula.right)})"


def children(formula: LtlFormula) -> Tuple[LtlFormula, ...]:
    if isinstance(formula, (Const, Atom)):
        return ()
    if type(formula) in UNARY:
        return (formula.operand,)
    return (formula.left, formula.right)


def subformulas(formula: LtlFormula) -> Iterator[LtlFormula]:
    """All subformulas, each once, parents before children."""
    seen = set()
    stack = [formula]
    while stack:
        node = stack.pop()
        if node in seen:
            continue
        seen.add(node)
        yield node
        stack.extend(reversed(children(node)))


def atoms(formula: LtlFormula) -> Tuple[Atom, ...]:
    """Distinct atoms in first-occurrence order."""
    return tuple(f for f in subformulas(formula) if isinstance(f, Atom))


def depth(formula: LtlFormula) -> int:
    kids = children(formula)
    return 0 if not kids else 1 + max(depth(k) for k in kids)
