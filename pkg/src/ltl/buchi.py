"""Translation of LTL formulas in negation normal form to Büchi automata.

The translation is the classic on-the-fly tableau: each node collects the
obligations that hold now (``old``) and from the next position on
(``next``). One acceptance set per ``U`` subformula makes a generalized
automaton, which a round-robin counter turns into an ordinary one. Every
edge leaving a state carries that state's literals as its label, so the
automaton reads the current letter when it leaves a state.
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Collection, Deque, Dict, FrozenSet, List, Sequence, Set, Tuple, Union

import networkx as nx

from .formula import (
    FALSE,
    TRUE,
    Always,
    And,
    Atom,
    Const,
    Eventually,
    LtlFormula,
    Next,
    Not,
    Or,
    Release,
    Until,
    format_ltl,
    subformulas,
)
from .nnf import is_nnf

logger = logging.getLogger(__name__)

Label = FrozenSet[LtlFormula]
Letter = Union[Collection[Atom], Callable[[Atom], bool]]

_INIT = 0


def atom_holds(letter: Letter, atom: Atom) -> bool:
    return letter(atom) if callable(letter) else atom in letter


def label_holds(label: Label, letter: Letter) -> bool:
    """True when every literal of ``label`` holds for ``letter``."""
    for literal in label:
        if isinstance(literal, Atom):
            if not atom_holds(letter, literal):
                return False
        elif atom_holds(letter, literal.operand):
            return False
    return True


def format_label(label: Label) -> str:
    if not label:
        return "true"
    return " && ".join(sorted(format_ltl(lit) for lit in label))


@dataclass(frozen=True)
class BuchiAutomaton:
    """
    A state-based Büchi automaton with symbolic edge labels.

    A label is a conjunction of literals (an empty label is ``true``).
    """

    states: Tuple[int, ...]
    initial: Tuple[int, ...]
    accepting: FrozenSet[int]
    transitions: Tuple[Tuple[int, Label, int], ...]
    _out: Dict[int, List[Tuple[Label, int]]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        out: Dict[int, List[Tuple[Label, int]]] = {q: [] for q in self.states}
        for source, label, target in self.transitions:
            out[source].append((label, target))
        object.__setattr__(self, "_out", out)

    def successors(self, state: int) -> List[Tuple[Label, int]]:
        return self._out[state]

    def accepts_lasso(self, prefix: Sequence[Letter], cycle: Sequence[Letter]) -> bool:
        """
        Decide whether the word ``prefix · cycle^ω`` is accepted.

        Letters are collections of the atoms that hold, or predicates on atoms.

        Raises:
            ValueError: If the cycle is empty
        """
        if not cycle:
            raise ValueError("cycle must be nonempty")
        word = list(prefix) + list(cycle)
        n = len(word)
        loop = len(prefix)

        def next_pos(pos: int) -> int:
            return pos + 1 if pos + 1 < n else loop

        graph = nx.DiGraph()
        queue: Deque[Tuple[int, int]] = deque((q, 0) for q in self.initial)
        graph.add_nodes_from(queue)
        while queue:
            q, pos = queue.popleft()
            for label, target in self._out[q]:
                if label_holds(label, word[pos]):
                    node = (target, next_pos(pos))
                    if node not in graph:
                        queue.append(node)
                    graph.add_edge((q, pos), node)
        for component in nx.strongly_connected_components(graph):
            if not any(q in self.accepting for q, _ in component):
                continue
            if len(component) > 1:
                return True
            (node,) = component
            if graph.has_edge(node, node):
                return True
        return False


@dataclass
class _Node:
    id: int
    incoming: Set[int]
    new: Set[LtlFormula]
    old: Set[LtlFormula] = field(default_factory=set)
    next: Set[LtlFormula] = field(default_factory=set)


def _desugar(formula: LtlFormula) -> LtlFormula:
    """Rewrite F and G into U and R."""
    if isinstance(formula, (Const, Atom, Not)):
        return formula
    if isinstance(formula, Eventually):
        return Until(TRUE, _desugar(formula.operand))
    if isinstance(formula, Always):
        return Release(FALSE, _desugar(formula.operand))
    if isinstance(formula, Next):
        return Next(_desugar(formula.operand))
    return type(formula)(_desugar(formula.left), _desugar(formula.right))


def _is_literal(formula: LtlFormula) -> bool:
    return isinstance(formula, (Const, Atom, Not))


def _complement(literal: LtlFormula) -> LtlFormula:
    return literal.operand if isinstance(literal, Not) else Not(literal)


def _tableau(formula: LtlFormula) -> List[_Node]:
    ids = itertools.count(1)
    finished: List[_Node] = []
    index: Dict[Tuple[FrozenSet[LtlFormula], FrozenSet[LtlFormula]], _Node] = {}
    stack = [_Node(next(ids), {_INIT}, {formula})]
    while stack:
        node = stack.pop()
        if not node.new:
            key = (frozenset(node.old), frozenset(node.next))
            existing = index.get(key)
            if existing is not None:
                existing.incoming |= node.incoming
                continue
            index[key] = node
            finished.append(node)
            stack.append(_Node(next(ids), {node.id}, set(node.next)))
            continue

        eta = min(node.new, key=format_ltl)
        node.new.discard(eta)
        if eta in node.old:
            stack.append(node)
            continue
        if _is_literal(eta):
            if eta == FALSE or _complement(eta) in node.old:
                continue
            if eta != TRUE:
                node.old.add(eta)
            stack.append(node)
            continue
        if isinstance(eta, And):
            node.new |= {eta.left, eta.right} - node.old
            node.old.add(eta)
            stack.append(node)
            continue
        if isinstance(eta, Next):
            node.next.add(eta.operand)
            node.old.add(eta)
            stack.append(node)
            continue

        if isinstance(eta, Or):
            first_new, first_next, second_new = {eta.left}, set(), {eta.right}
        elif isinstance(eta, Until):
            first_new, first_next, second_new = {eta.left}, {eta}, {eta.right}
        else:
            first_new, first_next, second_new = {eta.right}, {eta}, {eta.left, eta.right}
        old = node.old | {eta}
        second = _Node(next(ids), set(node.incoming), node.new | (second_new - old), set(old), set(node.next))
        first = _Node(next(ids), set(node.incoming), node.new | (first_new - old), set(old), node.next | first_next)
        stack.append(second)
        stack.append(first)
    return finished


def ltl_to_buchi(formula: LtlFormula) -> BuchiAutomaton:
    """
    Build a Büchi automaton accepting exactly the models of ``formula``.

    Args:
        formula: Formula in negation normal form (F and G allowed)

    Returns:
        BuchiAutomaton restricted to states reachable from the initial ones

    Raises:
        ValueError: If the formula is not in negation normal form
    """
    if not is_nnf(formula):
        raise ValueError(f"formula is not in negation normal form: {formula}")
    goal = _desugar(formula)
    nodes = _tableau(goal)
    by_id = {n.id: n for n in nodes}
    untils = sorted({f for f in subformulas(goal) if isinstance(f, Until)}, key=format_ltl)
    fair = [
        {n.id for n in nodes if u not in n.old or u.right in n.old or u.right == TRUE}
        for u in untils
    ]
    k = len(fair)

    labels = {n.id: frozenset(f for f in n.old if _is_literal(f)) for n in nodes}
    successors: Dict[int, List[int]] = {n.id: [] for n in nodes}
    for n in nodes:
        for m in sorted(n.incoming):
            if m != _INIT:
                successors[m].append(n.id)

    numbering: Dict[Tuple[int, int], int] = {}
    queue: Deque[Tuple[int, int]] = deque()
    for n in nodes:
        if _INIT in n.incoming:
            numbering[(n.id, 0)] = len(numbering)
            queue.append((n.id, 0))
    initial = tuple(numbering.values())
    transitions: List[Tuple[int, Label, int]] = []
    while queue:
        node, i = queue.popleft()
        j = (i + 1) % k if k and node in fair[i] else i
        for target in successors[node]:
            key = (target, j)
            if key not in numbering:
                numbering[key] = len(numbering)
                queue.append(key)
            transitions.append((numbering[(node, i)], labels[node], numbering[key]))

    if k:
        accepting = frozenset(q for (n, i), q in numbering.items() if i == 0 and n in fair[0])
    else:
        accepting = frozenset(numbering.values())
    automaton = BuchiAutomaton(
        states=tuple(range(len(numbering))),
        initial=initial,
        accepting=accepting,
        transitions=tuple(transitions),
    )
    logger.debug(
        "automaton for %s: %d tableau nodes, %d states, %d transitions",
        formula, len(by_id), len(automaton.states), len(transitions),
    )
    return automaton
