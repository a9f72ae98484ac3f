"""Typed AST of the skillset DSL.

Nodes are frozen dataclasses. Source spans are carried for diagnostics but
take no part in equality, so a re-parsed AST compares equal to the original
whatever its layout.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

from ..utils.diagnostics import NO_SPAN, Span

KEYWORDS = frozenset({
    "skillset", "resource", "state", "initial", "transition", "all", "skill",
    "input", "output", "precondition", "start", "invariant", "guard",
    "interrupt", "effect", "success", "failure",
})


@dataclass(frozen=True)
class Atom:
    """``resource == state`` or ``resource != state``."""

    resource: str
    op: str
    state: str
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class Not:
    operand: "GuardExpr"


@dataclass(frozen=True)
class And:
    left: "GuardExpr"
    right: "GuardExpr"


@dataclass(frozen=True)
class Or:
    left: "GuardExpr"
    right: "GuardExpr"


GuardExpr = Union[Atom, Not, And, Or]


@dataclass(frozen=True)
class Effect:
    """Assignment ``resource -> state``."""

    resource: str
    state: str
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class Param:
    """Input or output declaration; the type tag is opaque."""

    name: str
    type_tag: str
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class Invariant:
    name: str
    guard: GuardExpr
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class Case:
    """A named success or failure outcome with its effects."""

    name: str
    effects: Tuple[Effect, ...] = ()
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class ResourceDecl:
    """A resource state machine. ``transitions`` is None for ``transition all``.

    ``state_spans`` holds the source position of each entry of ``states``
    when the resource was parsed.
    """

    name: str
    states: Tuple[str, ...]
    initial: str
    transitions: Optional[Tuple[Tuple[str, str], ...]] = None
    span: Span = field(default=NO_SPAN, compare=False)
    state_spans: Tuple[Span, ...] = field(default=(), compare=False)

    def allowed_transitions(self) -> Tuple[Tuple[str, str], ...]:
        """Ordered pairs of distinct states this resource may move between."""
        if self.transitions is None:
            return tuple((p, q) for p in self.states for q in self.states if p != q)
        seen = []
        for pair in self.transitions:
            if pair[0] != pair[1] and pair not in seen:
                seen.append(pair)
        return tuple(seen)


@dataclass(frozen=True)
class SkillDecl:
    name: str
    inputs: Tuple[Param, ...] = ()
    outputs: Tuple[Param, ...] = ()
    precondition: Optional[GuardExpr] = None
    start_effects: Tuple[Effect, ...] = ()
    invariants: Tuple[Invariant, ...] = ()
    interrupt_effects: Tuple[Effect, ...] = ()
    success_cases: Tuple[Case, ...] = ()
    failure_cases: Tuple[Case, ...] = ()
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class SkillsetAst:
    name: str
    resources: Tuple[ResourceDecl, ...] = ()
    skills: Tuple[SkillDecl, ...] = ()
    span: Span = field(default=NO_SPAN, compare=False)

    def resource(self, name: str) -> Optional[ResourceDecl]:
        return next((r for r in self.resources if r.name == name), None)

    def skill(self, name: str) -> Optional[SkillDecl]:
        return next((s for s in self.skills if s.name == name), None)


def iter_atoms(guard: GuardExpr) -> Iterator[Atom]:
    """Yield the atoms of a guard, left to right."""
    stack = [guard]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            yield node
        elif isinstance(node, Not):
            stack.append(node.operand)
        else:
            stack.append(node.right)
            stack.append(node.left)


def evaluate_guard(guard: GuardExpr, assignment: Mapping[str, str]) -> bool:
    """Evaluate a guard under a resource → state assignment."""
    if isinstance(guard, Atom):
        equal = assignment[guard.resource] == guard.state
        return equal if guard.op == "==" else not equal
    if isinstance(guard, Not):
        return not evaluate_guard(guard.operand, assignment)
    if isinstance(guard, And):
        return evaluate_guard(guard.left, assignment) and evaluate_guard(guard.right, assignment)
    return evaluate_guard(guard.left, assignment) or evaluate_guard(guard.right, assignment)


def guard_to_dict(guard: GuardExpr) -> Dict:
    if isinstance(guard, Atom):
        return {"atom": {"resource": guard.resource, "op": guard.op, "state": guard.state}}
    if isinstance(guard, Not):
        return {"not": guard_to_dict(guard.operand)}
    key = "and" if isinstance(guard, And) else "or"
    return {key: [guard_to_dict(guard.left), guard_to_dict(guard.right)]}
