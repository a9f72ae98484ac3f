"""Guarded transition systems over finite-domain integer variables.

Expressions are affine and kept in normal form (a coefficient per variable
plus a constant), so ``d - 1`` and ``-1 + d`` are the same expression.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, Union

from ..utils.diagnostics import NO_SPAN, Span

FUNCTIONAL = "functional"
DECISION = "decision"

Valuation = Tuple[int, ...]


@dataclass(frozen=True)
class Affine:
    """``sum(coeff * var) + const``; coefficients are nonzero, in first-use order."""

    coeffs: Tuple[Tuple[str, int], ...] = ()
    const: int = 0

    @classmethod
    def constant(cls, value: int) -> "Affine":
        return cls((), value)

    @classmethod
    def variable(cls, name: str, coeff: int = 1) -> "Affine":
        return cls(((name, coeff),) if coeff else (), 0)

    def scale(self, k: int) -> "Affine":
        return Affine(tuple((v, c * k) for v, c in self.coeffs if c * k), self.const * k)

    def __add__(self, other: "Affine") -> "Affine":
        coeffs: Dict[str, int] = dict(self.coeffs)
        for name, c in other.coeffs:
            coeffs[name] = coeffs.get(name, 0) + c
        return Affine(tuple((v, c) for v, c in coeffs.items() if c), self.const + other.const)

    def __sub__(self, other: "Affine") -> "Affine":
        return self + other.scale(-1)

    def variables(self) -> Tuple[str, ...]:
        return tuple(v for v, _ in self.coeffs)

    def evaluate(self, env: Mapping[str, int]) -> int:
        return self.const + sum(c * env[v] for v, c in self.coeffs)


@dataclass(frozen=True)
class Compare:
    left: Affine
    op: str
    right: Affine


@dataclass(frozen=True)
class BoolConst:
    value: bool


@dataclass(frozen=True)
class CondNot:
    operand: "Condition"


@dataclass(frozen=True)
class CondAnd:
    left: "Condition"
    right: "Condition"


@dataclass(frozen=True)
class CondOr:
    left: "Condition"
    right: "Condition"


Condition = Union[Compare, BoolConst, CondNot, CondAnd, CondOr]

TRUE = BoolConst(True)

_COMPARE = {
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


def evaluate_condition(cond: Condition, env: Mapping[str, int]) -> bool:
    if isinstance(cond, Compare):
        return _COMPARE[cond.op](cond.left.evaluate(env), cond.right.evaluate(env))
    if isinstance(cond, BoolConst):
        return cond.value
    if isinstance(cond, CondNot):
        return not evaluate_condition(cond.operand, env)
    if isinstance(cond, CondAnd):
        return evaluate_condition(cond.left, env) and evaluate_condition(cond.right, env)
    return evaluate_condition(cond.left, env) or evaluate_condition(cond.right, env)


def condition_variables(cond: Condition) -> Iterator[str]:
    stack: List[Condition] = [cond]
    while stack:
        node = stack.pop()
        if isinstance(node, Compare):
            yield from node.left.variables()
            yield from node.right.variables()
        elif isinstance(node, CondNot):
            stack.append(node.operand)
        elif isinstance(node, (CondAnd, CondOr)):
            stack.extend((node.right, node.left))


@dataclass(frozen=True)
class Variable:
    """Integer variable with domain [lo, hi]; ``init`` None means any value."""

    name: str
    lo: int
    hi: int
    init: Optional[int] = None
    span: Span = field(default=NO_SPAN, compare=False)

    @property
    def domain(self) -> range:
        return range(self.lo, self.hi + 1)


@dataclass(frozen=True)
class Edge:
    source: str
    event: str
    target: str
    internal: bool = False
    guard: Condition = TRUE
    updates: Tuple[Tuple[str, Affine], ...] = ()
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class GuardedTs:
    """
    A layer model: locations, edges with guards and updates, variables.

    ``kind``/``skill`` name the interface the model is declared for, if any;
    ``binds`` maps model-local event names to compiled names and ``blocked``
    lists events joined without any transition.
    """

    name: str
    variables: Tuple[Variable, ...] = ()
    locations: Tuple[str, ...] = ()
    initial: str = ""
    edges: Tuple[Edge, ...] = ()
    kind: Optional[str] = None
    skill: Optional[str] = None
    binds: Tuple[Tuple[str, str], ...] = ()
    blocked: Tuple[str, ...] = ()
    span: Span = field(default=NO_SPAN, compare=False)

    @property
    def is_bare(self) -> bool:
        return not self.variables

    def variable(self, name: str) -> Optional[Variable]:
        return next((v for v in self.variables if v.name == name), None)

    def compiled_name(self, event: str) -> str:
        """Name of a non-internal local event in the compiled network."""
        return dict(self.binds).get(event, event)

    def event_name(self, edge: Edge) -> str:
        return f"{self.name}.{edge.event}" if edge.internal else self.compiled_name(edge.event)

    def init_event(self) -> str:
        return f"auto_init_{self.name}"

    def has_any_init(self) -> bool:
        return any(v.init is None for v in self.variables)

    def external_events(self) -> Tuple[str, ...]:
        """Compiled names of the non-internal events, blocked ones included."""
        names = [self.compiled_name(e.event) for e in self.edges if not e.internal]
        names += [self.compiled_name(b) for b in self.blocked]
        return tuple(dict.fromkeys(names))

    def internal_events(self) -> Tuple[str, ...]:
        """Qualified internal events of the expanded model (``auto_init`` included)."""
        names = [self.event_name(e) for e in self.edges if e.internal]
        if self.has_any_init():
            names.append(self.init_event())
        return tuple(dict.fromkeys(names))

    def state_space_bound(self) -> int:
        size = len(self.locations)
        for v in self.variables:
            size *= max(0, v.hi - v.lo + 1)
        return size
