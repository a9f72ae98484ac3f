"""Expansion of guarded transition systems into explicit Lts."""

import itertools
import logging
from collections import deque
from typing import Deque, Dict, List, Tuple

from ..lts.lts import Lts, Transition
from .model import GuardedTs, Valuation, evaluate_condition

logger = logging.getLogger(__name__)

DEFAULT_EXPANSION_BOUND = 1_000_000

PRE_INITIAL = "__init__"

State = Tuple[str, Valuation]


class ExpansionError(ValueError):
    """The model's state space exceeds the expansion bound."""


def state_name(model: GuardedTs, state: State) -> str:
    """``loc`` for bare models, ``loc[x=1,y=2]`` otherwise."""
    location, valuation = state
    if not model.variables:
        return location
    values = ",".join(f"{v.name}={x}" for v, x in zip(model.variables, valuation))
    return f"{location}[{values}]"


def initial_valuations(model: GuardedTs) -> List[Valuation]:
    domains = [[v.init] if v.init is not None else list(v.domain) for v in model.variables]
    return [tuple(combo) for combo in itertools.product(*domains)]


def edge_successors(model: GuardedTs, state: State) -> List[Tuple[str, State]]:
    """
    Successors of an expanded state, one per enabled edge instance.

    Updates are simultaneous; an instance whose update leaves a domain is
    dropped.
    """
    location, valuation = state
    env = {v.name: x for v, x in zip(model.variables, valuation)}
    successors = []
    for edge in model.edges:
        if edge.source != location or not evaluate_condition(edge.guard, env):
            continue
        updated = dict(env)
        for name, expr in edge.updates:
            updated[name] = expr.evaluate(env)
        if any(not v.lo <= updated[v.name] <= v.hi for v in model.variables):
            continue
        target = tuple(updated[v.name] for v in model.variables)
        successors.append((model.event_name(edge), (edge.target, target)))
    return successors


def expand(model: GuardedTs, bound: int = DEFAULT_EXPANSION_BOUND) -> Lts:
    """
    Expand a layer model into the Lts of its reachable states.

    When some variable is initialized with ``any``, a pre-initial state
    ``__init__`` leads to every admissible initial valuation through the
    internal event ``auto_init_<model>``.

    Args:
        model: A scope-checked GuardedTs
        bound: Maximum of |locations| x product of domain sizes

    Returns:
        Lts named after the model; its alphabet holds every edge event and
        every blocked event

    Raises:
        ExpansionError: If the bound is exceeded
    """
    size = model.state_space_bound()
    if size > bound:
        raise ExpansionError(f"model {model.name} has {size} potential states, bound is {bound}")

    names: Dict[State, str] = {}
    order: List[str] = []
    transitions: List[Transition] = []
    queue: Deque[State] = deque()

    def visit(state: State) -> str:
        if state not in names:
            names[state] = state_name(model, state)
            order.append(names[state])
            queue.append(state)
        return names[state]

    starts = [(model.initial, valuation) for valuation in initial_valuations(model)]
    if model.has_any_init():
        initial = PRE_INITIAL
        order.append(PRE_INITIAL)
        for state in starts:
            transitions.append(Transition(PRE_INITIAL, model.init_event(), visit(state)))
    else:
        initial = visit(starts[0])

    while queue:
        state = queue.popleft()
        for event, target in edge_successors(model, state):
            transitions.append(Transition(names[state], event, visit(target)))

    alphabet = {model.event_name(e) for e in model.edges}
    alphabet.update(model.compiled_name(b) for b in model.blocked)
    if model.has_any_init():
        alphabet.add(model.init_event())
    logger.debug("expanded %s: %d states, %d transitions", model.name, len(order), len(transitions))
    return Lts.build(model.name, order, initial, transitions, alphabet)
