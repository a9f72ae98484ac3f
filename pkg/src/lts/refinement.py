"""Bounded event-sequence inclusion between two networks."""

import logging
from collections import deque
from dataclasses import dataclass
from typing import AbstractSet, Deque, Dict, FrozenSet, List, Optional, Tuple

from .lts import Event
from .network import GlobalState, Network

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InclusionResult:
    """
    Outcome of a bounded inclusion check.

    ``counterexample`` is the shortest visible event sequence of the concrete
    network that the abstract network cannot produce, or None when every
    sequence up to the depth bound is included.
    """

    included: bool
    depth: int
    pairs_explored: int
    counterexample: Optional[Tuple[Event, ...]] = None


def _tau_closure(net: Network, states: FrozenSet[GlobalState], hidden: AbstractSet[Event]) -> FrozenSet[GlobalState]:
    closure = set(states)
    stack = list(states)
    while stack:
        g = stack.pop()
        for event, h in net.raw_step(g):
            if event in hidden and h not in closure:
                closure.add(h)
                stack.append(h)
    return frozenset(closure)


def _after(net: Network, states: FrozenSet[GlobalState], event: Event, hidden: AbstractSet[Event]) -> FrozenSet[GlobalState]:
    if not net.has_event(event):
        return frozenset()
    targets = set()
    for g in states:
        targets.update(net.successors(g, event))
    return _tau_closure(net, frozenset(targets), hidden)


def trace_inclusion(
    concrete: Network,
    abstract: Network,
    depth: int,
    hidden: AbstractSet[Event] = frozenset(),
) -> InclusionResult:
    """
    Check that every event sequence of ``concrete`` is one of ``abstract``.

    Sequences are compared after erasing ``hidden`` events on both sides;
    hidden concrete steps still count towards the depth bound. The abstract
    side is determinized on the fly (sets of global states).

    Args:
        concrete: The refined network
        abstract: The network expected to admit every concrete sequence
        depth: Number of concrete steps to explore
        hidden: Events treated as internal moves

    Returns:
        InclusionResult with the shortest failing visible sequence, if any
    """
    start = (concrete.initial, _tau_closure(abstract, frozenset([abstract.initial]), hidden))
    parents: Dict[Tuple[GlobalState, FrozenSet[GlobalState]], Tuple[object, Optional[Event]]] = {start: (None, None)}
    queue: Deque[Tuple[Tuple[GlobalState, FrozenSet[GlobalState]], int]] = deque([(start, 0)])

    def visible_trace(pair, last: Event) -> Tuple[Event, ...]:
        trace: List[Event] = [last]
        while pair is not None:
            parent, event = parents[pair]
            if event is not None and event not in hidden:
                trace.append(event)
            pair = parent
        return tuple(reversed(trace))

    while queue:
        pair, level = queue.popleft()
        if level >= depth:
            continue
        c, a_states = pair
        for event, h in concrete.raw_step(c):
            if event in hidden:
                target = (h, a_states)
            else:
                after = _after(abstract, a_states, event, hidden)
                if not after:
                    trace = visible_trace(pair, event)
                    logger.info("inclusion fails after %s", " ".join(trace))
                    return InclusionResult(False, depth, len(parents), trace)
                target = (h, after)
            if target not in parents:
                parents[target] = (pair, event)
                queue.append((target, level + 1))

    logger.debug("inclusion holds to depth %d over %d pairs", depth, len(parents))
    return InclusionResult(True, depth, len(parents))
