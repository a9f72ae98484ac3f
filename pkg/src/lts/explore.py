"""Breadth-first exploration of networks and explicit products."""

import json
import logging
from collections import deque
from dataclasses import asdict, dataclass, field
from typing import Deque, Dict, List, Tuple

from .lts import STUTTER, Lts, LtsError, Transition
from .network import GlobalState, Network

logger = logging.getLogger(__name__)

DEFAULT_MAX_STATES = 1_000_000


class StateSpaceTruncated(LtsError):
    """The reachable state space does not fit in the configured bound."""

    def __init__(self, max_states: int):
        super().__init__(f"state space truncated at {max_states} states")
        self.max_states = max_states


@dataclass(frozen=True)
class ReachStats:
    states: int
    transitions: int
    deadlocks: int
    truncated: bool

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def format_global(net: Network, g: GlobalState) -> str:
    """Human-readable name of a global state, e.g. ``(Ready, Off, Normal)``."""
    return net.format_state(g)


def reachable(net: Network, max_states: int = DEFAULT_MAX_STATES, progress_bar=None) -> ReachStats:
    """
    Explore the reachable global states of a network breadth-first.

    Args:
        net: Network to explore (stutter loops are counted if it is closed)
        max_states: Maximum number of global states to visit
        progress_bar: Optional tqdm progress bar, advanced once per expanded state

    Returns:
        ReachStats; ``deadlocks`` counts states without a non-stutter step and
        ``truncated`` is set when the bound was hit

    Raises:
        ValueError: If max_states < 1
    """
    if max_states < 1:
        raise ValueError("max_states must be at least 1")
    seen = {net.initial}
    queue: Deque[GlobalState] = deque([net.initial])
    transitions = deadlocks = 0
    truncated = False
    while queue:
        g = queue.popleft()
        raw = net.raw_step(g)
        if not raw:
            deadlocks += 1
        steps = raw if raw or not net.stutter else [(STUTTER, g)]
        transitions += len(steps)
        for _, h in steps:
            if h in seen:
                continue
            if len(seen) >= max_states:
                truncated = True
                continue
            seen.add(h)
            queue.append(h)
        if progress_bar is not None:
            progress_bar.update(1)

    stats = ReachStats(len(seen), transitions, deadlocks, truncated)
    logger.debug("explored %s: %s", net, stats)
    return stats


@dataclass(frozen=True)
class ExplicitProduct(Lts):
    """
    The reachable global transition system of a network as an Lts.

    State names are the formatted global states; ``global_states`` lists the
    global state of each name in ``states`` order.
    """

    global_states: Tuple[GlobalState, ...] = field(default=(), compare=False)
    _by_name: Dict[str, GlobalState] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "_by_name", dict(zip(self.states, self.global_states)))

    def global_state(self, name: str) -> GlobalState:
        """
        The global state behind a state name.

        Raises:
            LtsError: If the name is not a state of the product
        """
        try:
            return self._by_name[name]
        except KeyError:
            raise LtsError(f"{self.name}: no state named {name}") from None


def product_explicit(net: Network, max_states: int = DEFAULT_MAX_STATES) -> ExplicitProduct:
    """
    Materialize the reachable part of a network's global semantics.

    Args:
        net: The network
        max_states: Bound on the number of global states

    Returns:
        ExplicitProduct whose transitions are exactly the global transitions
        between reachable global states, in exploration order

    Raises:
        StateSpaceTruncated: If more than ``max_states`` states are reachable
    """
    order: List[GlobalState] = [net.initial]
    names: Dict[GlobalState, str] = {net.initial: format_global(net, net.initial)}
    queue: Deque[GlobalState] = deque([net.initial])
    transitions: List[Transition] = []
    while queue:
        g = queue.popleft()
        for event, h in net.step(g):
            if h not in names:
                if len(order) >= max_states:
                    raise StateSpaceTruncated(max_states)
                names[h] = format_global(net, h)
                order.append(h)
                queue.append(h)
            transitions.append(Transition(names[g], event, names[h]))

    alphabet = set(net.alphabet)
    if net.stutter:
        alphabet.add(STUTTER)
    logger.debug("explicit product of %s: %d states, %d transitions", net, len(order), len(transitions))
    return ExplicitProduct(
        name="product",
        states=tuple(names[g] for g in order),
        initial=names[net.initial],
        alphabet=frozenset(alphabet),
        transitions=tuple(transitions),
        global_states=tuple(order),
    )
