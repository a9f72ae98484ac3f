"""Networks of synchronized transition systems.

A global transition on event ``a`` moves every component whose alphabet
contains ``a`` along one of its ``a``-transitions and leaves every other
component in place; if some participating component has no ``a``-transition
the event is blocked. Global states are tuples of local-state indices in
component order.
"""

import itertools
import logging
from typing import Dict, Iterable, List, Mapping, Sequence, Set, Tuple, Union

from .lts import STUTTER, Event, Lts, LtsError

logger = logging.getLogger(__name__)

GlobalState = Tuple[int, ...]
Step = Tuple[Event, GlobalState]


class Network:
    """
    An ordered, immutable collection of Lts components.

    Args:
        components: The component transition systems, in declaration order
        stutter: If True, deadlocked global states get a ``__stutter`` self-loop

    Raises:
        LtsError: If the list is empty or component names are not unique
    """

    def __init__(self, components: Sequence[Lts], stutter: bool = False):
        if not components:
            raise LtsError("a network needs at least one component")
        names = [c.name for c in components]
        if len(set(names)) != len(names):
            raise LtsError(f"component names are not unique: {names}")
        for component in components:
            if STUTTER in component.alphabet:
                raise LtsError(f"{component.name}: event {STUTTER} is reserved")

        self.components: Tuple[Lts, ...] = tuple(components)
        self.stutter = stutter
        self._names = {name: i for i, name in enumerate(names)}
        self._index: List[Dict[str, int]] = [
            {state: i for i, state in enumerate(c.states)} for c in self.components
        ]
        self.alphabet: Tuple[Event, ...] = tuple(
            sorted(set().union(*(c.alphabet for c in self.components)))
        )
        participants: Dict[Event, List[int]] = {e: [] for e in self.alphabet}
        self._table: List[Dict[Event, Dict[int, Tuple[int, ...]]]] = []
        for i, component in enumerate(self.components):
            for event in component.alphabet:
                participants[event].append(i)
            table: Dict[Event, Dict[int, List[int]]] = {e: {} for e in component.alphabet}
            index = self._index[i]
            for t in component.transitions:
                targets = table[t.event].setdefault(index[t.source], [])
                if index[t.target] not in targets:
                    targets.append(index[t.target])
            self._table.append(
                {e: {s: tuple(ts) for s, ts in by_src.items()} for e, by_src in table.items()}
            )
        self._participants = {e: tuple(ps) for e, ps in participants.items()}
        self.initial: GlobalState = tuple(
            self._index[i][c.initial] for i, c in enumerate(self.components)
        )

    def __repr__(self) -> str:
        names = ", ".join(c.name for c in self.components)
        return f"Network([{names}], stutter={self.stutter})"

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(c.name for c in self.components)

    def component_index(self, name: str) -> int:
        try:
            return self._names[name]
        except KeyError:
            raise LtsError(f"unknown component {name}") from None

    def state_index(self, component: int, state: str) -> int:
        try:
            return self._index[component][state]
        except KeyError:
            raise LtsError(
                f"unknown state {state} of component {self.components[component].name}"
            ) from None

    def has_event(self, event: Event) -> bool:
        return event in self._participants

    def participants(self, event: Event) -> Tuple[int, ...]:
        return self._participants.get(event, ())

    def check_state(self, g: GlobalState) -> None:
        """Raise LtsError unless ``g`` is a well-formed global state."""
        if not isinstance(g, tuple) or len(g) != len(self.components):
            raise LtsError(f"global state {g!r} does not have arity {len(self.components)}")
        for i, local in enumerate(g):
            if not isinstance(local, int) or not 0 <= local < len(self.components[i].states):
                raise LtsError(
                    f"global state {g!r}: no local state {local!r} in {self.components[i].name}"
                )

    def encode(self, states: Union[Sequence[str], Mapping[str, str]]) -> GlobalState:
        """Build a global state from local state names (sequence or component mapping)."""
        if isinstance(states, Mapping):
            states = [states[c.name] for c in self.components]
        if len(states) != len(self.components):
            raise LtsError(f"expected {len(self.components)} local states, got {len(states)}")
        return tuple(self.state_index(i, s) for i, s in enumerate(states))

    def decode(self, g: GlobalState) -> Dict[str, str]:
        return {c.name: c.states[g[i]] for i, c in enumerate(self.components)}

    def local_state(self, g: GlobalState, component: int) -> str:
        return self.components[component].states[g[component]]

    def format_state(self, g: GlobalState) -> str:
        return "(" + ", ".join(self.local_state(g, i) for i in range(len(g))) + ")"

    def _successors(self, g: GlobalState, event: Event) -> List[GlobalState]:
        choices = []
        parts = self._participants[event]
        for i in parts:
            targets = self._table[i][event].get(g[i])
            if not targets:
                return []
            choices.append(targets)
        result = []
        for combo in itertools.product(*choices):
            target = list(g)
            for i, local in zip(parts, combo):
                target[i] = local
            result.append(tuple(target))
        return result

    def raw_step(self, g: GlobalState) -> List[Step]:
        """All global transitions from ``g`` in the fixed order, without stutter."""
        return [(event, h) for event in self.alphabet for h in self._successors(g, event)]

    def step(self, g: GlobalState) -> List[Step]:
        """Global transitions from ``g``; adds the stutter loop at deadlocks when closed."""
        steps = self.raw_step(g)
        if not steps and self.stutter:
            return [(STUTTER, g)]
        return steps

    def successors(self, g: GlobalState, event: Event) -> List[GlobalState]:
        self.check_state(g)
        if event == STUTTER:
            return [g] if self.stutter and not self.raw_step(g) else []
        if event not in self._participants:
            raise LtsError(f"event {event} is not in the network alphabet")
        return self._successors(g, event)

    def enabled_events(self, g: GlobalState) -> List[Event]:
        self.check_state(g)
        return list(dict.fromkeys(event for event, _ in self.step(g)))


def successors(net: Network, g: GlobalState, event: Event) -> Set[GlobalState]:
    """
    Global successors of ``g`` on ``event``.

    Raises:
        LtsError: If ``g`` is malformed or ``event`` is not in the alphabet
    """
    return set(net.successors(g, event))


def enabled_events(net: Network, g: GlobalState) -> Set[Event]:
    """Events with at least one global successor at ``g``."""
    return set(net.enabled_events(g))


def stutter_close(net: Network) -> Network:
    """Return ``net`` with implicit ``__stutter`` self-loops at deadlocked states."""
    if net.stutter:
        return net
    return Network(net.components, stutter=True)


def compose(*parts: Union[Network, Lts, Iterable[Lts]]) -> Network:
    """Build a network from Lts components and/or other networks, in order."""
    components: List[Lts] = []
    stutter = False
    for part in parts:
        if isinstance(part, Network):
            components.extend(part.components)
            stutter = stutter or part.stutter
        elif isinstance(part, Lts):
            components.append(part)
        else:
            components.extend(part)
    return Network(components, stutter=stutter)
