"""Finite labeled transition systems."""

import sys
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, NamedTuple, Optional, Tuple

Event = str

# Reserved event added at deadlocks by stutter closure.
STUTTER: Event = "__stutter"


class LtsError(ValueError):
    """A malformed transition system, network or global state."""


class Transition(NamedTuple):
    source: str
    event: Event
    target: str


def intern_event(name: str) -> Event:
    return sys.intern(name)


@dataclass(frozen=True)
class Lts:
    """
    A labeled transition system (Q, q0, Σ, T).

    States keep their declaration order and transitions their insertion
    order (duplicates dropped), which fixes every exploration order built
    on top of an Lts.
    """

    name: str
    states: Tuple[str, ...]
    initial: str
    alphabet: FrozenSet[Event]
    transitions: Tuple[Transition, ...]

    def __post_init__(self):
        states = tuple(dict.fromkeys(self.states))
        if len(states) != len(self.states):
            raise LtsError(f"{self.name}: duplicate state names")
        if self.initial not in states:
            raise LtsError(f"{self.name}: initial state {self.initial} not in states")
        alphabet = frozenset(intern_event(e) for e in self.alphabet)
        known = set(states)
        transitions = []
        for t in dict.fromkeys(Transition(*t) for t in self.transitions):
            if t.source not in known or t.target not in known:
                raise LtsError(f"{self.name}: transition {t} has an undeclared endpoint")
            if t.event not in alphabet:
                raise LtsError(f"{self.name}: event {t.event} of {t} not in alphabet")
            transitions.append(Transition(t.source, intern_event(t.event), t.target))
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "transitions", tuple(transitions))

    @classmethod
    def build(
        cls,
        name: str,
        states: Iterable[str],
        initial: str,
        transitions: Iterable[Tuple[str, str, str]],
        alphabet: Optional[Iterable[Event]] = None,
    ) -> "Lts":
        """Build an Lts; the alphabet defaults to the events used by ``transitions``."""
        transitions = tuple(Transition(*t) for t in transitions)
        events = set(alphabet) if alphabet is not None else set()
        events.update(t.event for t in transitions)
        return cls(name, tuple(states), initial, frozenset(events), transitions)

    def outgoing(self, state: str) -> Tuple[Transition, ...]:
        return tuple(t for t in self.transitions if t.source == state)

    def successors(self, state: str, event: Event) -> Tuple[str, ...]:
        return tuple(t.target for t in self.transitions if t.source == state and t.event == event)

    def events_by_state(self) -> Dict[str, Tuple[Event, ...]]:
        table: Dict[str, list] = {s: [] for s in self.states}
        for t in self.transitions:
            if t.event not in table[t.source]:
                table[t.source].append(t.event)
        return {s: tuple(events) for s, events in table.items()}

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "states": list(self.states),
            "initial": self.initial,
            "alphabet": sorted(self.alphabet),
            "transitions": [list(t) for t in self.transitions],
        }
