"""Resource automata: autonomous moves plus guard and effect synchronizations."""

from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

from ..lts.lts import Lts
from ..skill_lang.nodes import Effect, ResourceDecl, SkillsetAst
from .events import EventScheme
from .guards import Term


class Usage(NamedTuple):
    """
    How one event involves a resource.

    ``allowed`` restricts the states the event can fire from (None means
    any state); ``target`` is the state an effect moves the resource to
    (None means the event leaves it in place).
    """

    event: str
    allowed: Optional[FrozenSet[str]]
    target: Optional[str]


def autonomous_event(resource: str, source: str, target: str) -> str:
    return f"auto_{resource}_{source}_{target}"


def autonomous_events(resource: ResourceDecl) -> Tuple[str, ...]:
    return tuple(autonomous_event(resource.name, p, q) for p, q in resource.allowed_transitions())


def controlled_resources(ast: SkillsetAst) -> FrozenSet[str]:
    """Resources written by at least one effect of some skill."""
    written = set()
    for skill in ast.skills:
        effects: List[Effect] = list(skill.start_effects) + list(skill.interrupt_effects)
        for case in skill.success_cases + skill.failure_cases:
            effects.extend(case.effects)
        written.update(e.resource for e in effects)
    return frozenset(written)


def _add(usages: Dict[str, List[Usage]], event: str, term: Term, effects: Sequence[Effect]) -> None:
    constraints = dict(term)
    targets = {e.resource: e.state for e in effects}
    for resource in list(constraints) + [r for r in targets if r not in constraints]:
        usages[resource].append(Usage(event, constraints.get(resource), targets.get(resource)))


def collect_usages(ast: SkillsetAst, scheme: EventScheme) -> Dict[str, List[Usage]]:
    """
    Gather every guard and effect reference to each resource.

    Invariant violations carry the skill's interrupt effects.
    """
    usages: Dict[str, List[Usage]] = {r.name: [] for r in ast.resources}
    for skill in ast.skills:
        events = scheme[skill.name]
        for event, term in events.precond_success + events.precond_failure:
            _add(usages, event, term, ())
        _add(usages, events.start_hook, (), skill.start_effects)
        for case, (_, event) in zip(skill.success_cases, events.success):
            _add(usages, event, (), case.effects)
        for case, (_, event) in zip(skill.failure_cases, events.failure):
            _add(usages, event, (), case.effects)
        _add(usages, events.interrupted, (), skill.interrupt_effects)
        for event, term in events.inv_violation:
            _add(usages, event, term, skill.interrupt_effects)
    return usages


def resource_automaton(resource: ResourceDecl, usages: Sequence[Usage], autonomous: bool = True) -> Lts:
    """
    Build the automaton of a resource.

    Args:
        resource: The resource declaration
        usages: Events that constrain or write the resource
        autonomous: Add ``auto_<r>_<from>_<to>`` moves for the allowed transitions

    Returns:
        Lts named after the resource
    """
    transitions: List[Tuple[str, str, str]] = []
    if autonomous:
        for p, q in resource.allowed_transitions():
            transitions.append((p, autonomous_event(resource.name, p, q), q))
    for usage in usages:
        for state in resource.states:
            if usage.allowed is not None and state not in usage.allowed:
                continue
            transitions.append((state, usage.event, usage.target or state))
    alphabet = [t[1] for t in transitions] + [u.event for u in usages]
    return Lts.build(resource.name, resource.states, resource.initial, transitions, alphabet)
