"""Event names of compiled skills.

Every skill ``s`` contributes the lifecycle events ``request_s``,
``precond_success_s``, ``precond_failure_s_<r>``, ``validate_success_s``,
``validate_failure_s``, ``start_hook_s``, ``success_s_<case>``,
``failure_s_<case>``, ``interrupt_s``, ``interrupted_s`` and
``inv_violation_s_<inv>_<r>``. Guard events carry the DNF term they
synchronize on.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

from ..skill_lang.nodes import SkillDecl, SkillsetAst
from .guards import MAX_DISJUNCTS, Term, guard_dnf, merge_single_resource, term_resources

GuardEvent = Tuple[str, Term]


@dataclass(frozen=True)
class SkillEvents:
    """The events of one skill's lifecycle."""

    skill: str
    request: str
    precond_success: Tuple[GuardEvent, ...]
    precond_failure: Tuple[GuardEvent, ...]
    validate_success: str
    validate_failure: str
    start_hook: str
    success: Tuple[Tuple[str, str], ...]
    failure: Tuple[Tuple[str, str], ...]
    interrupt: str
    interrupted: str
    inv_violation: Tuple[GuardEvent, ...]

    @property
    def functional_interface(self) -> Tuple[str, ...]:
        """Events shared with the functional layer, in manifest order."""
        return (
            (self.validate_success, self.validate_failure, self.start_hook)
            + tuple(e for _, e in self.success)
            + tuple(e for _, e in self.failure)
            + (self.interrupted,)
        )

    @property
    def decision_interface(self) -> Tuple[str, ...]:
        return (self.request, self.interrupt)

    def all_events(self) -> Iterator[str]:
        yield self.request
        yield from (e for e, _ in self.precond_success)
        yield from (e for e, _ in self.precond_failure)
        yield from self.functional_interface
        yield self.interrupt
        yield from (e for e, _ in self.inv_violation)


def _guard_event_names(prefix: str, terms: Sequence[Term]) -> List[GuardEvent]:
    named: List[GuardEvent] = []
    used = set()
    for term in terms:
        base = "_".join((prefix,) + term_resources(term))
        name, k = base, 2
        while name in used:
            name, k = f"{base}_{k}", k + 1
        used.add(name)
        named.append((name, term))
    return named


def skill_events(ast: SkillsetAst, skill: SkillDecl, limit: int = MAX_DISJUNCTS) -> SkillEvents:
    """
    Name the events of a skill and attach guard terms to the guard events.

    Raises:
        GuardTooComplex: If a precondition or invariant needs too many disjuncts
    """
    s = skill.name
    success_terms = guard_dnf(ast, skill.precondition, limit=limit)
    if len(success_terms) == 1:
        precond_success = [(f"precond_success_{s}", success_terms[0])]
    else:
        precond_success = [(f"precond_success_{s}_{k}", t) for k, t in enumerate(success_terms, 1)]
    failure_terms = merge_single_resource(guard_dnf(ast, skill.precondition, negated=True, limit=limit))

    violations: List[GuardEvent] = []
    for invariant in skill.invariants:
        terms = merge_single_resource(guard_dnf(ast, invariant.guard, negated=True, limit=limit))
        violations.extend(_guard_event_names(f"inv_violation_{s}_{invariant.name}", terms))

    return SkillEvents(
        skill=s,
        request=f"request_{s}",
        precond_success=tuple(precond_success),
        precond_failure=tuple(_guard_event_names(f"precond_failure_{s}", failure_terms)),
        validate_success=f"validate_success_{s}",
        validate_failure=f"validate_failure_{s}",
        start_hook=f"start_hook_{s}",
        success=tuple((c.name, f"success_{s}_{c.name}") for c in skill.success_cases),
        failure=tuple((c.name, f"failure_{s}_{c.name}") for c in skill.failure_cases),
        interrupt=f"interrupt_{s}",
        interrupted=f"interrupted_{s}",
        inv_violation=tuple(violations),
    )


class EventScheme:
    """Event names of every skill of a skillset, keyed by skill name."""

    def __init__(self, skills: Sequence[SkillEvents]):
        self._skills: Dict[str, SkillEvents] = {e.skill: e for e in skills}

    def __getitem__(self, skill: str) -> SkillEvents:
        return self._skills[skill]

    def __iter__(self) -> Iterator[SkillEvents]:
        return iter(self._skills.values())

    def __len__(self) -> int:
        return len(self._skills)

    def clashes(self) -> List[str]:
        """Event names produced more than once across all skills."""
        seen, clashes = set(), []
        for events in self:
            for name in events.all_events():
                if name in seen and name not in clashes:
                    clashes.append(name)
                seen.add(name)
        return clashes

    def functional_events(self) -> Dict[str, str]:
        """Map every functional-interface event to its skill."""
        return {e: s.skill for s in self for e in s.functional_interface}

    def decision_events(self) -> Dict[str, str]:
        return {e: s.skill for s in self for e in s.decision_interface}
