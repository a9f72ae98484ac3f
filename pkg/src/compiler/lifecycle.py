"""The skill lifecycle automaton."""

from typing import List, Tuple

from ..lts.lts import Lts
from ..skill_lang.nodes import SkillDecl
from .events import SkillEvents

READY = "Ready"
CHECKING = "Checking"
VALIDATING = "Validating"
STARTING = "Starting"
RUNNING = "Running"
INTERRUPTING = "Interrupting"

LIFECYCLE_STATES = (READY, CHECKING, VALIDATING, STARTING, RUNNING, INTERRUPTING)


def lifecycle_automaton(skill: SkillDecl, events: SkillEvents) -> Lts:
    """
    Build the six-state lifecycle of a skill.

    The component is named after the skill, so ``goto @ Running`` refers to
    its Running state.

    Args:
        skill: The skill declaration
        events: Event names produced for the skill

    Returns:
        Lts with initial state Ready
    """
    transitions: List[Tuple[str, str, str]] = [(READY, events.request, CHECKING)]
    transitions += [(CHECKING, e, VALIDATING) for e, _ in events.precond_success]
    transitions += [(CHECKING, e, READY) for e, _ in events.precond_failure]
    transitions += [
        (VALIDATING, events.validate_success, STARTING),
        (VALIDATING, events.validate_failure, READY),
        (STARTING, events.start_hook, RUNNING),
    ]
    transitions += [(RUNNING, e, READY) for _, e in events.success]
    transitions += [(RUNNING, e, READY) for _, e in events.failure]
    transitions += [
        (RUNNING, events.interrupt, INTERRUPTING),
        (INTERRUPTING, events.interrupted, READY),
    ]
    transitions += [(RUNNING, e, READY) for e, _ in events.inv_violation]
    return Lts.build(skill.name, LIFECYCLE_STATES, READY, transitions)
