"""Attaching layer models to a compiled skillset.

Each skill has a functional and a decision interface. Every interface must
be covered by exactly one attached model; the built-in abstract models can
fill the gaps.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Sequence, Tuple

from ..compiler.compile import CompiledSkillset
from ..lts.lts import Lts
from ..lts.network import Network
from .builtins import abstract_decision_model, abstract_functional_model
from .expand import DEFAULT_EXPANSION_BOUND, expand
from .model import DECISION, FUNCTIONAL, GuardedTs

logger = logging.getLogger(__name__)

Interface = Tuple[str, str]


class InterfaceError(ValueError):
    """Layer models do not conform to, or do not cover, the compiled interfaces."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class LayerBinding:
    """
    How one layer model connects to the compiled skillset.

    ``mapping`` sends each non-internal local event to its compiled name;
    ``covers`` lists the (kind, skill) interfaces the model implements.
    """

    model: str
    kind: str
    skill: str
    mapping: Tuple[Tuple[str, str], ...]
    covers: Tuple[Interface, ...]


@dataclass(frozen=True)
class AttachedNetwork:
    """A compiled skillset closed by its layer models."""

    compiled: CompiledSkillset
    models: Tuple[GuardedTs, ...]
    bindings: Tuple[LayerBinding, ...]
    components: Tuple[Lts, ...]

    @property
    def network(self) -> Network:
        return Network(self.components)

    @property
    def hidden_events(self) -> FrozenSet[str]:
        """Internal events of the attached models."""
        return frozenset(e for m in self.models for e in m.internal_events())


def bind_model(compiled: CompiledSkillset, model: GuardedTs) -> LayerBinding:
    """
    Check a model against the compiled interfaces.

    Non-internal events must belong to a skill interface (the declared one
    when the model is declared ``for`` a skill) or be autonomous resource
    events. Internal event names must not shadow compiled events.

    Raises:
        InterfaceError: Listing every conformance problem
    """
    problems: List[str] = []
    functional = compiled.scheme.functional_events()
    decision = compiled.scheme.decision_events()
    resource_events = set(compiled.resource_events())
    compiled_events = {e for c in compiled.components for e in c.alphabet}

    if model.kind is not None and model.skill not in compiled.skills:
        problems.append(f"model {model.name} is declared for unknown skill {model.skill}")

    covers: List[Interface] = []
    if model.kind is not None and model.skill in compiled.skills:
        covers.append((model.kind, model.skill))
    mapping: List[Tuple[str, str]] = []
    locals_seen = []
    for edge in model.edges:
        if edge.internal:
            if edge.event in compiled_events:
                problems.append(f"internal event {edge.event} of model {model.name} collides with a compiled event")
            continue
        if edge.event not in locals_seen:
            locals_seen.append(edge.event)
    locals_seen += [b for b in model.blocked if b not in locals_seen]

    for local in locals_seen:
        name = model.compiled_name(local)
        mapping.append((local, name))
        if name in resource_events:
            continue
        if name in functional:
            interface = (FUNCTIONAL, functional[name])
        elif name in decision:
            interface = (DECISION, decision[name])
        else:
            problems.append(f"event {name} of model {model.name} is not in any compiled interface")
            continue
        if model.kind is not None and interface != (model.kind, model.skill):
            problems.append(
                f"event {name} of model {model.name} is not in the {model.kind} interface of {model.skill}"
            )
            continue
        if interface not in covers:
            covers.append(interface)

    if problems:
        raise InterfaceError(problems)
    kind = model.kind or (covers[0][0] if covers else "")
    skill = model.skill or (covers[0][1] if covers else "")
    return LayerBinding(model.name, kind, skill, tuple(mapping), tuple(covers))


def coverage(compiled: CompiledSkillset, bindings: Sequence[LayerBinding]) -> Dict[Interface, List[str]]:
    """Models covering each (kind, skill) interface, in skill order."""
    table: Dict[Interface, List[str]] = {}
    for skill in compiled.skills:
        table[(FUNCTIONAL, skill)] = []
        table[(DECISION, skill)] = []
    for binding in bindings:
        for interface in binding.covers:
            table[interface].append(binding.model)
    return table


def attach(
    compiled: CompiledSkillset,
    models: Sequence[GuardedTs] = (),
    auto_abstract: bool = False,
    bound: int = DEFAULT_EXPANSION_BOUND,
) -> AttachedNetwork:
    """
    Close a compiled skillset with layer models.

    Args:
        compiled: The compiled skillset
        models: User or builtin layer models
        auto_abstract: Cover every uncovered functional interface with the
            abstract functional model of its skill and all uncovered decision
            interfaces with one abstract decision model
        bound: Expansion bound for each model

    Returns:
        AttachedNetwork with the compiled components followed by the expanded models

    Raises:
        InterfaceError: On conformance problems, name clashes, interfaces
            covered twice or (without ``auto_abstract``) left uncovered
        ExpansionError: If a model exceeds the expansion bound
    """
    models = list(models)
    bindings = [bind_model(compiled, m) for m in models]
    table = coverage(compiled, bindings)

    problems = [
        f"{kind} interface of {skill} is covered by more than one model: {', '.join(names)}"
        for (kind, skill), names in table.items() if len(names) > 1
    ]
    uncovered = [interface for interface, names in table.items() if not names]
    if uncovered and auto_abstract:
        for kind, skill in uncovered:
            if kind == FUNCTIONAL:
                models.append(abstract_functional_model(compiled, skill))
        undecided = [skill for kind, skill in uncovered if kind == DECISION]
        if undecided:
            models.append(abstract_decision_model(compiled, undecided))
        bindings = [bind_model(compiled, m) for m in models]
        logger.info("added abstract models for %d uncovered interfaces", len(uncovered))
    else:
        problems += [f"{kind} interface of {skill} is not covered" for kind, skill in uncovered]

    names = [c.name for c in compiled.components] + [m.name for m in models]
    for name in sorted({n for n in names if names.count(n) > 1}):
        problems.append(f"component name {name} is used twice")
    if problems:
        raise InterfaceError(problems)

    expanded = tuple(expand(m, bound) for m in models)
    return AttachedNetwork(
        compiled=compiled,
        models=tuple(models),
        bindings=tuple(bindings),
        components=compiled.components + expanded,
    )
