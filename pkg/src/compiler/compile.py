"""Compilation of a skillset into a network of synchronized automata."""

import json
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..lts.lts import Lts
from ..lts.network import Network
from ..skill_lang.nodes import SkillsetAst
from ..skill_lang.validator import validate_skillset
from ..utils.diagnostics import Diagnostic, DiagnosticError, error, has_errors
from .events import EventScheme, SkillEvents, skill_events
from .guards import MAX_DISJUNCTS, GuardTooComplex
from .lifecycle import lifecycle_automaton
from .resources import autonomous_events, collect_usages, controlled_resources, resource_automaton

logger = logging.getLogger(__name__)

AUTONOMY_MODES = ("monitored", "all")


class CompileError(DiagnosticError):
    """The skillset cannot be compiled; ``diagnostics`` says why."""


@dataclass(frozen=True)
class CompileOptions:
    """
    Options for ``compile_skillset``.

    Attributes:
        autonomy: ``"monitored"`` gives autonomous transitions only to resources
            no skill effect writes; ``"all"`` gives them to every resource
        max_disjuncts: Largest DNF accepted for a precondition or invariant
    """

    autonomy: str = "monitored"
    max_disjuncts: int = MAX_DISJUNCTS

    def __post_init__(self):
        if self.autonomy not in AUTONOMY_MODES:
            raise ValueError(f"autonomy must be one of {AUTONOMY_MODES}, got {self.autonomy!r}")
        if self.max_disjuncts < 1:
            raise ValueError("max_disjuncts must be at least 1")


@dataclass(frozen=True)
class CompiledSkillset:
    """
    The open network of a skillset and the manifest of its interfaces.

    ``components`` holds one lifecycle per skill (named after the skill)
    followed by one automaton per resource, in declaration order.
    """

    name: str
    components: Tuple[Lts, ...]
    scheme: EventScheme = field(compare=False)
    autonomous: Dict[str, Tuple[str, ...]] = field(compare=False)
    options: CompileOptions = CompileOptions()
    warnings: Tuple[Diagnostic, ...] = field(default=(), compare=False)

    @property
    def network(self) -> Network:
        return Network(self.components)

    @property
    def skills(self) -> Tuple[str, ...]:
        return tuple(e.skill for e in self.scheme)

    def skill_events(self, skill: str) -> SkillEvents:
        return self.scheme[skill]

    def functional_interface(self, skill: str) -> Tuple[str, ...]:
        return self.scheme[skill].functional_interface

    def decision_interface(self, skill: str) -> Tuple[str, ...]:
        return self.scheme[skill].decision_interface

    def resource_events(self) -> Tuple[str, ...]:
        """Autonomous events of all resources, in declaration order."""
        return tuple(e for events in self.autonomous.values() for e in events)

    def component(self, name: str) -> Lts:
        return next(c for c in self.components if c.name == name)

    def manifest(self) -> dict:
        return {
            "skillset": self.name,
            "autonomy": self.options.autonomy,
            "components": [c.name for c in self.components],
            "skills": [
                {
                    "name": events.skill,
                    "functional": list(events.functional_interface),
                    "decision": list(events.decision_interface),
                }
                for events in self.scheme
            ],
            "resources": [
                {"name": name, "autonomous": list(events)}
                for name, events in self.autonomous.items()
            ],
        }

    def manifest_json(self) -> str:
        return json.dumps(self.manifest(), indent=2)


def compile_skillset(ast: SkillsetAst, options: Optional[CompileOptions] = None) -> CompiledSkillset:
    """
    Compile a validated skillset.

    Args:
        ast: The skillset AST
        options: Compilation options (defaults: monitored autonomy, 64 disjuncts)

    Returns:
        CompiledSkillset whose network is open until layer models are attached

    Raises:
        CompileError: On validation errors, guards whose DNF is too large,
            event-name clashes or skill/resource name clashes
    """
    options = options or CompileOptions()
    diagnostics = validate_skillset(ast)
    if has_errors(diagnostics):
        raise CompileError(diagnostics)

    found: List[Diagnostic] = []
    for name in sorted({s.name for s in ast.skills} & {r.name for r in ast.resources}):
        found.append(error(f"skill and resource share the name {name}", ast.skill(name).span))

    events: List[SkillEvents] = []
    for skill in ast.skills:
        try:
            events.append(skill_events(ast, skill, options.max_disjuncts))
        except GuardTooComplex as exc:
            found.append(error(f"skill {skill.name}: {exc}", exc.atom.span))
    scheme = EventScheme(events)
    for name in scheme.clashes():
        found.append(error(f"event name {name} is produced twice", ast.span))
    if found:
        raise CompileError(found)

    controlled = controlled_resources(ast)
    usages = collect_usages(ast, scheme)
    components: List[Lts] = [lifecycle_automaton(s, scheme[s.name]) for s in ast.skills]
    autonomous: Dict[str, Tuple[str, ...]] = {}
    for resource in ast.resources:
        free = options.autonomy == "all" or resource.name not in controlled
        autonomous[resource.name] = autonomous_events(resource) if free else ()
        components.append(resource_automaton(resource, usages[resource.name], autonomous=free))

    logger.info(
        "compiled skillset %s: %d skills, %d resources",
        ast.name, len(ast.skills), len(ast.resources),
    )
    return CompiledSkillset(
        name=ast.name,
        components=tuple(components),
        scheme=scheme,
        autonomous=autonomous,
        options=options,
        warnings=tuple(diagnostics),
    )
