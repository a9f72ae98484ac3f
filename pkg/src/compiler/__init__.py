"""
Compilation of skillsets into networks of lifecycle and resource automata.
"""

from .compile import AUTONOMY_MODES, CompileError, CompiledSkillset, CompileOptions, compile_skillset
from .dot import component_dots, export_dot
from .events import EventScheme, SkillEvents, skill_events
from .guards import MAX_DISJUNCTS, GuardTooComplex, guard_dnf
from .lifecycle import LIFECYCLE_STATES, lifecycle_automaton
from .resources import Usage, autonomous_event, collect_usages, resource_automaton

__all__ = [
    "AUTONOMY_MODES",
    "CompileError",
    "CompileOptions",
    "CompiledSkillset",
    "EventScheme",
    "GuardTooComplex",
    "LIFECYCLE_STATES",
    "MAX_DISJUNCTS",
    "SkillEvents",
    "Usage",
    "autonomous_event",
    "collect_usages",
    "compile_skillset",
    "component_dots",
    "export_dot",
    "guard_dnf",
    "lifecycle_automaton",
    "resource_automaton",
    "skill_events",
]
