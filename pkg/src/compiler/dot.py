"""DOT diagrams of compiled skillsets."""

from typing import Dict, List

from ..lts.dot import lts_to_dot
from .compile import CompiledSkillset


def component_dots(compiled: CompiledSkillset) -> Dict[str, str]:
    """
    Render every component of a compiled skillset.

    Lifecycle diagrams carry a legend with the skill's functional and
    decision interfaces; resource diagrams list their autonomous events.

    Returns:
        Mapping from component name to DOT source, in component order
    """
    skills = set(compiled.skills)
    dots: Dict[str, str] = {}
    for component in compiled.components:
        if component.name in skills:
            legend = {
                "functional": compiled.functional_interface(component.name),
                "decision": compiled.decision_interface(component.name),
            }
        else:
            legend = {"autonomous": compiled.autonomous.get(component.name, ())}
        dots[component.name] = lts_to_dot(component, legend)
    return dots


def export_dot(compiled: CompiledSkillset) -> List[str]:
    """One digraph per component; empty for an empty skillset."""
    return list(component_dots(compiled).values())
