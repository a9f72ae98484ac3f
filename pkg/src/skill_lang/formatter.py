"""Canonical printing of skillset ASTs (source text and JSON)."""

import json
from typing import List, Sequence

from .nodes import And, Atom, Case, Effect, GuardExpr, Not, Or, ResourceDecl, SkillDecl, SkillsetAst, guard_to_dict

_INDENT = "  "


def format_guard(guard: GuardExpr) -> str:
    """Print a guard with the parentheses needed to re-parse the same tree."""
    if isinstance(guard, Atom):
        return f"{guard.resource} {guard.op} {guard.state}"
    if isinstance(guard, Not):
        inner = format_guard(guard.operand)
        return f"!{inner}" if isinstance(guard.operand, Not) else f"!({inner})"
    if isinstance(guard, And):
        left = format_guard(guard.left)
        right = format_guard(guard.right)
        if isinstance(guard.left, Or):
            left = f"({left})"
        if isinstance(guard.right, (And, Or)):
            right = f"({right})"
        return f"{left} && {right}"
    left = format_guard(guard.left)
    right = format_guard(guard.right)
    if isinstance(guard.right, Or):
        right = f"({right})"
    return f"{left} || {right}"


def _effects(effects: Sequence[Effect]) -> str:
    body = " ".join(f"{e.resource} -> {e.state}" for e in effects)
    return f"effect {{ {body} }}" if body else "effect { }"


def _resource(resource: ResourceDecl) -> str:
    states = " ".join(resource.states)
    if resource.transitions is None:
        transitions = "all"
    else:
        pairs = " ".join(f"{p} -> {q}" for p, q in resource.transitions)
        transitions = f"{{ {pairs} }}" if pairs else "{ }"
    return (
        f"{resource.name} {{ state {{ {states} }} initial {resource.initial} "
        f"transition {transitions} }}"
    )


def _case_block(keyword: str, case: Case) -> str:
    return f"{keyword} {{ {case.name} {{ {_effects(case.effects)} }} }}"


def _skill(skill: SkillDecl) -> List[str]:
    pad = _INDENT * 2
    lines = [f"{_INDENT}skill {skill.name} {{"]
    if skill.inputs:
        params = " ".join(f"{p.name}: {p.type_tag}" for p in skill.inputs)
        lines.append(f"{pad}input {{ {params} }}")
    for output in skill.outputs:
        lines.append(f"{pad}output {output.name}: {output.type_tag}")
    if skill.precondition is not None:
        lines.append(f"{pad}precondition {{ {format_guard(skill.precondition)} }}")
    for effect in skill.start_effects:
        lines.append(f"{pad}start {effect.resource} -> {effect.state}")
    if skill.invariants:
        body = " ".join(f"{i.name} {{ guard {format_guard(i.guard)} }}" for i in skill.invariants)
        lines.append(f"{pad}invariant {{ {body} }}")
    if skill.interrupt_effects:
        lines.append(f"{pad}interrupt {{ {_effects(skill.interrupt_effects)} }}")
    for case in skill.success_cases:
        lines.append(pad + _case_block("success", case))
    for case in skill.failure_cases:
        lines.append(pad + _case_block("failure", case))
    lines.append(f"{_INDENT}}}")
    return lines


def format_skillset(ast: SkillsetAst) -> str:
    """
    Print a skillset AST as DSL source.

    Args:
        ast: A valid skillset AST

    Returns:
        Source text that parses back to an AST equal to ``ast``
    """
    if not ast.resources and not ast.skills:
        return f"skillset {ast.name} {{}}\n"
    lines = [f"skillset {ast.name} {{"]
    if ast.resources:
        lines.append(f"{_INDENT}resource {{")
        lines.extend(_INDENT * 2 + _resource(r) for r in ast.resources)
        lines.append(f"{_INDENT}}}")
    for skill in ast.skills:
        lines.extend(_skill(skill))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _effects_json(effects: Sequence[Effect]) -> list:
    return [{"resource": e.resource, "state": e.state} for e in effects]


def skillset_to_dict(ast: SkillsetAst) -> dict:
    """Canonical JSON-ready form of an AST (spans omitted)."""
    return {
        "skillset": ast.name,
        "resources": [
            {
                "name": r.name,
                "states": list(r.states),
                "initial": r.initial,
                "transitions": "all" if r.transitions is None else [list(p) for p in r.transitions],
            }
            for r in ast.resources
        ],
        "skills": [
            {
                "name": s.name,
                "inputs": [{"name": p.name, "type": p.type_tag} for p in s.inputs],
                "outputs": [{"name": p.name, "type": p.type_tag} for p in s.outputs],
                "precondition": None if s.precondition is None else guard_to_dict(s.precondition),
                "start": _effects_json(s.start_effects),
                "invariants": [{"name": i.name, "guard": guard_to_dict(i.guard)} for i in s.invariants],
                "interrupt": _effects_json(s.interrupt_effects),
                "success": [{"name": c.name, "effects": _effects_json(c.effects)} for c in s.success_cases],
                "failure": [{"name": c.name, "effects": _effects_json(c.effects)} for c in s.failure_cases],
            }
            for s in ast.skills
        ],
    }


def skillset_to_json(ast: SkillsetAst) -> str:
    return json.dumps(skillset_to_dict(ast), indent=2)
