"""Well-formedness checks for skillset ASTs."""

import itertools
from typing import Iterable, Iterator, List, Sequence, Tuple

from ..lts.lts import STUTTER
from ..utils.diagnostics import Diagnostic, Span, error, warning
from .nodes import KEYWORDS, Effect, GuardExpr, ResourceDecl, SkillDecl, SkillsetAst, evaluate_guard, iter_atoms

# Precondition satisfiability is only checked when the assignment space is small.
_SAT_CHECK_LIMIT = 4096


def _duplicates(names: Iterable[str]) -> List[str]:
    seen, dups = set(), []
    for name in names:
        if name in seen and name not in dups:
            dups.append(name)
        seen.add(name)
    return dups


def _repeat_span(resource: ResourceDecl, state: str) -> Span:
    """Position of the second occurrence of ``state``, or the resource's when unknown."""
    positions = [i for i, s in enumerate(resource.states) if s == state]
    if len(resource.state_spans) == len(resource.states):
        return resource.state_spans[positions[1]]
    return resource.span


def _check_resource(resource: ResourceDecl) -> List[Diagnostic]:
    found = []
    for state in _duplicates(resource.states):
        span = _repeat_span(resource, state)
        found.append(error(f"duplicate state {state} in resource {resource.name}", span))
    if resource.initial not in resource.states:
        found.append(error(f"initial state {resource.initial} not declared", resource.span))
    for source, target in resource.transitions or ():
        for state in (source, target):
            if state not in resource.states:
                found.append(error(
                    f"transition references undeclared state {state} of resource {resource.name}",
                    resource.span,
                ))
    return found


def _check_guard(ast: SkillsetAst, guard: GuardExpr) -> List[Diagnostic]:
    found = []
    for atom in iter_atoms(guard):
        resource = ast.resource(atom.resource)
        if resource is None:
            found.append(error(f"unknown resource {atom.resource}", atom.span))
        elif atom.state not in resource.states:
            found.append(error(f"unknown state {atom.state} of resource {atom.resource}", atom.span))
    return found


def _check_effects(ast: SkillsetAst, effects: Sequence[Effect], where: str) -> List[Diagnostic]:
    found = []
    for effect in effects:
        resource = ast.resource(effect.resource)
        if resource is None:
            found.append(error(f"unknown resource {effect.resource}", effect.span))
        elif effect.state not in resource.states:
            found.append(error(f"unknown state {effect.state} of resource {effect.resource}", effect.span))
        elif resource.transitions is not None and len(resource.states) > 1:
            if not any(target == effect.state for _, target in resource.allowed_transitions()):
                found.append(warning(
                    f"effect {effect.resource} -> {effect.state} is not reachable through "
                    f"the declared transitions of {effect.resource}",
                    effect.span,
                ))
    for name in _duplicates(e.resource for e in effects):
        span = next(e.span for e in effects if e.resource == name)
        found.append(error(f"conflicting effects on resource {name} in {where}", span))
    return found


def _precondition_satisfiable(ast: SkillsetAst, guard: GuardExpr) -> bool:
    names = sorted({a.resource for a in iter_atoms(guard)})
    domains = [ast.resource(n).states for n in names]
    size = 1
    for domain in domains:
        size *= len(domain)
    if size > _SAT_CHECK_LIMIT:
        return True
    return any(
        evaluate_guard(guard, dict(zip(names, combo)))
        for combo in itertools.product(*domains)
    )


def _check_skill(ast: SkillsetAst, skill: SkillDecl) -> List[Diagnostic]:
    found = []
    if skill.precondition is None:
        found.append(warning(f"skill {skill.name} has no precondition (treated as true)", skill.span))
    else:
        guard_errors = _check_guard(ast, skill.precondition)
        found.extend(guard_errors)
        if not guard_errors and not _precondition_satisfiable(ast, skill.precondition):
            found.append(warning(f"precondition of skill {skill.name} is unsatisfiable", skill.span))
    if len(skill.start_effects) > 1:
        found.append(warning(
            f"skill {skill.name} declares {len(skill.start_effects)} start effects",
            skill.span,
        ))
    found.extend(_check_effects(ast, skill.start_effects, f"start of {skill.name}"))
    for invariant in skill.invariants:
        found.extend(_check_guard(ast, invariant.guard))
    found.extend(_check_effects(ast, skill.interrupt_effects, f"interrupt of {skill.name}"))
    for case in skill.success_cases + skill.failure_cases:
        found.extend(_check_effects(ast, case.effects, f"case {case.name} of {skill.name}"))

    for label, items in (
        ("invariant", skill.invariants),
        ("success case", skill.success_cases),
        ("failure case", skill.failure_cases),
        ("input", skill.inputs),
        ("output", skill.outputs),
    ):
        for name in _duplicates(i.name for i in items):
            span = next(i.span for i in items if i.name == name)
            found.append(error(f"duplicate {label} name {name} in skill {skill.name}", span))
    return found


def _declared_names(ast: SkillsetAst) -> Iterator[Tuple[str, Span]]:
    """Every name the source declares, with the position of its declaration."""
    for resource in ast.resources:
        yield resource.name, resource.span
        for i, state in enumerate(resource.states):
            yield state, resource.state_spans[i] if i < len(resource.state_spans) else resource.span
    for skill in ast.skills:
        yield skill.name, skill.span
        for item in itertools.chain(
            skill.inputs, skill.outputs, skill.invariants, skill.success_cases, skill.failure_cases
        ):
            yield item.name, item.span


def validate_skillset(ast: SkillsetAst) -> List[Diagnostic]:
    """
    Check the well-formedness of a parsed skillset.

    Args:
        ast: AST produced by the parser

    Returns:
        Diagnostics, one per violation; no error diagnostics means the AST
        can be compiled
    """
    found: List[Diagnostic] = []
    for node in ast.resources + ast.skills:
        names = (node.name,) + getattr(node, "states", ())
        if STUTTER in names:
            found.append(error(f"identifier {STUTTER} is reserved", node.span))
    # the contextual lexer lets keywords through where only a name fits
    for name, span in _declared_names(ast):
        if name in KEYWORDS:
            found.append(error(f"keyword {name} cannot be used as a name", span))
    for name in _duplicates(r.name for r in ast.resources):
        span = [r.span for r in ast.resources if r.name == name][1]
        found.append(error(f"duplicate resource name {name}", span))
    for name in _duplicates(s.name for s in ast.skills):
        span = [s.span for s in ast.skills if s.name == name][1]
        found.append(error(f"duplicate skill name {name}", span))
    for resource in ast.resources:
        found.extend(_check_resource(resource))
    for skill in ast.skills:
        found.extend(_check_skill(ast, skill))
    return found
