"""Disjunctive normal form of resource guards.

A term is a conjunction of per-resource constraints, each constraint being
the set of states a resource may be in. Resources left unconstrained are
omitted, so the empty term is ``true`` and an empty DNF is ``false``.
"""

from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from ..skill_lang.nodes import And, Atom, GuardExpr, Not, Or, SkillsetAst, iter_atoms

Term = Tuple[Tuple[str, FrozenSet[str]], ...]

MAX_DISJUNCTS = 64


class GuardTooComplex(Exception):
    """A guard's DNF exceeds the disjunct limit."""

    def __init__(self, atom: Atom, size: int, limit: int):
        super().__init__(
            f"guard starting at {atom.resource} {atom.op} {atom.state} needs more than "
            f"{limit} disjuncts in DNF ({size})"
        )
        self.atom = atom


def _atom_states(ast: SkillsetAst, atom: Atom, positive: bool) -> FrozenSet[str]:
    states = ast.resource(atom.resource).states
    equal = (atom.op == "==") == positive
    return frozenset(s for s in states if (s == atom.state) == equal)


def _conjoin(ast: SkillsetAst, left: Dict[str, FrozenSet[str]], right: Dict[str, FrozenSet[str]]) -> Optional[Dict[str, FrozenSet[str]]]:
    term = dict(left)
    for resource, allowed in right.items():
        merged = term.get(resource, allowed) & allowed
        if not merged:
            return None
        term[resource] = merged
    return term


def _dnf(ast: SkillsetAst, guard: GuardExpr, positive: bool, limit: int, first: Atom) -> List[Dict[str, FrozenSet[str]]]:
    if isinstance(guard, Atom):
        allowed = _atom_states(ast, guard, positive)
        return [{guard.resource: allowed}] if allowed else []
    if isinstance(guard, Not):
        return _dnf(ast, guard.operand, not positive, limit, first)
    # De Morgan: a negated conjunction distributes like a disjunction
    is_or = isinstance(guard, Or) == positive
    left = _dnf(ast, guard.left, positive, limit, first)
    right = _dnf(ast, guard.right, positive, limit, first)
    if is_or:
        terms = left + right
    else:
        terms = []
        for a in left:
            for b in right:
                term = _conjoin(ast, a, b)
                if term is not None:
                    terms.append(term)
                    if len(terms) > limit * limit:
                        raise GuardTooComplex(first, len(terms), limit)
    if len(terms) > limit * limit:
        raise GuardTooComplex(first, len(terms), limit)
    return terms


def _normalize(ast: SkillsetAst, terms: Sequence[Dict[str, FrozenSet[str]]]) -> List[Term]:
    order = {r.name: i for i, r in enumerate(ast.resources)}
    result: List[Term] = []
    for term in terms:
        kept = tuple(sorted(
            ((r, allowed) for r, allowed in term.items()
             if allowed != frozenset(ast.resource(r).states)),
            key=lambda item: order[item[0]],
        ))
        if kept not in result:
            result.append(kept)
    return result


def guard_dnf(
    ast: SkillsetAst,
    guard: Optional[GuardExpr],
    negated: bool = False,
    limit: int = MAX_DISJUNCTS,
) -> List[Term]:
    """
    Convert a guard (or its negation) to DNF over per-resource state sets.

    Args:
        ast: Skillset declaring the resources the guard mentions
        guard: The guard; None stands for ``true``
        negated: Convert the negation of the guard instead
        limit: Maximum number of disjuncts

    Returns:
        Distinct satisfiable terms in a deterministic order

    Raises:
        GuardTooComplex: If the DNF has more than ``limit`` disjuncts
    """
    if guard is None:
        return [] if negated else [()]
    first = next(iter_atoms(guard))
    terms = _normalize(ast, _dnf(ast, guard, not negated, limit, first))
    if () in terms:
        return [()]
    if len(terms) > limit:
        raise GuardTooComplex(first, len(terms), limit)
    return terms


def term_resources(term: Term) -> Tuple[str, ...]:
    return tuple(r for r, _ in term)


def merge_single_resource(terms: Sequence[Term]) -> List[Term]:
    """Merge terms constraining the same single resource into one (union of states)."""
    merged: List[Term] = []
    single: Dict[str, int] = {}
    for term in terms:
        if len(term) == 1:
            resource, allowed = term[0]
            if resource in single:
                index = single[resource]
                merged[index] = ((resource, merged[index][0][1] | allowed),)
                continue
            single[resource] = len(merged)
        merged.append(term)
    return merged


def satisfies(term: Term, assignment: Dict[str, str]) -> bool:
    return all(assignment[r] in allowed for r, allowed in term)
