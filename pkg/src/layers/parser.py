"""Parser and scope checker for layer-model files."""

import functools
import logging
import os
from typing import Iterable, List, Optional, Tuple, Union

import lark
from lark import Transformer
from lark.exceptions import LarkError, UnexpectedInput

from ..lts.lts import STUTTER
from ..utils.diagnostics import Diagnostic, DiagnosticError, diagnostic_from_lark, error, has_errors
from .model import (
    DECISION,
    FUNCTIONAL,
    TRUE,
    Affine,
    BoolConst,
    Compare,
    CondAnd,
    CondNot,
    CondOr,
    Edge,
    GuardedTs,
    Variable,
    condition_variables,
)

logger = logging.getLogger(__name__)

_GRAMMAR_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "layer_model.lark")


@functools.lru_cache(maxsize=None)
def _parser() -> lark.Lark:
    return lark.Lark.open(_GRAMMAR_PATH, parser="lalr", maybe_placeholders=True)


def _span(token) -> Tuple[int, int]:
    return (token.line, token.column)


class _LayerModelTransformer(Transformer):
    def start(self, items):
        return items[0]

    def model(self, items):
        name, role, *members = items
        fields = {"variables": [], "locations": [], "binds": [], "blocked": [], "edges": []}
        initial = []
        for tag, value in members:
            if tag == "location":
                loc, is_initial = value
                fields["locations"].append(loc)
                if is_initial:
                    initial.append(loc)
            else:
                fields[tag].append(value)
        kind, skill = role if role is not None else (None, None)
        model = GuardedTs(
            name=str(name),
            variables=tuple(fields["variables"]),
            locations=tuple(fields["locations"]),
            initial=initial[0] if initial else "",
            edges=tuple(fields["edges"]),
            kind=kind,
            skill=skill,
            binds=tuple(fields["binds"]),
            blocked=tuple(fields["blocked"]),
            span=_span(name),
        )
        # extra initial markers are reported by the scope check
        return model, initial

    def role(self, items):
        return (str(items[0]), str(items[1]))

    def var_decl(self, items):
        name, lo, hi, init = items
        return ("variables", Variable(str(name), lo, hi, init, span=_span(name)))

    def any_init(self, items):
        return None

    def number(self, items):
        return int(items[0])

    def neg_int(self, items):
        return -int(items[0])

    def loc_decl(self, items):
        return ("location", (str(items[0]), items[1] is not None))

    def bind_decl(self, items):
        return ("binds", (str(items[0]), str(items[1])))

    def block_decl(self, items):
        return ("blocked", str(items[0]))

    def edge(self, items):
        source, target, event, internal, guard, updates = items
        return ("edges", Edge(
            source=str(source),
            event=str(event),
            target=str(target),
            internal=internal is not None,
            guard=guard if guard is not None else TRUE,
            updates=tuple(updates or ()),
            span=_span(source),
        ))

    def when_clause(self, items):
        return items[0]

    def do_clause(self, items):
        return list(items)

    def update(self, items):
        return (str(items[0]), items[1])

    def cor(self, items):
        return CondOr(items[0], items[1])

    def cconj(self, items):
        return CondAnd(items[0], items[1])

    def cneg(self, items):
        return CondNot(items[0])

    def ctrue(self, items):
        return BoolConst(True)

    def cfalse(self, items):
        return BoolConst(False)

    def compare(self, items):
        return Compare(items[0], str(items[1]), items[2])

    def add(self, items):
        return items[0] + items[1]

    def sub(self, items):
        return items[0] - items[1]

    def negate(self, items):
        return items[0].scale(-1)

    def scaled(self, items):
        return Affine.variable(str(items[1]), int(items[0]))

    def scaled_right(self, items):
        return Affine.variable(str(items[0]), int(items[1]))

    def const(self, items):
        return Affine.constant(int(items[0]))

    def var(self, items):
        return Affine.variable(str(items[0]))


def _duplicates(names: Iterable[str]) -> List[str]:
    seen, dups = set(), []
    for name in names:
        if name in seen and name not in dups:
            dups.append(name)
        seen.add(name)
    return dups


def validate_layer_model(model: GuardedTs, initial_markers: Optional[List[str]] = None) -> List[Diagnostic]:
    """
    Scope and consistency checks of a layer model.

    Args:
        model: The parsed model
        initial_markers: Locations marked ``initial`` in the source, if known

    Returns:
        Error diagnostics, one per problem
    """
    found: List[Diagnostic] = []
    markers = initial_markers if initial_markers is not None else ([model.initial] if model.initial else [])
    if model.kind is not None and model.kind not in (FUNCTIONAL, DECISION):
        found.append(error(f"unknown interface kind {model.kind}", model.span))
    if not model.locations:
        found.append(error(f"model {model.name} declares no location", model.span))
    elif not markers:
        found.append(error(f"model {model.name} has no initial location", model.span))
    elif len(markers) > 1:
        found.append(error(f"model {model.name} has {len(markers)} initial locations", model.span))
    for name in _duplicates(model.locations):
        found.append(error(f"duplicate location {name}", model.span))
    for name in _duplicates(v.name for v in model.variables):
        found.append(error(f"duplicate variable {name}", model.variable(name).span))
    for v in model.variables:
        if v.lo > v.hi:
            found.append(error(f"empty domain [{v.lo}, {v.hi}] of variable {v.name}", v.span))
        elif v.init is not None and not v.lo <= v.init <= v.hi:
            found.append(error(f"initial value {v.init} of {v.name} outside [{v.lo}, {v.hi}]", v.span))
    for name in _duplicates(local for local, _ in model.binds):
        found.append(error(f"event {name} is bound twice", model.span))

    declared_locations = set(model.locations)
    declared_variables = {v.name for v in model.variables}
    events = [e.event for e in model.edges] + list(model.blocked) + [c for _, c in model.binds]
    if STUTTER in events or STUTTER in {local for local, _ in model.binds}:
        found.append(error(f"event name {STUTTER} is reserved", model.span))
    internal = {e.event for e in model.edges if e.internal}
    for e in model.edges:
        if not e.internal and e.event in internal:
            found.append(error(f"event {e.event} is used both as internal and external", e.span))
        if e.internal and e.event in dict(model.binds):
            found.append(error(f"internal event {e.event} cannot be bound", e.span))
        for loc in (e.source, e.target):
            if loc not in declared_locations:
                found.append(error(f"undeclared location {loc}", e.span))
        for name in condition_variables(e.guard):
            if name not in declared_variables:
                found.append(error(f"undeclared variable {name}", e.span))
        for target, expr in e.updates:
            for name in (target,) + expr.variables():
                if name not in declared_variables:
                    found.append(error(f"undeclared variable {name}", e.span))
        for name in _duplicates(t for t, _ in e.updates):
            found.append(error(f"variable {name} is updated twice on one edge", e.span))
    for name in model.blocked:
        if name in internal:
            found.append(error(f"internal event {name} cannot be blocked", model.span))
    return found


def check_layer_model(text: Union[str, bytes]) -> Tuple[Optional[GuardedTs], List[Diagnostic]]:
    """
    Parse and scope-check a layer model.

    Returns:
        Tuple of (model, diagnostics); model is None when there are errors
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")
    try:
        model, markers = _LayerModelTransformer().transform(_parser().parse(text))
    except UnexpectedInput as exc:
        return None, [diagnostic_from_lark(exc, text, _parser())]
    except RecursionError:
        return None, [error("condition nesting too deep", (1, 1))]
    except LarkError as exc:
        logger.debug("lark failure: %s", exc)
        return None, [error(f"syntax error: {exc}", (1, 1))]
    diagnostics = validate_layer_model(model, markers)
    if has_errors(diagnostics):
        return None, diagnostics
    return model, diagnostics


def parse_layer_model(text: Union[str, bytes]) -> GuardedTs:
    """
    Parse a layer model.

    Args:
        text: Model source

    Returns:
        The GuardedTs

    Raises:
        DiagnosticError: On syntax or scope errors
    """
    model, diagnostics = check_layer_model(text)
    if model is None:
        raise DiagnosticError(diagnostics)
    return model
