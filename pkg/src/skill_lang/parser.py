"""Parser for the skillset DSL.

The grammar lives in ``skillset.lark``; a lark Transformer turns the parse
tree into the frozen dataclasses of ``nodes``. Parsing is total: any text
yields either an AST or error diagnostics, never an exception.
"""

import functools
import logging
import os
from typing import List, Optional, Tuple, Union

import lark
from lark import Transformer
from lark.exceptions import LarkError, UnexpectedInput

from ..utils.diagnostics import (
    Diagnostic,
    DiagnosticError,
    diagnostic_from_lark,
    error,
    has_errors,
)
from .nodes import (
    And,
    Atom,
    Case,
    Effect,
    Invariant,
    Not,
    Or,
    Param,
    ResourceDecl,
    SkillDecl,
    SkillsetAst,
)
from .validator import validate_skillset

logger = logging.getLogger(__name__)

_GRAMMAR_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "skillset.lark")


@functools.lru_cache(maxsize=None)
def _parser() -> lark.Lark:
    """Create/retrieve the singleton LALR parser for the skillset grammar."""
    return lark.Lark.open(_GRAMMAR_PATH, parser="lalr")


def _span(token) -> Tuple[int, int]:
    return (token.line, token.column)


class _SkillsetTransformer(Transformer):
    """Transforms the lark tree into ``SkillsetAst``."""

    def start(self, items):
        return items[0]

    def skillset(self, items):
        name, *members = items
        resources, skills = [], []
        for member in members:
            if isinstance(member, SkillDecl):
                skills.append(member)
            else:
                resources.extend(member)
        return SkillsetAst(str(name), tuple(resources), tuple(skills), span=_span(name))

    def resource_block(self, items):
        return list(items)

    def resource_decl(self, items):
        name, *states, initial, transitions = items
        return ResourceDecl(
            str(name),
            tuple(str(s) for s in states),
            str(initial),
            transitions,
            span=_span(name),
            state_spans=tuple(_span(s) for s in states),
        )

    def all_transitions(self, items):
        return None

    def explicit_transitions(self, items):
        return tuple(items)

    def transition_pair(self, items):
        return (str(items[0]), str(items[1]))

    def skill(self, items):
        name, *parts = items
        fields = {
            "inputs": (),
            "outputs": [],
            "precondition": None,
            "start_effects": [],
            "invariants": (),
            "interrupt_effects": (),
            "success_cases": [],
            "failure_cases": [],
        }
        for tag, value in parts:
            if tag in ("outputs", "start_effects"):
                fields[tag].append(value)
            elif tag in ("success_cases", "failure_cases"):
                fields[tag].extend(value)
            else:
                fields[tag] = value
        for key in ("outputs", "start_effects", "success_cases", "failure_cases"):
            fields[key] = tuple(fields[key])
        return SkillDecl(str(name), span=_span(name), **fields)

    def input_block(self, items):
        return ("inputs", tuple(items))

    def param(self, items):
        return Param(str(items[0]), str(items[1]), span=_span(items[0]))

    def output_decl(self, items):
        return ("outputs", Param(str(items[0]), str(items[1]), span=_span(items[0])))

    def precondition(self, items):
        return ("precondition", items[0])

    def start_effect(self, items):
        return ("start_effects", items[0])

    def invariant_block(self, items):
        return ("invariants", tuple(items))

    def invariant(self, items):
        return Invariant(str(items[0]), items[1], span=_span(items[0]))

    def interrupt_block(self, items):
        return ("interrupt_effects", items[0] if items else ())

    def success_block(self, items):
        return ("success_cases", list(items))

    def failure_block(self, items):
        return ("failure_cases", list(items))

    def case(self, items):
        effects = items[1] if len(items) > 1 else ()
        return Case(str(items[0]), effects, span=_span(items[0]))

    def effect_list(self, items):
        return tuple(items)

    def effect(self, items):
        return Effect(str(items[0]), str(items[1]), span=_span(items[0]))

    def disj(self, items):
        return Or(items[0], items[1])

    def conj(self, items):
        return And(items[0], items[1])

    def neg(self, items):
        return Not(items[0])

    def atom(self, items):
        resource, op, state = items
        return Atom(str(resource), str(op), str(state), span=_span(resource))


def parse_skillset_syntax(text: Union[str, bytes]) -> Tuple[Optional[SkillsetAst], List[Diagnostic]]:
    """
    Parse skillset source without validating it.

    Args:
        text: Source text; bytes are decoded as UTF-8 with replacement

    Returns:
        Tuple of (ast, diagnostics); ast is None when the text has syntax errors
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")
    try:
        tree = _parser().parse(text)
        return _SkillsetTransformer().transform(tree), []
    except UnexpectedInput as exc:
        return None, [diagnostic_from_lark(exc, text, _parser())]
    except RecursionError:
        return None, [error("guard nesting too deep", (1, 1))]
    except LarkError as exc:
        logger.debug("lark failure: %s", exc)
        return None, [error(f"syntax error: {exc}", (1, 1))]


def check_skillset(text: Union[str, bytes]) -> Tuple[Optional[SkillsetAst], List[Diagnostic]]:
    """
    Parse and validate skillset source.

    Args:
        text: Source text

    Returns:
        Tuple of (ast, diagnostics). The AST is None when any error was
        found; warnings are reported alongside a usable AST.
    """
    ast, diagnostics = parse_skillset_syntax(text)
    if ast is None:
        return None, diagnostics
    try:
        diagnostics = validate_skillset(ast)
    except RecursionError:
        return None, [error("guard nesting too deep", ast.span)]
    if has_errors(diagnostics):
        return None, diagnostics
    return ast, diagnostics


def parse_skillset(text: Union[str, bytes]) -> SkillsetAst:
    """
    Parse and validate skillset source.

    Args:
        text: Source text

    Returns:
        The validated AST

    Raises:
        DiagnosticError: If the source has lexical, syntax or validation errors
    """
    ast, diagnostics = check_skillset(text)
    if ast is None:
        raise DiagnosticError(diagnostics)
    return ast
