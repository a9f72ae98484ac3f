"""Skillset DSL: grammar, AST, validation and printing."""

from ..utils.diagnostics import Diagnostic, DiagnosticError, Severity
from .formatter import format_guard, format_skillset, skillset_to_dict, skillset_to_json
from .nodes import (
    And,
    Atom,
    Case,
    Effect,
    GuardExpr,
    Invariant,
    Not,
    Or,
    Param,
    ResourceDecl,
    SkillDecl,
    SkillsetAst,
    evaluate_guard,
    iter_atoms,
)
from .parser import check_skillset, parse_skillset, parse_skillset_syntax
from .validator import validate_skillset

__all__ = [
    "And",
    "Atom",
    "Case",
    "Diagnostic",
    "DiagnosticError",
    "Effect",
    "GuardExpr",
    "Invariant",
    "Not",
    "Or",
    "Param",
    "ResourceDecl",
    "Severity",
    "SkillDecl",
    "SkillsetAst",
    "check_skillset",
    "evaluate_guard",
    "format_guard",
    "format_skillset",
    "iter_atoms",
    "parse_skillset",
    "parse_skillset_syntax",
    "skillset_to_dict",
    "skillset_to_json",
    "validate_skillset",
]
