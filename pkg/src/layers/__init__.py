"""
Functional- and decision-layer models: file format, expansion, built-ins
and attachment to compiled skillsets.
"""

from .binding import AttachedNetwork, InterfaceError, LayerBinding, attach, bind_model, coverage
from .builtins import (
    BUILTIN_NAMES,
    abstract_decision_model,
    abstract_functional_model,
    builtin_abstract_decision,
    builtin_abstract_functional,
    builtin_model,
    builtin_refined_goto,
    parse_builtin_spec,
)
from .expand import DEFAULT_EXPANSION_BOUND, PRE_INITIAL, ExpansionError, expand, state_name
from .formatter import format_condition, format_layer_model
from .model import DECISION, FUNCTIONAL, Affine, Compare, Edge, GuardedTs, Variable
from .parser import check_layer_model, parse_layer_model, validate_layer_model

__all__ = [
    "Affine",
    "AttachedNetwork",
    "BUILTIN_NAMES",
    "Compare",
    "DECISION",
    "DEFAULT_EXPANSION_BOUND",
    "Edge",
    "ExpansionError",
    "FUNCTIONAL",
    "GuardedTs",
    "InterfaceError",
    "LayerBinding",
    "PRE_INITIAL",
    "Variable",
    "abstract_decision_model",
    "abstract_functional_model",
    "attach",
    "bind_model",
    "builtin_abstract_decision",
    "builtin_abstract_functional",
    "builtin_model",
    "builtin_refined_goto",
    "check_layer_model",
    "coverage",
    "expand",
    "format_condition",
    "format_layer_model",
    "parse_builtin_spec",
    "parse_layer_model",
    "state_name",
    "validate_layer_model",
]
