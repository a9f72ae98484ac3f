"""Parser for LTL property text."""

import ast
import functools
import logging
import os
from typing import List, Optional, Tuple, Union

import lark
from lark import Transformer
from lark.exceptions import LarkError, UnexpectedInput, VisitError

from ..utils.diagnostics import Diagnostic, DiagnosticError, diagnostic_from_lark, error
from .formula import (
    FALSE,
    TRUE,
    Always,
    And,
    Atom,
    Eventually,
    Implies,
    LtlFormula,
    Next,
    Not,
    Or,
    Release,
    Until,
)

logger = logging.getLogger(__name__)

_GRAMMAR_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "ltl.lark")


@functools.lru_cache(maxsize=None)
def _parser() -> lark.Lark:
    return lark.Lark.open(_GRAMMAR_PATH, parser="lalr")


class _LtlTransformer(Transformer):
    def start(self, items):
        return items[0]

    def implies(self, items):
        return Implies(items[0], items[1])

    def or_(self, items):
        return Or(items[0], items[1])

    def and_(self, items):
        return And(items[0], items[1])

    def until(self, items):
        return Until(items[0], items[1])

    def release(self, items):
        return Release(items[0], items[1])

    def not_(self, items):
        return Not(items[0])

    def next(self, items):
        return Next(items[0])

    def eventually(self, items):
        return Eventually(items[0])

    def always(self, items):
        return Always(items[0])

    def true(self, items):
        return TRUE

    def false(self, items):
        return FALSE

    def atom(self, items):
        return Atom(str(items[0]), str(items[1]))

    def quoted(self, items):
        return ast.literal_eval(str(items[0]))


def check_ltl(text: Union[str, bytes]) -> Tuple[Optional[LtlFormula], List[Diagnostic]]:
    """
    Parse an LTL formula.

    Returns:
        Tuple of (formula, diagnostics); formula is None on syntax errors
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")
    try:
        return _LtlTransformer().transform(_parser().parse(text)), []
    except UnexpectedInput as exc:
        return None, [diagnostic_from_lark(exc, text, _parser())]
    except VisitError as exc:
        return None, [error(f"malformed quoted name: {exc.orig_exc}", (1, 1))]
    except RecursionError:
        return None, [error("formula nesting too deep", (1, 1))]
    except LarkError as exc:
        logger.debug("lark failure: %s", exc)
        return None, [error(f"syntax error: {exc}", (1, 1))]


def parse_ltl(text: Union[str, bytes]) -> LtlFormula:
    """
    Parse an LTL formula.

    Args:
        text: Formula text, e.g. ``F G !(goto @ Running)``

    Returns:
        The formula

    Raises:
        DiagnosticError: On syntax errors
    """
    formula, diagnostics = check_ltl(text)
    if formula is None:
        raise DiagnosticError(diagnostics)
    return formula
