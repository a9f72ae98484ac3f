"""Printing of layer models in their file format."""

from typing import List

from .model import TRUE, Affine, BoolConst, Compare, CondAnd, CondNot, CondOr, Condition, Edge, GuardedTs


def format_affine(expr: Affine) -> str:
    parts: List[str] = []
    for name, coeff in expr.coeffs:
        magnitude = abs(coeff)
        term = name if magnitude == 1 else f"{magnitude} * {name}"
        if not parts:
            parts.append(term if coeff > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if coeff > 0 else f"- {term}")
    if not parts:
        return str(expr.const)
    if expr.const > 0:
        parts.append(f"+ {expr.const}")
    elif expr.const < 0:
        parts.append(f"- {-expr.const}")
    return " ".join(parts)


def format_condition(cond: Condition) -> str:
    if isinstance(cond, Compare):
        return f"{format_affine(cond.left)} {cond.op} {format_affine(cond.right)}"
    if isinstance(cond, BoolConst):
        return "true" if cond.value else "false"
    if isinstance(cond, CondNot):
        inner = format_condition(cond.operand)
        return f"!{inner}" if isinstance(cond.operand, (CondNot, BoolConst)) else f"!({inner})"
    left = format_condition(cond.left)
    right = format_condition(cond.right)
    if isinstance(cond, CondAnd):
        if isinstance(cond.left, CondOr):
            left = f"({left})"
        if isinstance(cond.right, (CondAnd, CondOr)):
            right = f"({right})"
        return f"{left} && {right}"
    if isinstance(cond.right, CondOr):
        right = f"({right})"
    return f"{left} || {right}"


def _edge(edge: Edge) -> str:
    text = f"edge {edge.source} -> {edge.target} on {edge.event}"
    if edge.internal:
        text += " internal"
    if edge.guard != TRUE:
        text += f" when {format_condition(edge.guard)}"
    if edge.updates:
        text += " do " + ", ".join(f"{name} := {format_affine(expr)}" for name, expr in edge.updates)
    return text


def format_layer_model(model: GuardedTs) -> str:
    """
    Print a layer model so that parsing the text gives back an equal model.

    Example:
        >>> print(format_layer_model(model), end="")
        model F for functional goto {
          loc f0 initial
          edge f0 -> f0 on validate_success_goto
        }
    """
    header = f"model {model.name}"
    if model.kind is not None:
        header += f" for {model.kind} {model.skill}"
    lines = [header + " {"]
    for v in model.variables:
        init = "any" if v.init is None else str(v.init)
        lines.append(f"  var {v.name} in [{v.lo}, {v.hi}] init {init}")
    for loc in model.locations:
        lines.append(f"  loc {loc} initial" if loc == model.initial else f"  loc {loc}")
    lines.extend(f"  bind {local} -> {name}" for local, name in model.binds)
    lines.extend(f"  block {name}" for name in model.blocked)
    lines.extend(f"  {_edge(e)}" for e in model.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"
