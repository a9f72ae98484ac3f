"""Graphviz DOT rendering of transition systems."""

from typing import Iterator, Mapping, Optional, Sequence

from .lts import Lts


def _gvquote(s: str) -> str:
    return '"{}"'.format(s.replace("\\", "\\\\").replace('"', r"\""))


def _lines(lts: Lts, legend: Optional[Mapping[str, Sequence[str]]]) -> Iterator[str]:
    ids = {state: f"s{i}" for i, state in enumerate(lts.states)}
    yield f"digraph {_gvquote(lts.name)} {{\n"
    yield "  rankdir=LR;\n"
    yield '  __start [shape=point label=""];\n'
    for state in lts.states:
        yield f"  {ids[state]} [shape=ellipse label={_gvquote(state)}];\n"
    yield f"  __start -> {ids[lts.initial]};\n"
    for t in lts.transitions:
        yield f"  {ids[t.source]} -> {ids[t.target]} [label={_gvquote(t.event)}];\n"
    if legend:
        rows = [f"{title}: {', '.join(events) if events else '-'}" for title, events in legend.items()]
        # \l left-justifies each row in graphviz labels
        label = "".join(row.replace("\\", "\\\\").replace('"', r"\"") + r"\l" for row in rows)
        yield f'  __legend [shape=note label="{label}"];\n'
    yield "}\n"


def lts_to_dot(lts: Lts, legend: Optional[Mapping[str, Sequence[str]]] = None) -> str:
    """
    Render an Lts as a DOT digraph.

    Args:
        lts: The transition system (an explicit product works as well)
        legend: Optional titled event lists drawn as a note node

    Returns:
        DOT source; the initial state is marked by an arrow from a point node
    """
    return "".join(_lines(lts, legend))
