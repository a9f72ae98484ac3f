"""Model-checking results and counterexample lassos."""

import json
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from ..lts.network import GlobalState
from .formula import Atom, LtlFormula, atoms

HOLDS = "holds"
VIOLATED = "violated"


@dataclass(frozen=True)
class Step:
    """A global state reached by ``event`` (None for the initial state)."""

    event: Optional[str]
    state: GlobalState
    local: Tuple[Tuple[str, str], ...]

    def local_state(self, component: str) -> Optional[str]:
        return dict(self.local).get(component)

    def to_dict(self) -> dict:
        return {"event": self.event, "state": dict(self.local)}


@dataclass(frozen=True)
class Lasso:
    """
    An ultimately periodic run.

    ``prefix`` starts with the initial state; ``cycle`` is nonempty and its
    last step returns to the last state of ``prefix``.
    """

    prefix: Tuple[Step, ...]
    cycle: Tuple[Step, ...]

    def __post_init__(self):
        if not self.prefix or not self.cycle:
            raise ValueError("a lasso needs an initial state and a nonempty cycle")
        if self.cycle[-1].state != self.prefix[-1].state:
            raise ValueError("the cycle does not return to the end of the prefix")

    def word(self, letter: Callable[[Step], object]) -> Tuple[List[object], List[object]]:
        """
        The lasso as a word, one letter per position of the infinite run.

        Returns:
            (prefix letters, cycle letters) for ``eval_word``
        """
        prefix = [letter(s) for s in self.prefix[:-1]]
        cycle = [letter(s) for s in (self.prefix[-1],) + self.cycle[:-1]]
        return prefix, cycle

    def to_dict(self) -> dict:
        return {
            "prefix": [s.to_dict() for s in self.prefix],
            "cycle": [s.to_dict() for s in self.cycle],
        }


def atom_true(step: Step, atom: Atom) -> bool:
    return step.local_state(atom.component) == atom.state


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of checking a formula on a network.

    ``lasso`` is the counterexample when the formula is violated.
    """

    holds: bool
    formula: LtlFormula
    engine: str
    states_explored: int
    time_ms: float
    lasso: Optional[Lasso] = None

    @property
    def verdict(self) -> str:
        return HOLDS if self.holds else VIOLATED

    def letter(self, step: Step) -> Callable[[Atom], bool]:
        return lambda atom: atom_true(step, atom)

    def word(self) -> Tuple[List[object], List[object]]:
        if self.lasso is None:
            raise ValueError("a holding verdict has no counterexample")
        return self.lasso.word(self.letter)

    def valuations(self) -> List[Dict[str, object]]:
        """Lasso steps annotated with the truth of every atom of the formula."""
        if self.lasso is None:
            return []
        found = atoms(self.formula)
        rows = []
        for part, steps in (("prefix", self.lasso.prefix), ("cycle", self.lasso.cycle)):
            for step in steps:
                row = step.to_dict()
                row["part"] = part
                row["atoms"] = {str(a): atom_true(step, a) for a in found}
                rows.append(row)
        return rows

    def to_dict(self, include_time: bool = True) -> dict:
        result: Dict[str, object] = {"verdict": self.verdict, "states_explored": self.states_explored}
        if include_time:
            result["time_ms"] = round(self.time_ms, 3)
        if self.lasso is not None:
            result["lasso"] = self.lasso.to_dict()
        return result

    def to_json(self, include_time: bool = True) -> str:
        return json.dumps(self.to_dict(include_time), indent=2)

    def format_text(self, include_time: bool = True) -> str:
        lines = [f"{self.verdict.upper()}: {self.formula}"]
        stats = f"engine {self.engine}, {self.states_explored} product states"
        if include_time:
            stats += f", {self.time_ms:.1f} ms"
        lines.append(stats)
        if self.lasso is not None:
            found = atoms(self.formula)
            for part, steps in (("prefix", self.lasso.prefix), ("cycle", self.lasso.cycle)):
                lines.append(f"{part}:")
                for step in steps:
                    state = ", ".join(f"{c}={q}" for c, q in step.local)
                    true_atoms = " ".join(str(a) for a in found if atom_true(step, a))
                    event = step.event or "(initial)"
                    lines.append(f"  {event:<32} {state}" + (f"   [{true_atoms}]" if true_atoms else ""))
        return "\n".join(lines)
