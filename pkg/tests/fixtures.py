"""Shared inputs: the goto skillset and its closed networks."""

import os

from src.compiler.compile import CompileOptions, compile_skillset
from src.layers.binding import attach
from src.layers.builtins import abstract_decision_model, builtin_refined_goto
from src.skill_lang.parser import parse_skillset
from src.utils.file_utils import read_source

SAMPLES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "samples")
ROBOT_PATH = os.path.join(SAMPLES_DIR, "custom_robot.skl")

ROBOT_SOURCE = read_source(ROBOT_PATH)

NOT_RUNNING_FOREVER = "F G !(goto @ Running)"
CRITICAL_IMPLIES_NOT_RUNNING = "F G (battery @ Critical) -> F G !(goto @ Running)"
NEVER_RUNNING = "G !(goto @ Running)"


def goto_compiled(autonomy: str = "monitored"):
    return compile_skillset(parse_skillset(ROBOT_SOURCE), CompileOptions(autonomy=autonomy))


def abstract_closure(autonomy: str = "monitored"):
    """The goto skillset with the abstract functional and decision layers."""
    return attach(goto_compiled(autonomy), auto_abstract=True)


def refined_closure(bmax: int = 6, dmax: int = 2):
    """The goto skillset with the refined goto model and the abstract decision layer."""
    compiled = goto_compiled()
    models = [builtin_refined_goto(bmax=bmax, dmax=dmax), abstract_decision_model(compiled)]
    return attach(compiled, models)
