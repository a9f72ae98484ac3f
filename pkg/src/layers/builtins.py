"""Built-in layer models: the most abstract functional and decision layers
and the refined battery-aware ``goto`` functional layer."""

from typing import Iterable, List, Optional, Sequence, Tuple

from ..compiler.compile import CompiledSkillset
from ..compiler.resources import autonomous_event
from ..lts.lts import Lts
from .expand import expand
from .model import FUNCTIONAL, Affine, Compare, CondAnd, Edge, GuardedTs, Variable

ABSTRACT_LOCATION = "f0"
DECISION_LOCATION = "d0"
DECISION_MODEL = "decision"


def functional_model_name(skill: str) -> str:
    return f"{skill}_functional"


def abstract_functional_model(compiled: CompiledSkillset, skill: str) -> GuardedTs:
    """One location with a self-loop on every functional-interface event of ``skill``."""
    edges = tuple(
        Edge(ABSTRACT_LOCATION, event, ABSTRACT_LOCATION)
        for event in compiled.functional_interface(skill)
    )
    return GuardedTs(
        name=functional_model_name(skill),
        locations=(ABSTRACT_LOCATION,),
        initial=ABSTRACT_LOCATION,
        edges=edges,
        kind=FUNCTIONAL,
        skill=skill,
    )


def abstract_decision_model(compiled: CompiledSkillset, skills: Optional[Iterable[str]] = None) -> GuardedTs:
    """One location with self-loops on ``request_s`` and ``interrupt_s`` of the given skills (default all)."""
    chosen = list(compiled.skills if skills is None else skills)
    edges = tuple(
        Edge(DECISION_LOCATION, event, DECISION_LOCATION)
        for skill in chosen
        for event in compiled.decision_interface(skill)
    )
    return GuardedTs(
        name=DECISION_MODEL,
        locations=(DECISION_LOCATION,),
        initial=DECISION_LOCATION,
        edges=edges,
    )


def builtin_abstract_functional(compiled: CompiledSkillset, skill: str) -> Lts:
    """
    The most abstract functional layer of one skill.

    Args:
        compiled: The compiled skillset providing the interface
        skill: Skill name

    Returns:
        A single-state Lts with one self-loop per interface event
    """
    return expand(abstract_functional_model(compiled, skill))


def builtin_abstract_decision(compiled: CompiledSkillset, skills: Optional[Iterable[str]] = None) -> Lts:
    return expand(abstract_decision_model(compiled, skills))


def _ge(var: str, k: int) -> Compare:
    return Compare(Affine.variable(var), ">=", Affine.constant(k))


def _lt(var: str, k: int) -> Compare:
    return Compare(Affine.variable(var), "<", Affine.constant(k))


def builtin_refined_goto(
    bmax: int = 6,
    dmax: int = 2,
    skill: str = "goto",
    success_case: str = "arrived",
    failure_case: str = "blocked",
    battery: str = "battery",
    normal: str = "Normal",
    critical: str = "Critical",
    step_cost: int = 2,
) -> GuardedTs:
    """
    Functional layer of a move skill that consumes battery.

    Each internal ``move`` advances one meter and costs ``step_cost`` units.
    ``blevel`` in [0, bmax] is chosen once at initialization and never
    increases; ``d`` is the remaining distance, set to some k in [1, dmax]
    by each successful validation. Validation succeeds only while
    ``blevel >= step_cost``. When the level drops below that, the model
    allows the battery resource to switch from ``normal`` to ``critical``
    and forbids the way back.

    Args:
        bmax: Battery capacity in units
        dmax: Largest requested distance in meters
        skill: Name of the compiled skill the model implements
        success_case: Success case reported on arrival
        failure_case: Failure case reported when the battery runs low
        battery: Battery resource name
        normal: Battery state while the level is sufficient
        critical: Battery state once the level is too low
        step_cost: Battery units consumed per meter

    Returns:
        The GuardedTs, bound to the skill's compiled event names

    Raises:
        ValueError: If bmax < 2 or dmax < 1
    """
    if bmax < 2:
        raise ValueError(f"Bmax must be at least 2, got {bmax}")
    if dmax < 1:
        raise ValueError(f"Dmax must be at least 1, got {dmax}")
    if step_cost < 1:
        raise ValueError(f"step cost must be positive, got {step_cost}")

    low = _lt("blevel", step_cost)
    can_move = CondAnd(_ge("d", 1), _ge("blevel", step_cost))
    move = (("d", Affine.variable("d") - Affine.constant(1)),
            ("blevel", Affine.variable("blevel") - Affine.constant(step_cost)))
    locations = ("idle", "validated", "started", "moving")

    edges: List[Edge] = [
        Edge("idle", "validate_success", "validated", guard=_ge("blevel", step_cost),
             updates=(("d", Affine.constant(k)),))
        for k in range(1, dmax + 1)
    ]
    edges += [
        Edge("idle", "validate_failure", "idle", guard=low),
        Edge("validated", "start_hook", "started"),
        Edge("started", "move", "moving", internal=True, guard=can_move, updates=move),
        Edge("moving", "move", "moving", internal=True, guard=can_move, updates=move),
        Edge("moving", "success", "idle", guard=Compare(Affine.variable("d"), "==", Affine.constant(0))),
        Edge("moving", "failure", "idle", guard=CondAnd(_ge("d", 1), low)),
        Edge("moving", "interrupted", "idle"),
    ]
    edges += [Edge(loc, "battery_critical_sync", loc, guard=low) for loc in locations]

    binds: Tuple[Tuple[str, str], ...] = (
        ("validate_success", f"validate_success_{skill}"),
        ("validate_failure", f"validate_failure_{skill}"),
        ("start_hook", f"start_hook_{skill}"),
        ("success", f"success_{skill}_{success_case}"),
        ("failure", f"failure_{skill}_{failure_case}"),
        ("interrupted", f"interrupted_{skill}"),
        ("battery_critical_sync", autonomous_event(battery, normal, critical)),
    )
    return GuardedTs(
        name=f"{skill}_refined",
        variables=(Variable("d", 0, dmax, 0), Variable("blevel", 0, bmax, None)),
        locations=locations,
        initial="idle",
        edges=tuple(edges),
        kind=FUNCTIONAL,
        skill=skill,
        binds=binds,
        blocked=(autonomous_event(battery, critical, normal),),
    )


BUILTIN_NAMES = ("refined-goto", "abstract-functional", "abstract-decision")


def parse_builtin_spec(text: str) -> Tuple[str, dict]:
    """
    Split a ``NAME:key=value,...`` selector.

    Example:
        >>> parse_builtin_spec("refined-goto:Bmax=6,Dmax=2")
        ('refined-goto', {'Bmax': '6', 'Dmax': '2'})
    """
    name, _, rest = text.partition(":")
    name = name.strip()
    if name not in BUILTIN_NAMES:
        raise ValueError(f"unknown builtin model {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    params = {}
    for item in filter(None, (p.strip() for p in rest.split(","))):
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ValueError(f"malformed builtin parameter {item!r}")
        params[key.strip()] = value.strip()
    return name, params


def _int_param(params: dict, key: str, default: int) -> int:
    value = params.pop(key, None)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"parameter {key} must be an integer, got {value!r}") from None


def builtin_model(compiled: CompiledSkillset, name: str, params: dict) -> GuardedTs:
    """Instantiate a builtin selected on the command line."""
    params = dict(params)
    if name == "refined-goto":
        model = builtin_refined_goto(
            bmax=_int_param(params, "Bmax", 6),
            dmax=_int_param(params, "Dmax", 2),
            skill=params.pop("skill", "goto"),
            success_case=params.pop("success", "arrived"),
            failure_case=params.pop("failure", "blocked"),
            battery=params.pop("battery", "battery"),
        )
    elif name == "abstract-functional":
        skill = params.pop("skill", None)
        if skill is None or skill not in compiled.skills:
            raise ValueError(f"abstract-functional needs skill=NAME of a compiled skill, got {skill!r}")
        model = abstract_functional_model(compiled, skill)
    elif name == "abstract-decision":
        skills: Optional[Sequence[str]] = None
        if "skills" in params:
            skills = [s for s in params.pop("skills").split("+") if s]
        model = abstract_decision_model(compiled, skills)
    else:
        raise ValueError(f"unknown builtin model {name!r}")
    if params:
        raise ValueError(f"unknown parameter(s) for {name}: {', '.join(sorted(params))}")
    return model
