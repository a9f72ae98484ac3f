#!/usr/bin/env python3
"""CLI for parsing, compiling, exploring and verifying skillsets."""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from tqdm import tqdm

from ..compiler.compile import AUTONOMY_MODES, CompiledSkillset, CompileOptions, compile_skillset
from ..compiler.dot import component_dots
from ..layers.binding import AttachedNetwork, InterfaceError, attach
from ..layers.builtins import builtin_model, parse_builtin_spec
from ..layers.expand import ExpansionError
from ..layers.parser import check_layer_model
from ..lts.dot import lts_to_dot
from ..lts.explore import DEFAULT_MAX_STATES, reachable
from ..lts.lts import Lts, LtsError
from ..lts.network import Network, stutter_close
from ..ltl.checker import ENGINES, UnresolvedAtomError, model_check
from ..ltl.parser import check_ltl
from ..ltl.formula import LtlFormula
from ..ltl.verdict import Verdict
from ..skill_lang.formatter import skillset_to_json
from ..skill_lang.nodes import SkillsetAst
from ..skill_lang.parser import check_skillset
from ..utils.diagnostics import Diagnostic, DiagnosticError
from ..utils.file_utils import ensure_readable, read_source, write_text
from ..utils.sanitization import sanitize_filename

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_IO = 2
EXIT_VIOLATED = 3
EXIT_DISAGREE = 4

COMMANDS = ("parse", "compile", "verify", "explore")


class SourceError(DiagnosticError):
    """Diagnostics of an input file other than the skillset."""

    def __init__(self, path: str, diagnostics: Sequence[Diagnostic]):
        super().__init__(list(diagnostics))
        self.path = path


@dataclass(frozen=True)
class RunConfig:
    """Options of one command-line invocation."""

    command: str
    skillset: str
    layers: Tuple[str, ...] = ()
    builtins: Tuple[str, ...] = ()
    auto_abstract: bool = False
    prop: Optional[str] = None
    engine: str = "ndfs"
    max_states: int = DEFAULT_MAX_STATES
    output_format: str = "text"
    dot_dir: Optional[str] = None
    autonomy: str = "monitored"
    include_time: bool = True
    dump_ast: bool = False
    verbose: bool = False

    @property
    def has_layers(self) -> bool:
        return bool(self.layers or self.builtins or self.auto_abstract)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            command=args.command,
            skillset=args.skillset,
            layers=tuple(args.layer or ()),
            builtins=tuple(args.builtin or ()),
            auto_abstract=args.auto_abstract,
            prop=getattr(args, "prop", None),
            engine=getattr(args, "engine", "ndfs"),
            max_states=args.max_states,
            output_format=args.format,
            dot_dir=args.dot,
            autonomy=args.autonomy,
            include_time=not args.no_time,
            dump_ast=getattr(args, "dump_ast", False),
            verbose=args.verbose,
        )


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one sub-command per pipeline stage."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("skillset_path", nargs="?", metavar="SKILLSET", help="Skillset source file")
    common.add_argument("--skillset", dest="skillset_flag", metavar="PATH", help="Skillset source file")
    common.add_argument("--layer", action="append", metavar="PATH", help="Layer model file (repeatable)")
    common.add_argument(
        "--builtin", action="append", metavar="NAME:params",
        help="Builtin layer model, e.g. refined-goto:Bmax=6,Dmax=2 (repeatable)",
    )
    common.add_argument(
        "--auto-abstract", action="store_true",
        help="Cover every uncovered interface with the abstract layer models",
    )
    common.add_argument("--max-states", type=_positive, default=DEFAULT_MAX_STATES, help="State bound")
    common.add_argument("--format", choices=("text", "json"), default="text", help="Output format")
    common.add_argument("--dot", metavar="DIR", help="Write one DOT file per component to DIR")
    common.add_argument("--autonomy", choices=AUTONOMY_MODES, default="monitored",
                        help="Which resources change autonomously")
    common.add_argument("--no-time", action="store_true", help="Omit timings from the output")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging")

    parser = argparse.ArgumentParser(
        prog="skillcheck",
        description="Compile robot skillsets to transition systems and model check LTL properties.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    parse_cmd = sub.add_parser("parse", parents=[common], help="Parse and validate a skillset")
    parse_cmd.add_argument("--dump-ast", action="store_true", help="Print the AST as canonical JSON")
    sub.add_parser("compile", parents=[common], help="Compile a skillset and print its manifest")
    verify = sub.add_parser("verify", parents=[common], help="Check an LTL property")
    verify.add_argument("--prop", required=True, metavar="TEXT|@PATH", help="LTL property")
    verify.add_argument("--engine", choices=ENGINES + ("both",), default="ndfs", help="Checking engine")
    sub.add_parser("explore", parents=[common], help="Print reachability statistics")
    return parser


def _print_diagnostics(path: str, diagnostics: Sequence[Diagnostic]) -> None:
    for diagnostic in diagnostics:
        print(f"{path}:{diagnostic}", file=sys.stderr)


def load_skillset(config: RunConfig) -> Tuple[Optional[SkillsetAst], List[Diagnostic]]:
    ensure_readable(config.skillset)
    ast, diagnostics = check_skillset(read_source(config.skillset))
    _print_diagnostics(config.skillset, diagnostics)
    return ast, diagnostics


def _layer_models(config: RunConfig, compiled: CompiledSkillset) -> list:
    models = []
    for path in config.layers:
        ensure_readable(path)
        model, diagnostics = check_layer_model(read_source(path))
        if model is None:
            raise SourceError(path, diagnostics)
        _print_diagnostics(path, diagnostics)
        models.append(model)
    for selector in config.builtins:
        name, params = parse_builtin_spec(selector)
        models.append(builtin_model(compiled, name, params))
    return models


def build_network(config: RunConfig, compiled: CompiledSkillset) -> Tuple[Network, Tuple[Lts, ...]]:
    """The network a command works on: attached when layer options are given."""
    if not config.has_layers:
        return compiled.network, compiled.components
    attached: AttachedNetwork = attach(compiled, _layer_models(config, compiled), config.auto_abstract)
    logger.info("attached %d layer models", len(attached.models))
    return attached.network, attached.components


def read_property(config: RunConfig) -> Optional[LtlFormula]:
    text = config.prop or ""
    source = "--prop"
    if text.startswith("@"):
        source = text[1:]
        ensure_readable(source)
        text = read_source(source)
    formula, diagnostics = check_ltl(text)
    _print_diagnostics(source, diagnostics)
    return formula


def write_dots(config: RunConfig, compiled: CompiledSkillset, components: Sequence[Lts]) -> List[str]:
    """Write ``<component>.dot`` files into ``config.dot_dir``."""
    if not config.dot_dir:
        return []
    dots = component_dots(compiled)
    written = []
    for component in components:
        source = dots.get(component.name) or lts_to_dot(component)
        path = os.path.join(config.dot_dir, sanitize_filename(component.name) + ".dot")
        written.append(write_text(path, source))
    logger.info("wrote %d DOT files to %s", len(written), config.dot_dir)
    return written


def _progress(desc: str) -> tqdm:
    return tqdm(desc=desc, unit=" states", file=sys.stderr, disable=not sys.stderr.isatty(), leave=False)


def cmd_parse(config: RunConfig) -> int:
    ast, _ = load_skillset(config)
    if ast is None:
        return EXIT_ERROR
    if config.dump_ast:
        print(skillset_to_json(ast))
    elif config.output_format == "json":
        print(json.dumps({"skillset": ast.name, "resources": len(ast.resources), "skills": len(ast.skills)}))
    else:
        print(f"✓ {ast.name}: {len(ast.resources)} resources, {len(ast.skills)} skills")
    return EXIT_OK


def _compile(config: RunConfig) -> Optional[CompiledSkillset]:
    ast, _ = load_skillset(config)
    if ast is None:
        return None
    return compile_skillset(ast, CompileOptions(autonomy=config.autonomy))


def cmd_compile(config: RunConfig) -> int:
    compiled = _compile(config)
    if compiled is None:
        return EXIT_ERROR
    components = compiled.components
    manifest = compiled.manifest()
    if config.has_layers:
        _, components = build_network(config, compiled)
        manifest["models"] = [c.name for c in components[len(compiled.components):]]
    written = write_dots(config, compiled, components)

    if config.output_format == "json":
        print(json.dumps(manifest, indent=2))
    else:
        print(f"Skillset {manifest['skillset']} (autonomy: {manifest['autonomy']})")
        for skill in manifest["skills"]:
            print(f"  skill {skill['name']}")
            print(f"    functional: {' '.join(skill['functional'])}")
            print(f"    decision:   {' '.join(skill['decision'])}")
        for resource in manifest["resources"]:
            print(f"  resource {resource['name']}: {' '.join(resource['autonomous']) or '(controlled)'}")
        for model in manifest.get("models", ()):
            print(f"  model {model}")
        for path in written:
            print(f"  wrote {path}")
    return EXIT_OK


def cmd_explore(config: RunConfig) -> int:
    compiled = _compile(config)
    if compiled is None:
        return EXIT_ERROR
    net, components = build_network(config, compiled)
    write_dots(config, compiled, components)
    with _progress("Exploring") as bar:
        stats = reachable(stutter_close(net), config.max_states, progress_bar=bar)
    if config.output_format == "json":
        print(stats.to_json())
    else:
        print(f"states:      {stats.states}")
        print(f"transitions: {stats.transitions}")
        print(f"deadlocks:   {stats.deadlocks}")
        print(f"truncated:   {str(stats.truncated).lower()}")
    return EXIT_OK


def _report(config: RunConfig, verdict: Verdict) -> None:
    if config.output_format == "json":
        print(verdict.to_json(config.include_time))
    else:
        print(verdict.format_text(config.include_time))


def cmd_verify(config: RunConfig) -> int:
    formula = read_property(config)
    if formula is None:
        return EXIT_ERROR
    compiled = _compile(config)
    if compiled is None:
        return EXIT_ERROR
    net, components = build_network(config, compiled)
    write_dots(config, compiled, components)

    engines = ENGINES if config.engine == "both" else (config.engine,)
    verdicts = []
    for engine in engines:
        with _progress(f"Checking ({engine})") as bar:
            verdicts.append(model_check(net, formula, engine, config.max_states, progress_bar=bar))
    if len({v.holds for v in verdicts}) > 1:
        for verdict in verdicts:
            _report(config, verdict)
        print("Error: engines disagree: " + ", ".join(f"{v.engine}={v.verdict}" for v in verdicts),
              file=sys.stderr)
        return EXIT_DISAGREE
    _report(config, verdicts[0])
    return EXIT_OK if verdicts[0].holds else EXIT_VIOLATED


HANDLERS = {"parse": cmd_parse, "compile": cmd_compile, "verify": cmd_verify, "explore": cmd_explore}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    args.skillset = args.skillset_flag or args.skillset_path
    if not args.skillset:
        parser.error("a skillset file is required")
    if args.skillset_flag and args.skillset_path:
        parser.error("give the skillset either positionally or with --skillset, not both")

    config = RunConfig.from_args(args)
    logging.basicConfig(level=logging.DEBUG if config.verbose else logging.WARNING)
    try:
        return HANDLERS[config.command](config)
    except OSError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_IO
    except DiagnosticError as e:
        _print_diagnostics(getattr(e, "path", config.skillset), [d for d in e.diagnostics if d.is_error])
        return EXIT_ERROR
    except InterfaceError as e:
        for problem in e.problems:
            print(f"Error: {problem}", file=sys.stderr)
        return EXIT_ERROR
    except (LtsError, ExpansionError, UnresolvedAtomError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR


def main():
    """Main entry point for skillcheck CLI."""
    sys.exit(run())


if __name__ == "__main__":
    main()
