"""Unit tests for the skillcheck command line."""

import io
import json
import os
import shutil
import tempfile
import unittest
from unittest.mock import patch

from src.cli import RunConfig, build_parser, run
from src.cli.skillcheck_cli import EXIT_ERROR, EXIT_OK, EXIT_VIOLATED

from tests.fixtures import (
    CRITICAL_IMPLIES_NOT_RUNNING,
    ROBOT_SOURCE,
    ROBOT_PATH,
    NOT_RUNNING_FOREVER,
    SAMPLES_DIR,
)


class CliTestCase(unittest.TestCase):
    """Runs the CLI with captured output."""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def invoke(self, *argv):
        with patch('sys.stdout', new_callable=io.StringIO) as out, \
                patch('sys.stderr', new_callable=io.StringIO) as err:
            code = run(list(argv))
        return code, out.getvalue(), err.getvalue()

    def write(self, name, text):
        path = os.path.join(self.temp_dir, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        return path


class TestArguments(CliTestCase):
    """Test cases for argument handling."""

    def test_config_from_args(self):
        """Test parsed options land in the run configuration."""
        args = build_parser().parse_args([
            "verify", ROBOT_PATH, "--prop", "true", "--builtin", "refined-goto",
            "--engine", "both", "--no-time", "--format", "json",
        ])
        args.skillset = args.skillset_path

        config = RunConfig.from_args(args)

        self.assertEqual(config.command, "verify")
        self.assertEqual(config.builtins, ("refined-goto",))
        self.assertEqual(config.engine, "both")
        self.assertFalse(config.include_time)
        self.assertTrue(config.has_layers)

    def test_autonomy_defaults_to_monitored(self):
        """Test only unwritten resources move on their own unless --autonomy all is given."""
        args = build_parser().parse_args(["compile", ROBOT_PATH])
        args.skillset = args.skillset_path

        self.assertEqual(RunConfig.from_args(args).autonomy, "monitored")
        code, out, _ = self.invoke("compile", ROBOT_PATH)
        self.assertEqual(code, EXIT_OK)
        self.assertIn("Skillset custom_robot (autonomy: monitored)", out)
        self.assertNotIn("auto_motion_On_Off", out)

    @patch('sys.stderr', new_callable=io.StringIO)
    def test_skillset_required(self, mock_stderr):
        """Test a command without a skillset is a usage error."""
        with self.assertRaises(SystemExit) as cm:
            run(["parse"])

        self.assertEqual(cm.exception.code, 2)

    @patch('sys.stderr', new_callable=io.StringIO)
    def test_skillset_given_twice(self, mock_stderr):
        """Test positional and flag forms are exclusive."""
        with self.assertRaises(SystemExit):
            run(["parse", ROBOT_PATH, "--skillset", ROBOT_PATH])

    @patch('sys.stderr', new_callable=io.StringIO)
    def test_max_states_must_be_positive(self, mock_stderr):
        """Test --max-states rejects zero."""
        with self.assertRaises(SystemExit):
            run(["explore", ROBOT_PATH, "--max-states", "0"])

    @patch('sys.stderr', new_callable=io.StringIO)
    def test_missing_file(self, mock_stderr):
        """Test a missing skillset exits with code 2."""
        with self.assertRaises(SystemExit) as cm:
            run(["parse", os.path.join(self.temp_dir, "missing.skl")])

        self.assertEqual(cm.exception.code, 2)
        self.assertIn("file not found", mock_stderr.getvalue())


class TestParseCommand(CliTestCase):
    """Test cases for the parse command."""

    def test_summary(self):
        """Test a valid skillset prints a one-line summary."""
        code, out, _ = self.invoke("parse", ROBOT_PATH)

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.strip(), "✓ custom_robot: 2 resources, 1 skills")

    def test_skillset_flag(self):
        """Test the skillset can be passed with --skillset."""
        code, _, _ = self.invoke("parse", "--skillset", ROBOT_PATH)

        self.assertEqual(code, EXIT_OK)

    def test_dump_ast(self):
        """Test --dump-ast prints the canonical JSON tree."""
        code, out, _ = self.invoke("parse", ROBOT_PATH, "--dump-ast")

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["skillset"], "custom_robot")

    def test_diagnostics_on_stderr(self):
        """Test errors are printed as path:line:col diagnostics."""
        path = self.write("bad.skl", ROBOT_SOURCE.replace("battery != Critical", "battery != Dead"))

        code, out, err = self.invoke("parse", path)

        self.assertEqual(code, EXIT_ERROR)
        self.assertEqual(out, "")
        self.assertTrue(err.startswith(f"{path}:"))
        self.assertIn("error: unknown state Dead of resource battery", err)


class TestCompileCommand(CliTestCase):
    """Test cases for the compile command."""

    def test_manifest_json(self):
        """Test the manifest is printed as JSON."""
        code, out, _ = self.invoke("compile", ROBOT_PATH, "--format", "json")

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["components"], ["goto", "motion", "battery"])

    def test_manifest_text(self):
        """Test the text manifest lists interfaces and autonomy."""
        code, out, _ = self.invoke("compile", ROBOT_PATH, "--autonomy", "all")

        self.assertEqual(code, EXIT_OK)
        self.assertIn("Skillset custom_robot (autonomy: all)", out)
        self.assertIn("decision:   request_goto interrupt_goto", out)
        self.assertIn("resource motion: auto_motion_On_Off auto_motion_Off_On", out)

    def test_attached_models_listed(self):
        """Test layer options add the attached models to the manifest."""
        code, out, _ = self.invoke("compile", ROBOT_PATH, "--auto-abstract", "--format", "json")

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["models"], ["goto_functional", "decision"])

    def test_dot_files(self):
        """Test --dot writes one file per component."""
        dot_dir = os.path.join(self.temp_dir, "dots")

        code, _, _ = self.invoke("compile", ROBOT_PATH, "--auto-abstract", "--dot", dot_dir)

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(sorted(os.listdir(dot_dir)), [
            "battery.dot", "decision.dot", "goto.dot", "goto_functional.dot", "motion.dot",
        ])
        with open(os.path.join(dot_dir, "goto.dot"), encoding="utf-8") as fh:
            self.assertTrue(fh.read().startswith('digraph "goto"'))

    def test_invalid_skillset(self):
        """Test an unknown resource fails compilation with exit code 1."""
        path = self.write("bad.skl", ROBOT_SOURCE.replace("start motion -> On", "start arm -> On"))

        code, _, err = self.invoke("compile", path)

        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("unknown resource arm", err)

    def test_empty_skillset_compiles(self):
        """Test an empty skillset has an empty manifest."""
        path = self.write("empty.skl", "skillset empty { }")

        code, out, _ = self.invoke("compile", path, "--format", "json")

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["components"], [])


class TestExploreCommand(CliTestCase):
    """Test cases for the explore command."""

    def test_goto_closure_statistics(self):
        """Test the abstract goto closure has the pinned size."""
        code, out, _ = self.invoke("explore", ROBOT_PATH, "--auto-abstract", "--format", "json")

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out), {"states": 12, "transitions": 30, "deadlocks": 0, "truncated": False})

    def test_truncation_flag(self):
        """Test a bound of one state reports truncation."""
        code, out, _ = self.invoke("explore", ROBOT_PATH, "--auto-abstract", "--max-states", "1")

        self.assertEqual(code, EXIT_OK)
        self.assertIn("states:      1", out)
        self.assertIn("truncated:   true", out)

    def test_empty_skillset_is_an_error(self):
        """Test an empty network cannot be explored."""
        path = self.write("empty.skl", "skillset empty { }")

        code, _, err = self.invoke("explore", path)

        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("Error:", err)


class TestVerifyCommand(CliTestCase):
    """Test cases for the verify command."""

    def test_violated_exit_code(self):
        """Test a violated property exits with code 3."""
        code, out, _ = self.invoke("verify", ROBOT_PATH, "--auto-abstract", "--prop", NOT_RUNNING_FOREVER)

        self.assertEqual(code, EXIT_VIOLATED)
        self.assertTrue(out.startswith("VIOLATED"))

    def test_holds_with_refined_model(self):
        """Test the refined goto layer makes the property hold."""
        code, out, _ = self.invoke(
            "verify", ROBOT_PATH, "--builtin", "refined-goto:Bmax=6,Dmax=2", "--auto-abstract",
            "--prop", NOT_RUNNING_FOREVER,
        )

        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("HOLDS"))

    def test_layer_files(self):
        """Test layer models can be read from files."""
        code, _, _ = self.invoke(
            "verify", ROBOT_PATH,
            "--layer", os.path.join(SAMPLES_DIR, "goto_refined.lm"),
            "--layer", os.path.join(SAMPLES_DIR, "decision_abstract.lm"),
            "--prop", NOT_RUNNING_FOREVER,
        )

        self.assertEqual(code, EXIT_OK)

    def test_property_from_file(self):
        """Test @PATH reads the property from a file."""
        code, _, _ = self.invoke(
            "verify", ROBOT_PATH, "--auto-abstract",
            "--prop", "@" + os.path.join(SAMPLES_DIR, "properties.ltl"),
        )

        self.assertEqual(code, EXIT_OK)

    def test_both_engines(self):
        """Test --engine both reports one verdict when the engines agree."""
        code, out, err = self.invoke(
            "verify", ROBOT_PATH, "--auto-abstract", "--engine", "both",
            "--prop", CRITICAL_IMPLIES_NOT_RUNNING,
        )

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.count("HOLDS"), 1)
        self.assertNotIn("disagree", err)

    def test_json_without_time(self):
        """Test --no-time drops the timing from the JSON verdict."""
        code, out, _ = self.invoke(
            "verify", ROBOT_PATH, "--auto-abstract", "--format", "json", "--no-time",
            "--prop", NOT_RUNNING_FOREVER,
        )

        data = json.loads(out)
        self.assertEqual(code, EXIT_VIOLATED)
        self.assertNotIn("time_ms", data)
        self.assertEqual(data["verdict"], "violated")

    def test_bad_property(self):
        """Test a syntax error in the property exits with code 1."""
        code, _, err = self.invoke("verify", ROBOT_PATH, "--auto-abstract", "--prop", "F (goto @")

        self.assertEqual(code, EXIT_ERROR)
        self.assertTrue(err.startswith("--prop:"))

    def test_unknown_atom(self):
        """Test an atom naming a missing state exits with code 1."""
        code, _, err = self.invoke("verify", ROBOT_PATH, "--auto-abstract", "--prop", "F (goto @ Flying)")

        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("Error: cannot resolve", err)

    def test_uncovered_interface(self):
        """Test a partial closure without --auto-abstract reports the gap."""
        code, _, err = self.invoke(
            "verify", ROBOT_PATH, "--builtin", "refined-goto", "--prop", NOT_RUNNING_FOREVER,
        )

        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("Error: decision interface of goto is not covered", err)

    def test_bad_layer_file(self):
        """Test layer diagnostics name the layer file."""
        path = self.write("bad.lm", "model m { loc a initial edge a -> b on x }")

        code, _, err = self.invoke("verify", ROBOT_PATH, "--layer", path, "--prop", "true")

        self.assertEqual(code, EXIT_ERROR)
        self.assertTrue(err.startswith(f"{path}:"))
        self.assertIn("undeclared location b", err)

    def test_unknown_builtin(self):
        """Test an unknown builtin name exits with code 1."""
        code, _, err = self.invoke("verify", ROBOT_PATH, "--builtin", "teleport", "--prop", "true")

        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("unknown builtin model", err)


if __name__ == "__main__":
    unittest.main()
