"""Unit tests for LTL parsing, normal forms, automata and model checking."""

import json
import os
import unittest

import lark
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.lark import from_lark

import src.ltl.parser as ltl_parser
from src.lts import STUTTER, Lts, Network, StateSpaceTruncated, stutter_close
from src.ltl import (
    FALSE,
    TRUE,
    Always,
    And,
    Atom,
    Eventually,
    Implies,
    Lasso,
    Next,
    Not,
    Or,
    Release,
    Step,
    Until,
    UnresolvedAtomError,
    atoms,
    check_ltl,
    eval_word,
    format_ltl,
    is_nnf,
    ltl_to_buchi,
    model_check,
    negate,
    parse_ltl,
    to_nnf,
)
from src.utils.diagnostics import DiagnosticError

from tests.fixtures import NEVER_RUNNING, NOT_RUNNING_FOREVER, abstract_closure
from tests.strategies import formulas, lasso_words, network_atoms, networks

P = Atom("a", "p")
Q = Atom("b", "q")
R = Atom("c", "r")

LTL_GRAMMAR = lark.Lark.open(os.path.join(os.path.dirname(ltl_parser.__file__), "ltl.lark"), parser="lalr")
LTL_EXPLICIT = {
    "IDENT": st.sampled_from(["goto", "Running", "battery", "x1"]),
    "ESCAPED_STRING": st.sampled_from(['"F"', '"a b"', '"q\\"x"']),
}


def _replays(net, verdict):
    """True when every lasso step is a transition of the closed network."""
    closed = stutter_close(net)
    steps = list(verdict.lasso.prefix) + list(verdict.lasso.cycle)
    if steps[0].state != closed.initial:
        return False
    for before, after in zip(steps, steps[1:]):
        if after.state not in closed.successors(before.state, after.event):
            return False
    return True


class TestParseLtl(unittest.TestCase):
    """Test cases for parse_ltl and format_ltl."""

    def test_not_running_forever(self):
        """Test a nested temporal formula parses to the expected tree."""
        self.assertEqual(parse_ltl(NOT_RUNNING_FOREVER), Eventually(Always(Not(Atom("goto", "Running")))))

    def test_implication_is_loosest_and_right_associative(self):
        """Test -> binds loosest and groups to the right."""
        self.assertEqual(parse_ltl("a @ p || b @ q -> c @ r -> a @ p"),
                         Implies(Or(P, Q), Implies(R, P)))

    def test_and_binds_tighter_than_or(self):
        """Test && groups before ||."""
        self.assertEqual(parse_ltl("a @ p || b @ q && c @ r"), Or(P, And(Q, R)))

    def test_until_binds_tighter_than_and(self):
        """Test U and R group before && and to the right."""
        self.assertEqual(parse_ltl("a @ p && b @ q U c @ r"), And(P, Until(Q, R)))
        self.assertEqual(parse_ltl("a @ p R b @ q R c @ r"), Release(P, Release(Q, R)))

    def test_unary_binds_tightest(self):
        """Test ! X F G apply to the nearest operand."""
        self.assertEqual(parse_ltl("!a @ p U X b @ q"), Until(Not(P), Next(Q)))
        self.assertEqual(parse_ltl("F a @ p && G b @ q"), And(Eventually(P), Always(Q)))

    def test_constants(self):
        """Test true and false are constants."""
        self.assertEqual(parse_ltl("true U false"), Until(TRUE, FALSE))

    def test_quoted_names(self):
        """Test operator letters used as names must be quoted."""
        formula = parse_ltl('"F" @ "G"')

        self.assertEqual(formula, Atom("F", "G"))
        self.assertEqual(format_ltl(formula), '"F" @ "G"')

    def test_format(self):
        """Test printing parenthesizes binary operators and atoms under unary ones."""
        self.assertEqual(format_ltl(parse_ltl(NOT_RUNNING_FOREVER)), "F G !(goto @ Running)")
        self.assertEqual(format_ltl(Implies(P, Or(Q, R))), "(a @ p -> (b @ q || c @ r))")

    def test_syntax_error(self):
        """Test malformed formulas give diagnostics or DiagnosticError."""
        formula, diagnostics = check_ltl("F (goto @)")

        self.assertIsNone(formula)
        self.assertEqual(len(diagnostics), 1)
        with self.assertRaises(DiagnosticError):
            parse_ltl("goto Running")

    def test_atoms_in_order(self):
        """Test atoms are listed once each in order of appearance."""
        self.assertEqual(atoms(parse_ltl("a @ p U (b @ q && a @ p)")), (P, Q))

    @settings(max_examples=200, deadline=None)
    @given(formulas([P, Q, Atom("F", "true")]))
    def test_format_round_trip(self, formula):
        """Test printed formulas parse back to equal formulas."""
        self.assertEqual(parse_ltl(format_ltl(formula)), formula)

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_check_ltl_is_total(self, data):
        """Test grammar-shaped inputs never raise."""
        text = data.draw(from_lark(LTL_GRAMMAR, explicit=LTL_EXPLICIT))

        formula, diagnostics = check_ltl(text)

        if formula is None:
            self.assertTrue(diagnostics)
        else:
            self.assertEqual(parse_ltl(format_ltl(formula)), formula)


class TestNormalForms(unittest.TestCase):
    """Test cases for to_nnf and negate."""

    def test_dualities(self):
        """Test negation moves through every operator."""
        self.assertEqual(to_nnf(Not(Eventually(Always(P)))), Always(Eventually(Not(P))))
        self.assertEqual(negate(Until(P, Q)), Release(Not(P), Not(Q)))
        self.assertEqual(negate(Release(P, Q)), Until(Not(P), Not(Q)))
        self.assertEqual(negate(Next(P)), Next(Not(P)))
        self.assertEqual(negate(Implies(P, Q)), And(P, Not(Q)))
        self.assertEqual(negate(TRUE), FALSE)

    def test_implication_removed(self):
        """Test NNF has no implication and no negation above an atom."""
        formula = to_nnf(parse_ltl("!(a @ p -> G !(b @ q))"))

        self.assertTrue(is_nnf(formula))
        self.assertEqual(formula, And(P, Eventually(Q)))

    @settings(max_examples=200, deadline=None)
    @given(formulas([P, Q]), lasso_words([P, Q]))
    def test_nnf_preserves_meaning(self, formula, word):
        """Test to_nnf and negate agree with the original on every word."""
        prefix, cycle = word
        value = eval_word(formula, prefix, cycle)

        self.assertEqual(eval_word(to_nnf(formula), prefix, cycle), value)
        self.assertEqual(eval_word(negate(formula), prefix, cycle), not value)


class TestEvalWord(unittest.TestCase):
    """Test cases for eval_word."""

    def test_always_and_eventually(self):
        """Test G and F on simple loops."""
        self.assertTrue(eval_word(Always(P), [], [{P}]))
        self.assertFalse(eval_word(Always(P), [], [{P}, set()]))
        self.assertTrue(eval_word(Eventually(Always(Not(R))), [{R}], [set()]))
        self.assertFalse(eval_word(Eventually(Always(Not(R))), [], [{R}, set()]))

    def test_until(self):
        """Test U needs its right side to arrive."""
        self.assertTrue(eval_word(Until(P, Q), [{P}, {P}], [{Q}]))
        self.assertFalse(eval_word(Until(P, Q), [{P}, set()], [{Q}]))
        self.assertFalse(eval_word(Until(P, Q), [], [{P}]))

    def test_release(self):
        """Test R holds when its right side holds forever."""
        self.assertTrue(eval_word(Release(P, Q), [], [{Q}]))
        self.assertTrue(eval_word(Release(P, Q), [{Q}, {P, Q}], [set()]))
        self.assertFalse(eval_word(Release(P, Q), [{Q}], [set()]))

    def test_next_wraps_into_cycle(self):
        """Test X at the end of the cycle reads the cycle start."""
        self.assertTrue(eval_word(Next(P), [set()], [{P}]))
        self.assertTrue(eval_word(Next(Next(Next(P))), [set()], [{P}, set()]))

    def test_predicate_letters(self):
        """Test letters may be predicates on atoms."""
        self.assertTrue(eval_word(Always(P), [], [lambda atom: atom == P]))

    def test_empty_cycle_rejected(self):
        """Test the cycle must be nonempty."""
        with self.assertRaises(ValueError):
            eval_word(TRUE, [set()], [])


class TestBuchi(unittest.TestCase):
    """Test cases for ltl_to_buchi."""

    def test_true_has_one_accepting_state(self):
        """Test the automaton of true is a single accepting state."""
        automaton = ltl_to_buchi(TRUE)

        self.assertEqual(len(automaton.states), 1)
        self.assertEqual(automaton.accepting, frozenset(automaton.states))
        self.assertTrue(automaton.accepts_lasso([], [set()]))

    def test_false_accepts_nothing(self):
        """Test the automaton of false has no accepted word."""
        self.assertFalse(ltl_to_buchi(FALSE).accepts_lasso([], [{P}]))

    def test_requires_nnf(self):
        """Test formulas with implication are refused."""
        with self.assertRaises(ValueError):
            ltl_to_buchi(Implies(P, Q))

    def test_infinitely_often(self):
        """Test G F p accepts exactly words with p on the cycle."""
        automaton = ltl_to_buchi(Always(Eventually(P)))

        self.assertTrue(automaton.accepts_lasso([], [{P}]))
        self.assertTrue(automaton.accepts_lasso([set()], [set(), {P}]))
        self.assertFalse(automaton.accepts_lasso([{P}], [set()]))

    @settings(max_examples=300, deadline=None)
    @given(formulas([P, Q], max_depth=3), lasso_words([P, Q], max_length=5))
    def test_agrees_with_eval_word(self, formula, word):
        """Test the automaton accepts a word iff the formula holds on it."""
        prefix, cycle = word

        automaton = ltl_to_buchi(to_nnf(formula))

        self.assertEqual(automaton.accepts_lasso(prefix, cycle), eval_word(formula, prefix, cycle))


class TestVerdict(unittest.TestCase):
    """Test cases for Verdict and Lasso."""

    def test_violation_json_shape(self):
        """Test a violated verdict serializes with its lasso."""
        verdict = model_check(abstract_closure().network, parse_ltl(NOT_RUNNING_FOREVER))

        data = json.loads(verdict.to_json(include_time=False))

        self.assertEqual(set(data), {"verdict", "states_explored", "lasso"})
        self.assertEqual(data["verdict"], "violated")
        self.assertIsNone(data["lasso"]["prefix"][0]["event"])
        self.assertEqual(set(data["lasso"]["prefix"][0]["state"]),
                         {"goto", "motion", "battery", "goto_functional", "decision"})
        self.assertTrue(data["lasso"]["cycle"])
        self.assertIn("time_ms", verdict.to_dict())

    def test_text_report(self):
        """Test the text report starts with the verdict and lists both lasso parts."""
        verdict = model_check(abstract_closure().network, parse_ltl(NEVER_RUNNING))

        text = verdict.format_text(include_time=False)

        self.assertTrue(text.startswith("VIOLATED: G !(goto @ Running)"))
        self.assertIn("prefix:", text)
        self.assertIn("cycle:", text)
        self.assertIn("[goto @ Running]", text)
        self.assertNotIn(" ms", text)

    def test_valuations(self):
        """Test valuations mark where the atoms hold."""
        verdict = model_check(abstract_closure().network, parse_ltl(NEVER_RUNNING))

        rows = verdict.valuations()

        self.assertTrue(any(row["atoms"]["goto @ Running"] for row in rows))
        self.assertEqual({row["part"] for row in rows}, {"prefix", "cycle"})

    def test_holding_verdict_has_no_word(self):
        """Test asking a holding verdict for its counterexample raises."""
        net = Network([Lts.build("a", ["p"], "p", [("p", "t", "p")])])

        verdict = model_check(net, Always(P))

        self.assertTrue(verdict.holds)
        self.assertEqual(verdict.valuations(), [])
        with self.assertRaises(ValueError):
            verdict.word()

    def test_lasso_must_close(self):
        """Test a cycle that does not return to the prefix end is rejected."""
        start = Step(None, (0,), (("a", "p"),))
        other = Step("t", (1,), (("a", "q"),))

        with self.assertRaises(ValueError):
            Lasso((start,), (other,))
        with self.assertRaises(ValueError):
            Lasso((start,), ())


class TestModelCheck(unittest.TestCase):
    """Test cases for model_check."""

    def test_unknown_component(self):
        """Test atoms must name a component."""
        with self.assertRaises(UnresolvedAtomError) as cm:
            model_check(abstract_closure().network, parse_ltl("F (arm @ Up)"))

        self.assertEqual(cm.exception.atom, Atom("arm", "Up"))

    def test_unknown_state(self):
        """Test atoms must name a local state of their component."""
        with self.assertRaises(UnresolvedAtomError):
            model_check(abstract_closure().network, parse_ltl("F (goto @ Flying)"))

    def test_invalid_arguments(self):
        """Test unknown engines and bounds below one are rejected."""
        net = abstract_closure().network
        with self.assertRaises(ValueError):
            model_check(net, TRUE, engine="bdd")
        with self.assertRaises(ValueError):
            model_check(net, TRUE, max_states=0)

    def test_truncation(self):
        """Test a product larger than the bound raises."""
        with self.assertRaises(StateSpaceTruncated):
            model_check(abstract_closure().network, parse_ltl(NOT_RUNNING_FOREVER), max_states=1)

    def test_deadlock_stutters(self):
        """Test a finite run is extended by stuttering in its last state."""
        net = Network([Lts.build("a", ["p", "q"], "p", [("p", "t", "q")])])

        verdict = model_check(net, Eventually(Always(Atom("a", "q"))))
        violated = model_check(net, Always(Eventually(Atom("a", "p"))))

        self.assertTrue(verdict.holds)
        self.assertFalse(violated.holds)
        self.assertEqual(violated.lasso.cycle[-1].event, STUTTER)

    def test_engines_agree_on_goto(self):
        """Test both engines reach the same verdict on the goto closure."""
        net = abstract_closure().network
        for text in (NOT_RUNNING_FOREVER, NEVER_RUNNING):
            with self.subTest(formula=text):
                ndfs = model_check(net, parse_ltl(text), engine="ndfs")
                scc = model_check(net, parse_ltl(text), engine="scc")
                self.assertEqual(ndfs.holds, scc.holds)
                self.assertTrue(_replays(net, ndfs))
                self.assertTrue(_replays(net, scc))

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_engines_agree_on_random_networks(self, data):
        """Test the engines agree and every counterexample violates the formula."""
        net = data.draw(networks(max_components=2, max_states=4, max_events=4))
        pool = network_atoms(net)[:3]
        formula = data.draw(formulas(pool, max_depth=3))

        results = [model_check(net, formula, engine=engine) for engine in ("ndfs", "scc")]

        self.assertEqual(results[0].holds, results[1].holds)
        for verdict in results:
            if not verdict.holds:
                self.assertTrue(_replays(net, verdict))
                self.assertFalse(eval_word(formula, *verdict.word()))


if __name__ == "__main__":
    unittest.main()
