"""Unit tests for transition systems, networks and exploration."""

import unittest
from unittest.mock import MagicMock

from hypothesis import given, settings

from src.lts import (
    STUTTER,
    Lts,
    LtsError,
    Network,
    StateSpaceTruncated,
    compose,
    enabled_events,
    lts_to_dot,
    product_explicit,
    reachable,
    stutter_close,
    successors,
    trace_inclusion,
)

from tests.fixtures import abstract_closure
from tests.strategies import brute_force_triples, networks


def _chain(name, length, event="tick"):
    states = [f"{name}{i}" for i in range(length)]
    return Lts.build(name, states, states[0], [(states[i], event, states[i + 1]) for i in range(length - 1)])


def _cycle(name, length, event):
    states = [f"{name}{i}" for i in range(length)]
    return Lts.build(name, states, states[0], [(states[i], event, states[(i + 1) % length]) for i in range(length)])


class TestLts(unittest.TestCase):
    """Test cases for the Lts value type."""

    def test_build_infers_alphabet(self):
        """Test the alphabet defaults to the events of the transitions."""
        lts = Lts.build("a", ["p", "q"], "p", [("p", "go", "q")])

        self.assertEqual(lts.alphabet, frozenset({"go"}))

    def test_duplicate_transitions_dropped(self):
        """Test repeated transitions collapse while keeping order."""
        lts = Lts.build("a", ["p", "q"], "p", [("p", "go", "q"), ("q", "back", "p"), ("p", "go", "q")])

        self.assertEqual([t.event for t in lts.transitions], ["go", "back"])

    def test_undeclared_endpoint_rejected(self):
        """Test transitions must connect declared states."""
        with self.assertRaises(LtsError):
            Lts.build("a", ["p"], "p", [("p", "go", "r")])

    def test_initial_must_be_declared(self):
        """Test the initial state must be one of the states."""
        with self.assertRaises(LtsError):
            Lts.build("a", ["p"], "q", [])

    def test_event_outside_alphabet_rejected(self):
        """Test a transition event outside an explicit alphabet is an error."""
        with self.assertRaises(LtsError):
            Lts("a", ("p",), "p", frozenset(), (("p", "go", "p"),))


class TestNetwork(unittest.TestCase):
    """Test cases for Network construction and global steps."""

    def setUp(self):
        self.left = Lts.build("left", ["l0", "l1"], "l0", [("l0", "sync", "l1"), ("l1", "own", "l0")])
        self.right = Lts.build("right", ["r0", "r1"], "r0", [("r0", "sync", "r1")])
        self.net = Network([self.left, self.right])

    def test_shared_event_moves_both(self):
        """Test a shared event moves every participant."""
        g = self.net.encode(["l0", "r0"])

        self.assertEqual(successors(self.net, g, "sync"), {self.net.encode(["l1", "r1"])})

    def test_private_event_leaves_others(self):
        """Test an event outside a component's alphabet leaves it in place."""
        g = self.net.encode(["l1", "r1"])

        self.assertEqual(successors(self.net, g, "own"), {self.net.encode(["l0", "r1"])})

    def test_blocked_when_participant_cannot_move(self):
        """Test a shared event is blocked if one participant has no transition."""
        g = self.net.encode({"left": "l0", "right": "r1"})

        self.assertEqual(successors(self.net, g, "sync"), set())
        self.assertEqual(enabled_events(self.net, g), set())

    def test_unknown_event_rejected(self):
        """Test asking for an event outside the alphabet raises."""
        with self.assertRaises(LtsError):
            successors(self.net, self.net.initial, "missing")

    def test_malformed_global_state_rejected(self):
        """Test wrong arity and out-of-range indices raise."""
        with self.assertRaises(LtsError):
            successors(self.net, (0,), "sync")
        with self.assertRaises(LtsError):
            enabled_events(self.net, (0, 7))

    def test_empty_network_rejected(self):
        """Test a network needs a component."""
        with self.assertRaises(LtsError):
            Network([])

    def test_duplicate_component_names_rejected(self):
        """Test component names must be unique."""
        with self.assertRaises(LtsError):
            Network([self.left, self.left])

    def test_stutter_event_reserved(self):
        """Test components may not use the stutter event."""
        bad = Lts.build("bad", ["s"], "s", [("s", STUTTER, "s")])

        with self.assertRaises(LtsError):
            Network([bad])

    def test_decode_inverts_encode(self):
        """Test decode gives back the local state names."""
        g = self.net.encode(["l1", "r0"])

        self.assertEqual(self.net.decode(g), {"left": "l1", "right": "r0"})
        self.assertEqual(self.net.format_state(g), "(l1, r0)")

    def test_compose_flattens_networks(self):
        """Test compose accepts networks and loose components in order."""
        extra = _chain("extra", 2)

        net = compose(stutter_close(Network([self.left])), self.right, [extra])

        self.assertEqual(net.names, ("left", "right", "extra"))
        self.assertTrue(net.stutter)

    @settings(max_examples=100, deadline=None)
    @given(networks())
    def test_steps_match_synchronization_rule(self, net):
        """Test network steps agree with a direct reading of the synchronization rule."""
        expected = brute_force_triples(net)

        actual = set()
        for g in {g for g, _, _ in expected} | {net.initial}:
            for event in enabled_events(net, g):
                for h in successors(net, g, event):
                    actual.add((g, event, h))
        self.assertEqual(actual, expected)

        product = product_explicit(net)
        explicit = {(product.global_state(t.source), t.event, product.global_state(t.target))
                    for t in product.transitions}
        self.assertEqual(explicit, expected)


class TestStutterClosure(unittest.TestCase):
    """Test cases for stutter_close."""

    def test_deadlock_gets_self_loop(self):
        """Test a deadlocked state gains exactly one stutter loop."""
        net = stutter_close(Network([_chain("c", 2)]))
        end = net.encode(["c1"])

        self.assertEqual(enabled_events(net, end), {STUTTER})
        self.assertEqual(successors(net, end, STUTTER), {end})

    def test_live_state_has_no_stutter(self):
        """Test states with a step are left alone."""
        net = stutter_close(Network([_chain("c", 2)]))

        self.assertEqual(successors(net, net.initial, STUTTER), set())
        self.assertEqual(enabled_events(net, net.initial), {"tick"})

    def test_closure_is_idempotent(self):
        """Test closing twice returns the same network."""
        net = stutter_close(Network([_chain("c", 2)]))

        self.assertIs(stutter_close(net), net)

    def test_open_network_ignores_stutter(self):
        """Test an open network never takes the stutter event."""
        net = Network([_chain("c", 1)])

        self.assertEqual(successors(net, net.initial, STUTTER), set())


class TestReachable(unittest.TestCase):
    """Test cases for reachable and product_explicit."""

    def test_single_state_without_transitions(self):
        """Test a lone state counts as one deadlock."""
        stats = reachable(Network([Lts.build("one", ["s"], "s", [])]))

        self.assertEqual(stats.to_dict(), {"states": 1, "transitions": 0, "deadlocks": 1, "truncated": False})

    def test_stutter_loop_is_counted(self):
        """Test a closed network counts the stutter loop as a transition."""
        stats = reachable(stutter_close(Network([Lts.build("one", ["s"], "s", [])])))

        self.assertEqual((stats.states, stats.transitions, stats.deadlocks), (1, 1, 1))

    def test_independent_components_multiply(self):
        """Test disjoint cycles reach the full cartesian product."""
        net = Network([_cycle("a", 3, "x"), _cycle("b", 4, "y")])

        stats = reachable(net)

        self.assertEqual(stats.states, 12)
        self.assertEqual(stats.transitions, 24)
        self.assertEqual(stats.deadlocks, 0)

    def test_goto_closure_baseline(self):
        """Test the abstract goto closure has the pinned size."""
        stats = reachable(stutter_close(abstract_closure().network))

        self.assertEqual(stats.to_dict(), {"states": 12, "transitions": 30, "deadlocks": 0, "truncated": False})

    def test_bound_truncates(self):
        """Test the state bound stops exploration and sets the flag."""
        stats = reachable(Network([_chain("c", 10)]), max_states=3)

        self.assertEqual(stats.states, 3)
        self.assertTrue(stats.truncated)

    def test_invalid_bound_rejected(self):
        """Test a bound below one is a ValueError."""
        with self.assertRaises(ValueError):
            reachable(Network([_chain("c", 2)]), max_states=0)

    def test_progress_bar_advanced_per_state(self):
        """Test the progress bar is updated once per expanded state."""
        progress_bar = MagicMock()

        reachable(Network([_chain("c", 4)]), progress_bar=progress_bar)

        self.assertEqual(progress_bar.update.call_count, 4)

    def test_product_explicit_truncation_raises(self):
        """Test materializing past the bound raises StateSpaceTruncated."""
        with self.assertRaises(StateSpaceTruncated) as cm:
            product_explicit(Network([_chain("c", 10)]), max_states=5)

        self.assertEqual(cm.exception.max_states, 5)

    def test_single_component_product_is_isomorphic(self):
        """Test the product of one component is that component."""
        component = _cycle("a", 3, "x")

        product = product_explicit(Network([component]))

        self.assertEqual(product.states, ("(a0)", "(a1)", "(a2)"))
        self.assertEqual(len(product.transitions), len(component.transitions))
        self.assertEqual(product.initial, "(a0)")

    def test_global_state_lookup(self):
        """Test every product state name maps back to its global state."""
        net = Network([_cycle("a", 3, "x"), _cycle("b", 4, "y")])

        product = product_explicit(net)

        self.assertEqual([product.global_state(name) for name in product.states], list(product.global_states))
        self.assertEqual(product.global_state(product.initial), net.initial)
        with self.assertRaises(LtsError):
            product.global_state("(nowhere)")


class TestTraceInclusion(unittest.TestCase):
    """Test cases for trace_inclusion."""

    def test_chain_included_in_loop(self):
        """Test every finite chain run is a run of the self-loop."""
        loop = Lts.build("loop", ["s"], "s", [("s", "tick", "s")])

        result = trace_inclusion(Network([_chain("c", 5)]), Network([loop]), depth=10)

        self.assertTrue(result.included)
        self.assertIsNone(result.counterexample)

    def test_shortest_counterexample(self):
        """Test a missing event is reported with the shortest trace."""
        concrete = Lts.build("c", ["a", "b", "c"], "a", [("a", "x", "b"), ("b", "y", "c")])
        abstract = Lts.build("d", ["a", "b"], "a", [("a", "x", "b")], alphabet=["x", "y"])

        result = trace_inclusion(Network([concrete]), Network([abstract]), depth=5)

        self.assertFalse(result.included)
        self.assertEqual(result.counterexample, ("x", "y"))

    def test_hidden_events_are_erased(self):
        """Test hidden concrete steps need no abstract counterpart."""
        concrete = Lts.build("c", ["a", "b", "c"], "a", [("a", "tau", "b"), ("b", "x", "c")])
        abstract = Lts.build("d", ["a"], "a", [("a", "x", "a")])

        self.assertFalse(trace_inclusion(Network([concrete]), Network([abstract]), depth=3).included)
        self.assertTrue(trace_inclusion(Network([concrete]), Network([abstract]), depth=3,
                                        hidden={"tau"}).included)

    def test_depth_bounds_search(self):
        """Test a violation beyond the depth bound is not found."""
        concrete = _chain("c", 4)
        abstract = Lts.build("d", ["a", "b"], "a", [("a", "tick", "b")])

        self.assertTrue(trace_inclusion(Network([concrete]), Network([abstract]), depth=1).included)
        self.assertFalse(trace_inclusion(Network([concrete]), Network([abstract]), depth=3).included)


class TestLtsToDot(unittest.TestCase):
    """Test cases for lts_to_dot."""

    def test_digraph_layout(self):
        """Test states, the start arrow and labeled edges are emitted."""
        dot = lts_to_dot(_chain("c", 2))

        self.assertTrue(dot.startswith('digraph "c" {'))
        self.assertIn("__start -> s0;", dot)
        self.assertIn('s0 -> s1 [label="tick"];', dot)
        self.assertTrue(dot.rstrip().endswith("}"))

    def test_quotes_are_escaped(self):
        """Test double quotes in names are escaped."""
        lts = Lts.build('say "hi"', ["s"], "s", [])

        self.assertIn(r'digraph "say \"hi\"" {', lts_to_dot(lts))

    def test_legend_note(self):
        """Test the legend becomes a note node with one row per entry."""
        dot = lts_to_dot(_chain("c", 2), legend={"private": ["tick"], "shared": []})

        self.assertIn("__legend [shape=note", dot)
        self.assertIn(r"private: tick\l", dot)
        self.assertIn(r"shared: -\l", dot)


if __name__ == "__main__":
    unittest.main()
