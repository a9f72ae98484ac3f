"""Explicit-state LTL model checking of transition-system networks.

The network is closed under stuttering, the negated property is translated
to a Büchi automaton, and the synchronous product of the two is searched for
an accepting cycle. Two engines are available: nested depth-first search,
which builds the product on the fly, and an SCC decomposition of the fully
materialized product.
"""

import logging
import time
from collections import deque
from typing import Callable, Deque, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from ..lts.explore import DEFAULT_MAX_STATES, StateSpaceTruncated, product_explicit
from ..lts.lts import Event, LtsError
from ..lts.network import GlobalState, Network, stutter_close
from .buchi import BuchiAutomaton, label_holds, ltl_to_buchi
from .formula import Atom, LtlFormula, atoms
from .nnf import negate
from .verdict import Lasso, Step, Verdict

logger = logging.getLogger(__name__)

ENGINES = ("ndfs", "scc")

ProductState = Tuple[GlobalState, int]
Path = List[Tuple[Optional[Event], ProductState]]


class UnresolvedAtomError(ValueError):
    """An atom names a component or local state the network does not have."""

    def __init__(self, atom: Atom, reason: str):
        super().__init__(f"cannot resolve {atom}: {reason}")
        self.atom = atom


def resolve_atoms(net: Network, formula: LtlFormula) -> Dict[Atom, Tuple[int, int]]:
    """
    Map every atom of ``formula`` to (component index, local state index).

    Raises:
        UnresolvedAtomError: For the first atom that does not resolve
    """
    resolved = {}
    for atom in atoms(formula):
        try:
            component = net.component_index(atom.component)
        except LtsError:
            raise UnresolvedAtomError(atom, f"no component named {atom.component!r}") from None
        try:
            state = net.state_index(component, atom.state)
        except LtsError:
            raise UnresolvedAtomError(
                atom, f"component {atom.component!r} has no state {atom.state!r}"
            ) from None
        resolved[atom] = (component, state)
    return resolved


def _letter(index: Dict[Atom, Tuple[int, int]], g: GlobalState) -> Callable[[Atom], bool]:
    def holds(atom: Atom) -> bool:
        component, state = index[atom]
        return g[component] == state

    return holds


class _Product:
    """On-the-fly synchronous product of a closed network and an automaton."""

    def __init__(self, net: Network, automaton: BuchiAutomaton, index: Dict[Atom, Tuple[int, int]]):
        self.net = net
        self.automaton = automaton
        self.index = index

    def initial_states(self) -> List[ProductState]:
        return [(self.net.initial, q) for q in self.automaton.initial]

    def accepting(self, state: ProductState) -> bool:
        return state[1] in self.automaton.accepting

    def automaton_moves(self, state: ProductState) -> List[int]:
        g, q = state
        letter = _letter(self.index, g)
        return [target for label, target in self.automaton.successors(q) if label_holds(label, letter)]

    def successors(self, state: ProductState) -> List[Tuple[Event, ProductState]]:
        moves = self.automaton_moves(state)
        if not moves:
            return []
        return [(event, (h, q)) for event, h in self.net.step(state[0]) for q in moves]


def _inner_search(product: _Product, seed: ProductState, flagged: set) -> Optional[Path]:
    stack = [(seed, iter(product.successors(seed)))]
    events: List[Optional[Event]] = [None]
    while stack:
        state, pending = stack[-1]
        for event, target in pending:
            if target == seed:
                path = [(events[i], stack[i][0]) for i in range(1, len(stack))]
                return path + [(event, seed)]
            if target not in flagged:
                flagged.add(target)
                stack.append((target, iter(product.successors(target))))
                events.append(event)
                break
        else:
            stack.pop()
            events.pop()
    return None


def _nested_dfs(
    product: _Product, max_states: int, progress_bar=None
) -> Tuple[Optional[Path], Optional[Path], int]:
    visited = set()
    flagged = set()
    for init in product.initial_states():
        if init in visited:
            continue
        if len(visited) >= max_states:
            raise StateSpaceTruncated(max_states)
        visited.add(init)
        stack = [(init, iter(product.successors(init)))]
        events: List[Optional[Event]] = [None]
        while stack:
            state, pending = stack[-1]
            for event, target in pending:
                if target not in visited:
                    if len(visited) >= max_states:
                        raise StateSpaceTruncated(max_states)
                    visited.add(target)
                    if progress_bar is not None:
                        progress_bar.update(1)
                    stack.append((target, iter(product.successors(target))))
                    events.append(event)
                    break
            else:
                # postorder: look for a cycle back to an accepting state
                if product.accepting(state):
                    cycle = _inner_search(product, state, flagged)
                    if cycle is not None:
                        prefix = [(events[i], stack[i][0]) for i in range(len(stack))]
                        return prefix, cycle, len(visited)
                stack.pop()
                events.pop()
    return None, None, len(visited)


def _product_graph(
    product: _Product, max_states: int, progress_bar=None
) -> Tuple[nx.DiGraph, Dict[ProductState, int]]:
    explicit = product_explicit(product.net, max_states)
    globals_by_name = dict(zip(explicit.states, explicit.global_states))
    out: Dict[GlobalState, List[Tuple[Event, GlobalState]]] = {g: [] for g in explicit.global_states}
    for t in explicit.transitions:
        out[globals_by_name[t.source]].append((t.event, globals_by_name[t.target]))

    graph = nx.DiGraph()
    order: Dict[ProductState, int] = {}
    queue: Deque[ProductState] = deque()
    for init in product.initial_states():
        if init not in order:
            order[init] = len(order)
            graph.add_node(init)
            queue.append(init)
    while queue:
        state = queue.popleft()
        moves = product.automaton_moves(state)
        for event, h in out[state[0]]:
            for q in moves:
                target = (h, q)
                if target not in order:
                    if len(order) >= max_states:
                        raise StateSpaceTruncated(max_states)
                    order[target] = len(order)
                    graph.add_node(target)
                    queue.append(target)
                    if progress_bar is not None:
                        progress_bar.update(1)
                if not graph.has_edge(state, target):
                    graph.add_edge(state, target, event=event)
    return graph, order


def _events_along(graph: nx.DiGraph, nodes: Sequence[ProductState]) -> Path:
    path: Path = [(None, nodes[0])]
    for source, target in zip(nodes, nodes[1:]):
        path.append((graph.edges[source, target]["event"], target))
    return path


def _scc_search(
    product: _Product, max_states: int, progress_bar=None
) -> Tuple[Optional[Path], Optional[Path], int]:
    graph, order = _product_graph(product, max_states, progress_bar)
    candidates = []
    for component in nx.strongly_connected_components(graph):
        seeds = [n for n in component if product.accepting(n)]
        if not seeds:
            continue
        if len(component) == 1 and not graph.has_edge(seeds[0], seeds[0]):
            continue
        candidates.append((min(order[n] for n in component), component, min(seeds, key=order.get)))
    if not candidates:
        return None, None, len(order)

    _, component, seed = min(candidates, key=lambda c: c[0])
    prefix_nodes = None
    for init in product.initial_states():
        if nx.has_path(graph, init, seed):
            path = nx.shortest_path(graph, init, seed)
            if prefix_nodes is None or len(path) < len(prefix_nodes):
                prefix_nodes = path

    if graph.has_edge(seed, seed):
        cycle_nodes = [seed, seed]
    else:
        inside = graph.subgraph(component)
        cycle_nodes = None
        for successor in sorted(inside.successors(seed), key=order.get):
            path = [seed] + nx.shortest_path(inside, successor, seed)
            if cycle_nodes is None or len(path) < len(cycle_nodes):
                cycle_nodes = path
    return _events_along(graph, prefix_nodes), _events_along(graph, cycle_nodes)[1:], len(order)


def _to_lasso(net: Network, prefix: Path, cycle: Path) -> Lasso:
    def step(event: Optional[Event], state: ProductState) -> Step:
        g = state[0]
        return Step(event, g, tuple(net.decode(g).items()))

    return Lasso(
        prefix=tuple(step(e, s) for e, s in prefix),
        cycle=tuple(step(e, s) for e, s in cycle),
    )


def model_check(
    net: Network,
    formula: LtlFormula,
    engine: str = "ndfs",
    max_states: int = DEFAULT_MAX_STATES,
    progress_bar=None,
) -> Verdict:
    """
    Decide whether every infinite run of ``net`` satisfies ``formula``.

    Finite runs are extended by stuttering forever in their last state.

    Args:
        net: The network to check
        formula: LTL property over ``component @ state`` atoms
        engine: "ndfs" (on-the-fly nested DFS) or "scc" (SCC decomposition)
        max_states: Bound on the number of product states
        progress_bar: Optional tqdm progress bar, advanced per new product state

    Returns:
        Verdict with a counterexample lasso when the property is violated

    Raises:
        UnresolvedAtomError: If an atom does not name a component state
        StateSpaceTruncated: If the product exceeds ``max_states``
        ValueError: On an unknown engine or max_states < 1

    Example:
        >>> verdict = model_check(network, parse_ltl("G !(goto @ Running)"))
        >>> verdict.holds
        False
    """
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}, expected one of {', '.join(ENGINES)}")
    if max_states < 1:
        raise ValueError("max_states must be at least 1")

    start = time.perf_counter()
    closed = stutter_close(net)
    index = resolve_atoms(closed, formula)
    automaton = ltl_to_buchi(negate(formula))
    product = _Product(closed, automaton, index)
    search = _nested_dfs if engine == "ndfs" else _scc_search
    prefix, cycle, explored = search(product, max_states, progress_bar)
    lasso = _to_lasso(closed, prefix, cycle) if cycle is not None else None
    elapsed = (time.perf_counter() - start) * 1000.0

    verdict = Verdict(
        holds=lasso is None,
        formula=formula,
        engine=engine,
        states_explored=explored,
        time_ms=elapsed,
        lasso=lasso,
    )
    logger.info("%s: %s (%s, %d product states)", formula, verdict.verdict, engine, explored)
    return verdict
