"""Flow-divider networks with exact rational fluxes.

Splitters halve an incoming stream, mergers add streams, and feedback
cycles are allowed; steady-state fluxes solve the resulting linear system
exactly.  Includes the p/q divider designer and the three-way coin-toss
lottery it encodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import SingularSystemError, solve_linear_exact

NODE_KINDS = ("source", "sink", "splitter", "merger")


class IllPosedNetworkError(ValueError):
    """Raised when the steady-state system has no unique solution."""


@dataclass
class FluxNetwork:
    """Directed network of a unit source, sinks, splitters and mergers.

    Edges are (tail, head) name pairs; parallel edges are permitted.
    """

    nodes: dict[str, str] = field(default_factory=dict)
    edges: list[tuple[str, str]] = field(default_factory=list)

    def add_node(self, name: str, kind: str) -> None:
        if kind not in NODE_KINDS:
            raise ValueError(f"unknown node kind {kind!r}")
        if name in self.nodes:
            raise ValueError(f"duplicate node {name!r}")
        self.nodes[name] = kind

    def add_edge(self, tail: str, head: str) -> None:
        for name in (tail, head):
            if name not in self.nodes:
                raise ValueError(f"unknown node {name!r}")
        if self.nodes[tail] == "sink":
            raise ValueError("edges cannot leave a sink")
        if self.nodes[head] == "source":
            raise ValueError("edges cannot enter the source")
        self.edges.append((tail, head))

    def out_edges(self, name: str) -> list[int]:
        return [i for i, (t, _) in enumerate(self.edges) if t == name]

    def in_edges(self, name: str) -> list[int]:
        return [i for i, (_, h) in enumerate(self.edges) if h == name]

    def validate_degrees(self) -> None:
        for name, kind in self.nodes.items():
            n_out, n_in = len(self.out_edges(name)), len(self.in_edges(name))
            if kind == "source" and n_out != 1:
                raise ValueError(f"source {name!r} must have exactly one out-edge")
            if kind == "splitter" and n_out != 2:
                raise ValueError(f"splitter {name!r} must have exactly two out-edges")
            if kind == "splitter" and n_in == 0:
                raise ValueError(f"splitter {name!r} has no inflow")
            if kind == "merger" and n_out != 1:
                raise ValueError(f"merger {name!r} must have exactly one out-edge")
            if kind == "sink" and n_out != 0:
                raise ValueError(f"sink {name!r} cannot have out-edges")


def _reachable_from_source(net: FluxNetwork) -> set[str]:
    sources = [n for n, k in net.nodes.items() if k == "source"]
    seen = set(sources)
    stack = list(sources)
    while stack:
        node = stack.pop()
        for i in net.out_edges(node):
            head = net.edges[i][1]
            if head not in seen:
                seen.add(head)
                stack.append(head)
    return seen


def solve_flux(network: FluxNetwork) -> dict[int, Fraction]:
    """Exact steady-state flux per edge index, for a unit source.

    One equation per out-edge: the source edge carries 1, each splitter
    out-edge carries half the splitter's inflow, a merger's out-edge
    carries the sum of its inflow.  The square system is solved exactly;
    singularity (e.g. flow with no sink) raises IllPosedNetworkError.
    """
    network.validate_degrees()
    if _reachable_from_source(network) != set(network.nodes):
        raise IllPosedNetworkError("network is not connected from the source")

    n = len(network.edges)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for name, kind in network.nodes.items():
        outs = network.out_edges(name)
        ins = network.in_edges(name)
        if kind == "source":
            row = [Fraction(0)] * n
            row[outs[0]] = Fraction(1)
            rows.append(row)
            rhs.append(Fraction(1))
        elif kind == "splitter":
            for e in outs:
                row = [Fraction(0)] * n
                row[e] += Fraction(1)
                for i in ins:
                    row[i] -= Fraction(1, 2)
                rows.append(row)
                rhs.append(Fraction(0))
        elif kind == "merger":
            row = [Fraction(0)] * n
            row[outs[0]] += Fraction(1)
            for i in ins:
                row[i] -= Fraction(1)
            rows.append(row)
            rhs.append(Fraction(0))

    try:
        solution = solve_linear_exact(rows, rhs)
    except SingularSystemError as exc:
        raise IllPosedNetworkError(f"no unique steady state: {exc}") from exc
    return dict(enumerate(solution))


def conservation_defects(network: FluxNetwork, fluxes: dict[int, Fraction]) -> dict[str, Fraction]:
    """Inflow minus outflow per internal node; all zero for a valid solve."""
    defects = {}
    for name, kind in network.nodes.items():
        if kind in ("source", "sink"):
            continue
        inflow = sum((fluxes[i] for i in network.in_edges(name)), Fraction(0))
        outflow = sum((fluxes[i] for i in network.out_edges(name)), Fraction(0))
        defects[name] = inflow - outflow
    return defects


def three_way_network() -> FluxNetwork:
    """Four-way split with one stream diverted back into the trunk.

    The classic 1/3 separator: the trunk carries 4/3 and the three
    remaining streams land in separate sinks at exactly 1/3 each.
    """
    net = FluxNetwork()
    net.add_node("source", "source")
    net.add_node("trunk", "merger")
    net.add_node("top", "splitter")
    net.add_node("left", "splitter")
    net.add_node("right", "splitter")
    for i in range(3):
        net.add_node(f"sink{i}", "sink")
    net.add_edge("source", "trunk")
    net.add_edge("trunk", "top")
    net.add_edge("top", "left")
    net.add_edge("top", "right")
    net.add_edge("left", "sink0")
    net.add_edge("left", "sink1")
    net.add_edge("right", "sink2")
    net.add_edge("right", "trunk")  # the diverted stream
    return net


def design_divider_network(p: int, q: int) -> FluxNetwork:
    """Network extracting exactly p/q of a unit flow with halving splitters.

    Splits the (source + feedback) trunk into 2^n >= q equal streams,
    returns 2^n - q of them into the trunk, routes p to the output sink and
    the rest to a spill sink.  Each leaf then carries exactly 1/q.
    """
    if not (0 < p < q):
        raise ValueError("need 0 < p < q")
    n = 1
    while 2**n < q:
        n += 1

    net = FluxNetwork()
    net.add_node("source", "source")
    n_feedback = 2**n - q

    if n_feedback > 0:
        net.add_node("trunk", "merger")
        net.add_edge("source", "trunk")
        root = "trunk"
    else:
        root = "source"

    # depth-n binary tree of splitters; leaves are the 2^n equal streams
    frontier = [root]
    for level in range(n):
        next_frontier = []
        for i, parent in enumerate(frontier):
            name = f"split{level}_{i}"
            net.add_node(name, "splitter")
            net.add_edge(parent, name)
            next_frontier += [name, name]
        frontier = next_frontier

    def route(leaf_parents: list[str], target: str, merger: str) -> None:
        if len(leaf_parents) == 1:
            net.add_edge(leaf_parents[0], target)
            return
        net.add_node(merger, "merger")
        for parent in leaf_parents:
            net.add_edge(parent, merger)
        net.add_edge(merger, target)

    net.add_node("output", "sink")
    route(frontier[:p], "output", "collect")
    if q - p > 0:
        net.add_node("spill", "sink")
        route(frontier[p : p + (q - p)], "spill", "spill_collect")
    if n_feedback > 0:
        for parent in frontier[p + (q - p) :]:
            net.add_edge(parent, "trunk")
    return net


def output_flux(network: FluxNetwork, sink: str = "output") -> Fraction:
    fluxes = solve_flux(network)
    return sum((fluxes[i] for i in network.in_edges(sink)), Fraction(0))


@dataclass(frozen=True)
class LotteryResult:
    exact_probabilities: tuple[Fraction, Fraction, Fraction]
    expected_tosses: Fraction
    rounds: int
    seed: int
    frequencies: tuple[float, float, float]
    mean_tosses: float


def thieves_protocol(seed: int = 0, rounds: int = 100_000) -> LotteryResult:
    """Three-way fair lottery from a two-outcome coin.

    Toss twice; HH/HT/TH pick a winner, TT restarts.  The exact chance of
    winning is the geometric sum over restarts and the expected number of
    tosses is 2 * E[rounds]; a seeded simulation reports empirical
    frequencies alongside.
    """
    p_win_round = Fraction(1, 4)
    p_restart = Fraction(1, 4)
    exact = p_win_round / (1 - p_restart)  # 1/3 each
    expected_rounds = 1 / (1 - p_restart)
    expected_tosses = 2 * expected_rounds  # 8/3

    rng = np.random.default_rng(seed)
    wins = np.zeros(3, dtype=np.int64)
    total_tosses = 0
    pending = rounds
    while pending:
        draws = rng.integers(0, 4, size=pending)
        total_tosses += 2 * pending
        for outcome in range(3):
            wins[outcome] += int(np.count_nonzero(draws == outcome))
        pending = int(np.count_nonzero(draws == 3))

    freqs = tuple(float(w) / rounds for w in wins)
    return LotteryResult(
        exact_probabilities=(exact, exact, exact),
        expected_tosses=expected_tosses,
        rounds=rounds,
        seed=seed,
        frequencies=freqs,  # type: ignore[arg-type]
        mean_tosses=total_tosses / rounds,
    )
