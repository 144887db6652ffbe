"""Backward fixed-point solver: forced-capture region, verdict, strategies.

The cop-forced region is the least fixed point of backward propagation from
the capture states: a cop state joins as soon as one successor is inside,
a robber state joins once every successor is inside. The worklist
implementation is linear in states + edges (robber states carry a
remaining-escape counter initialized to their out-degree; cop states join
on the first successor processed). A FIFO worklist makes the recorded rank
of each state exactly the round in which the literal iteration would have
added it.
"""

from __future__ import annotations

import time as _time
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .errors import BudgetError, StrategyError
from .gamegraph import (
    DEFAULT_STATE_BUDGET,
    GameGraph,
    build_game_graph,
    build_k_cop_game_graph,
)
from .graph import EdgePeriodicGraph
from .simulate import Mover, Position

NAIVE_ORACLE_CAP = 20_000


class Winner(Enum):
    COP = "cop"
    ROBBER = "robber"


@dataclass
class AttractorResult:
    """Membership, ranks, and memoryless strategy tables.

    ``ranks[i]`` is the first round at which state i joins (-1 outside the
    region). ``cop_strategy_edge[i]`` is a rank-decreasing successor for
    cop states inside (−1 where undefined, e.g. capture states);
    ``robber_strategy_edge[i]`` is a successor that stays outside, for
    robber states outside the region.
    """

    in_attractor: bytearray
    ranks: list[int]
    cop_strategy_edge: list[int]
    robber_strategy_edge: list[int]

    @property
    def member_count(self) -> int:
        return sum(self.in_attractor)


@dataclass(frozen=True)
class SolveStats:
    state_count: int
    edge_count: int
    elapsed_ms: float


@dataclass
class SolveResult:
    """Verdict for the single-cop game plus everything needed to play it.

    ``cop_start`` is the least vertex from which every robber reply starts
    inside the forced-capture region (cop wins); ``robber_start_map`` maps
    each possible cop start to the least safe robber reply (robber wins).
    Exactly one of the two is present.
    """

    winner: Winner
    cop_start: int | None
    robber_start_map: dict[int, int] | None
    attractor: AttractorResult
    game: GameGraph
    stats: SolveStats

    def to_json_dict(
        self, include_strategy: bool = False, include_timings: bool = True
    ) -> dict:
        doc: dict = {
            "winner": self.winner.value,
            "cop_start": self.cop_start,
            "robber_start": self.robber_start_map,
            "lcm": self.game.meta.lcm,
            "n": self.game.meta.n,
            "state_count": self.stats.state_count,
            "edge_count": self.stats.edge_count,
        }
        if include_timings:
            doc["elapsed_ms"] = self.stats.elapsed_ms
        if include_strategy:
            att = self.attractor
            doc["strategy"] = {
                "cop": {
                    str(i): e
                    for i, e in enumerate(att.cop_strategy_edge)
                    if e >= 0
                },
                "robber": {
                    str(i): e
                    for i, e in enumerate(att.robber_strategy_edge)
                    if e >= 0
                },
            }
        return doc


def compute_attractor(gg: GameGraph) -> AttractorResult:
    """Counter-based backward propagation from the capture states."""
    n_states = gg.num_states
    succ_off, succ = gg.succ_off, gg.succ
    pred_off, pred = gg.pred_off, gg.pred
    owner = gg.owner
    in_attr = bytearray(n_states)
    ranks = [-1] * n_states
    cop_edge = [-1] * n_states
    robber_edge = [-1] * n_states
    counters = [0] * n_states
    for i in range(n_states):
        if owner[i]:
            counters[i] = succ_off[i + 1] - succ_off[i]
    queue = deque(gg.final_states)
    for i in gg.final_states:
        in_attr[i] = 1
        ranks[i] = 0
    while queue:
        u = queue.popleft()
        next_rank = ranks[u] + 1
        for j in range(pred_off[u], pred_off[u + 1]):
            p = pred[j]
            if in_attr[p]:
                continue
            if owner[p]:
                c = counters[p] - 1
                counters[p] = c
                if c:
                    continue
            else:
                cop_edge[p] = u
            in_attr[p] = 1
            ranks[p] = next_rank
            queue.append(p)
    for i in range(n_states):
        if owner[i] and not in_attr[i]:
            for j in range(succ_off[i], succ_off[i + 1]):
                if not in_attr[succ[j]]:
                    robber_edge[i] = succ[j]
                    break
    return AttractorResult(in_attr, ranks, cop_edge, robber_edge)


def naive_attractor_oracle(gg: GameGraph, cap: int = NAIVE_ORACLE_CAP) -> set[int]:
    """Literal round-by-round fixed-point iteration; the test oracle.

    Kept deliberately independent of :func:`compute_attractor`: each round
    re-examines every outside state against the previous round's set.
    """
    if gg.num_states > cap:
        raise BudgetError(f"{gg.num_states} states exceeds the oracle cap {cap}")
    owner = gg.owner
    attr = set(gg.final_states)
    outside = [i for i in range(gg.num_states) if i not in attr]
    while True:
        added = []
        for v in outside:
            succs = gg.successors(v)
            if owner[v]:
                if all(s in attr for s in succs):
                    added.append(v)
            elif any(s in attr for s in succs):
                added.append(v)
        if not added:
            return attr
        attr.update(added)
        added_set = set(added)
        outside = [v for v in outside if v not in added_set]


def decide(
    g: EdgePeriodicGraph, max_states: int = DEFAULT_STATE_BUDGET
) -> SolveResult:
    """Solve the single-cop game: winner, starts, strategies, stats.

    The cop wins iff some start vertex v puts (v, r, cop-to-move, 0) inside
    the forced-capture region for every robber reply r.
    """
    t0 = _time.perf_counter()
    gg = build_game_graph(g, max_states=max_states)
    att = compute_attractor(gg)
    n = g.vertex_count
    in_attr = att.in_attractor
    # (v, r, cop-to-move, time 0) sits at index v*n + r in the layout
    cop_start = None
    for v in range(n):
        base = v * n
        if all(in_attr[base : base + n]):
            cop_start = v
            break
    robber_start_map: dict[int, int] | None = None
    if cop_start is None:
        robber_start_map = {}
        for v in range(n):
            base = v * n
            for u in range(n):
                if not in_attr[base + u]:
                    robber_start_map[v] = u
                    break
    elapsed = (_time.perf_counter() - t0) * 1000.0
    return SolveResult(
        winner=Winner.COP if cop_start is not None else Winner.ROBBER,
        cop_start=cop_start,
        robber_start_map=robber_start_map,
        attractor=att,
        game=gg,
        stats=SolveStats(gg.num_states, gg.edge_count, elapsed),
    )


@dataclass(frozen=True)
class KCopDecision:
    winner: Winner
    cop_start: tuple[int, ...] | None
    game: GameGraph
    attractor: AttractorResult


def decide_k_cops(
    g: EdgePeriodicGraph, k: int, max_states: int = DEFAULT_STATE_BUDGET
) -> KCopDecision:
    """Winner of the k-cop game; witness start tuple when the cops win."""
    gg = build_k_cop_game_graph(g, k, max_states=max_states)
    att = compute_attractor(gg)
    n = g.vertex_count
    in_attr = att.in_attractor
    for code in range(n**k):
        base = code * n
        if all(in_attr[base : base + n]):
            return KCopDecision(Winner.COP, gg.state_of(base).cops, gg, att)
    return KCopDecision(Winner.ROBBER, None, gg, att)


def position_state_index(gg: GameGraph, p: Position) -> int:
    """Index of the reduced (time mod LCM) state for a single-cop position."""
    meta = gg.meta
    n, lcm = meta.n, meta.lcm
    if not (0 <= p.cop < n and 0 <= p.robber < n):
        raise StrategyError(f"position vertices out of range for n={n}")
    mover = 0 if p.mover is Mover.COP else 1
    return ((mover * lcm + p.time % lcm) * n + p.cop) * n + p.robber


def cop_strategy(res: SolveResult) -> Callable[[Position], Position]:
    """Memoryless capture strategy; defined on cop-to-move positions inside
    the forced region. Each returned move strictly decreases the rank."""
    if res.winner is not Winner.COP:
        raise StrategyError("no winning cop strategy: the robber wins this graph")
    gg, att = res.game, res.attractor

    def step(p: Position) -> Position:
        if p.mover is not Mover.COP:
            raise StrategyError("not the cop's turn")
        i = position_state_index(gg, p)
        if not att.in_attractor[i]:
            raise StrategyError(
                "strategy undefined here: position outside the forced-capture region"
            )
        e = att.cop_strategy_edge[i]
        if e < 0:
            raise StrategyError("capture position: the game is already over")
        return Position(gg.state_of(e).cops[0], p.robber, Mover.ROBBER, p.time)

    return step


def robber_strategy(res: SolveResult) -> Callable[[Position], Position]:
    """Memoryless evasion strategy; defined on robber-to-move positions
    outside the forced region, and never leads back into it."""
    if res.winner is not Winner.ROBBER:
        raise StrategyError("no winning robber strategy: the cop wins this graph")
    gg, att = res.game, res.attractor

    def step(p: Position) -> Position:
        if p.mover is not Mover.ROBBER:
            raise StrategyError("not the robber's turn")
        i = position_state_index(gg, p)
        if att.in_attractor[i]:
            raise StrategyError(
                "strategy undefined here: position inside the forced-capture region"
            )
        e = att.robber_strategy_edge[i]
        return Position(p.cop, gg.state_of(e).robber, Mover.COP, p.time + 1)

    return step


def robber_closure_states(res: SolveResult) -> set[int]:
    """States reachable when the robber plays its table against every cop.

    Starts from every (cop start, mapped robber reply) pair; cop states
    branch over all successors, robber states follow the strategy edge.
    The returned set is disjoint from the forced-capture region whenever
    the strategy tables are sound (asserted by tests).
    """
    if res.winner is not Winner.ROBBER:
        raise StrategyError("closure search applies to robber-win results")
    gg, att = res.game, res.attractor
    assert res.robber_start_map is not None
    stack = [
        gg.start_index((v,), u) for v, u in res.robber_start_map.items()
    ]
    seen = set(stack)
    while stack:
        i = stack.pop()
        if gg.owner[i]:
            e = att.robber_strategy_edge[i]
            nxt = [e] if e >= 0 else []  # missing edge: the membership check will flag i
        else:
            nxt = gg.successors(i)
        for j in nxt:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return seen
