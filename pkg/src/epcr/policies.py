"""Playable policies derived from a solve, plus simple baseline opponents.

All policies are callables (graph, position) -> destination vertex. The
solver-backed ones are deterministic and memoryless, so playouts with
``certify_evasion`` are sound against them.
"""

from __future__ import annotations

import random
from collections import deque

from .attractor import SolveResult, Winner, cop_strategy, position_state_index, robber_strategy
from .graph import EdgePeriodicGraph
from .simulate import Mover, Policy, Position, legal_moves

_INF = float("inf")


def _static_distances(g: EdgePeriodicGraph) -> list[list[float]]:
    """All-pairs BFS hop counts on the underlying graph (patterns ignored)."""
    n = g.vertex_count
    dist = [[_INF] * n for _ in range(n)]
    for src in range(n):
        row = dist[src]
        row[src] = 0
        queue = deque([src])
        while queue:
            v = queue.popleft()
            for u in g.neighbors(v):
                if row[u] == _INF:
                    row[u] = row[v] + 1
                    queue.append(u)
    return dist


def optimal_cop_policy(res: SolveResult) -> Policy:
    """Follow the synthesized capture strategy inside the forced region;
    elsewhere (losing graphs, off starts) chase greedily: first by rank,
    then by underlying-graph distance to the robber."""
    gg, att = res.game, res.attractor
    strategy = cop_strategy(res) if res.winner is Winner.COP else None
    dist: list[list[float]] | None = None

    def policy(g: EdgePeriodicGraph, p: Position) -> int:
        nonlocal dist
        i = position_state_index(gg, p)
        if strategy is not None and att.in_attractor[i] and att.cop_strategy_edge[i] >= 0:
            return strategy(p).cop
        if dist is None:
            dist = _static_distances(g)
        best = None
        best_key = None
        for dest in sorted(legal_moves(g, p)):
            j = position_state_index(gg, Position(dest, p.robber, Mover.ROBBER, p.time))
            rank = att.ranks[j] if att.in_attractor[j] else _INF
            key = (rank, dist[dest][p.robber], dest)
            if best_key is None or key < best_key:
                best, best_key = dest, key
        assert best is not None
        return best

    return policy


def optimal_robber_policy(res: SolveResult) -> Policy:
    """Follow the synthesized evasion strategy while outside the forced
    region; once trapped inside, stall by maximizing the remaining rank."""
    gg, att = res.game, res.attractor
    strategy = robber_strategy(res) if res.winner is Winner.ROBBER else None
    fallback = rank_maximizing_robber_policy(res)

    def policy(g: EdgePeriodicGraph, p: Position) -> int:
        i = position_state_index(gg, p)
        if strategy is not None and not att.in_attractor[i]:
            return strategy(p).robber
        return fallback(g, p)

    return policy


def rank_maximizing_robber_policy(res: SolveResult) -> Policy:
    """Adversarial stalling robber: prefer successors outside the forced
    region, otherwise the largest rank; ties toward the lower vertex."""
    gg, att = res.game, res.attractor

    def policy(g: EdgePeriodicGraph, p: Position) -> int:
        best = None
        best_key = None
        for dest in sorted(legal_moves(g, p)):
            j = position_state_index(gg, Position(p.cop, dest, Mover.COP, p.time + 1))
            rank = att.ranks[j] if att.in_attractor[j] else _INF
            key = (rank, -dest)
            if best_key is None or key > best_key:
                best, best_key = dest, key
        assert best is not None  # waiting is always legal
        return best

    return policy


def stay_policy(g: EdgePeriodicGraph, p: Position) -> int:
    return p.mover_vertex


def random_policy(seed: int) -> Policy:
    rng = random.Random(seed)

    def policy(g: EdgePeriodicGraph, p: Position) -> int:
        return rng.choice(sorted(legal_moves(g, p)))

    return policy


def engine_cop_start(res: SolveResult) -> int:
    """Best cop start: the winning witness, else the vertex covering the
    most robber replies."""
    if res.cop_start is not None:
        return res.cop_start
    n = res.game.meta.n
    in_attr = res.attractor.in_attractor
    return max(range(n), key=lambda v: (sum(in_attr[v * n : v * n + n]), -v))


def engine_robber_start(res: SolveResult, cop_start: int) -> int:
    """Best robber reply to a cop start: the mapped safe vertex when the
    robber wins, else the reply with the largest capture rank."""
    if res.robber_start_map is not None:
        if cop_start in res.robber_start_map:
            return res.robber_start_map[cop_start]
    n = res.game.meta.n
    att = res.attractor
    base = cop_start * n
    return max(
        range(n),
        key=lambda u: (
            _INF if not att.in_attractor[base + u] else att.ranks[base + u],
            -u,
        ),
    )
