"""Shared helpers: random instances and rule-literal oracles.

The edge oracle here rebuilds the game graph by brute force — enumerate
all state pairs and test the move rules one by one — so construction bugs
in the package cannot hide in both routes.
"""

from __future__ import annotations

import random

from epcr import (
    ALWAYS,
    CycleSpec,
    EdgePeriodicGraph,
    GameState,
    Pattern,
    edge_key,
    edge_present,
    period_summary,
    state_index,
)


def random_epg(
    rng: random.Random, n: int, edge_prob: float = 0.5, max_len: int = 3
) -> EdgePeriodicGraph:
    entries = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < edge_prob:
                length = rng.randint(1, max_len)
                entries.append(((u, v), Pattern(rng.randrange(1, 1 << length), length)))
    return EdgePeriodicGraph(n, entries)


def random_threshold_cycle(rng: random.Random, max_len: int = 3) -> CycleSpec:
    """A cycle whose length is exactly its robber-win threshold."""
    import math

    lengths = sorted(rng.sample(range(1, max_len + 1), rng.randint(1, max_len)))
    lcm = math.lcm(*lengths)
    mult = 1 if lcm >= 2 * max(lengths) else 2
    n = 2 * mult * lcm
    patterns = [Pattern(rng.randrange(1, 1 << L), L) for L in lengths]
    while len(patterns) < n:
        L = rng.choice(lengths)
        patterns.append(Pattern(rng.randrange(1, 1 << L), L))
    rng.shuffle(patterns)
    spec = CycleSpec(tuple(patterns))
    if spec.summary().lengths != frozenset(lengths):
        return random_threshold_cycle(rng, max_len)
    return spec


def static_cycle(n: int) -> CycleSpec:
    return CycleSpec((ALWAYS,) * n)


def relabeled(g: EdgePeriodicGraph, perm: list[int]) -> EdgePeriodicGraph:
    return EdgePeriodicGraph(
        g.vertex_count,
        [((perm[u], perm[v]), p) for (u, v), p in g.pattern_of.items()],
    )


def oracle_edge_set(g: EdgePeriodicGraph) -> set[tuple[int, int]]:
    """All legal state transitions, found by testing every state pair
    against the move rules directly (mover alternation, cop moves keep the
    clock, robber moves advance it, crossings need the edge present)."""
    summ = period_summary(g)
    lcm, n = summ.lcm, g.vertex_count
    states = [
        (c, r, s, t)
        for s in "CR"
        for t in range(lcm)
        for c in range(n)
        for r in range(n)
    ]
    edges = set()
    for a in states:
        c, r, s, t = a
        for b in states:
            c2, r2, s2, t2 = b
            if a == b or s == s2:
                continue
            if s == "C":
                if r2 != r or t2 != t:
                    continue
                if c2 != c:
                    if edge_key(c, c2) not in g.pattern_of:
                        continue
                    if not edge_present(g, (c, c2), t):
                        continue
            else:
                if c2 != c or t2 != (t + 1) % lcm:
                    continue
                if r2 != r:
                    if edge_key(r, r2) not in g.pattern_of:
                        continue
                    if not edge_present(g, (r, r2), t):
                        continue
            edges.add((a, b))
    return edges


def oracle_state_to_index(g: EdgePeriodicGraph, gg_meta, state: tuple) -> int:
    c, r, s, t = state
    return state_index(GameState((c,), r, 0 if s == "C" else 1, t), gg_meta)
