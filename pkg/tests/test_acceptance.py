"""Acceptance suite: one test per release criterion, one [PASS] line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the criterion
lines; the whole module takes a few minutes, dominated by the exhaustive
threshold sweep.
"""

import math
import random
import time
from itertools import product

import networkx as nx
import pytest

from epcr import (
    ALWAYS,
    CycleSpec,
    EdgePeriodicGraph,
    Mover,
    Outcome,
    Pattern,
    Winner,
    build_game_graph,
    compute_attractor,
    decide,
    decide_k_cops,
    gen_copwin_15lcm_cycle,
    gen_copwin_3lcm_cycle,
    hide_escape_policy,
    hide_escape_start,
    naive_attractor_oracle,
    period_summary,
    playout,
    robber_closure_states,
    strip_analysis,
    verify_cycle_threshold,
)
from epcr.policies import (
    engine_robber_start,
    optimal_cop_policy,
    random_policy,
    rank_maximizing_robber_policy,
    stay_policy,
)
from conftest import random_epg, random_threshold_cycle, static_cycle

SEED = 20250809
SWEEP_POOL = [Pattern.from_string(s) for s in ("1", "01", "10")]


def _report(name: str, detail: str = "") -> None:
    print(f"\n[PASS] {name}" + (f" — {detail}" if detail else ""))


@pytest.fixture(scope="module")
def random_graphs():
    rng = random.Random(SEED)
    return [random_epg(rng, rng.randint(1, 5), 0.5, 3) for _ in range(200)]


def all_trees_up_to(n_max: int):
    trees = []
    for n in range(1, n_max + 1):
        if n <= 2:
            edges = [(0, 1)] if n == 2 else []
            trees.append(EdgePeriodicGraph(n, [(e, ALWAYS) for e in edges]))
            continue
        for t in nx.nonisomorphic_trees(n):
            trees.append(
                EdgePeriodicGraph(n, [((u, v), ALWAYS) for u, v in t.edges()])
            )
    return trees


def copwin_catalog():
    graphs = [gen_copwin_3lcm_cycle(m).to_graph() for m in (2, 3, 4, 5, 6)]
    graphs += [gen_copwin_15lcm_cycle(m).to_graph() for m in (3, 5, 7)]
    graphs += all_trees_up_to(7)
    graphs.append(static_cycle(3).to_graph())
    return graphs


def robberwin_cycle_catalog():
    specs = [static_cycle(n) for n in range(4, 9)]
    for m in (2, 3, 4, 5, 6):
        rare = Pattern.from_string("0" * (m - 1) + "1")
        specs.append(CycleSpec((rare, rare) + (ALWAYS,) * (4 * m - 2)))
    return specs


def test_oracle_equivalence(random_graphs):
    checked = 0
    for g in random_graphs:
        gg = build_game_graph(g)
        att = compute_attractor(gg)
        fast = {i for i in range(gg.num_states) if att.in_attractor[i]}
        assert fast == naive_attractor_oracle(gg)
        checked += 1
    for n in range(3, 9):
        for pats in product(SWEEP_POOL, repeat=n):
            gg = build_game_graph(CycleSpec(pats).to_graph())
            att = compute_attractor(gg)
            fast = {i for i in range(gg.num_states) if att.in_attractor[i]}
            assert fast == naive_attractor_oracle(gg)
            checked += 1
    _report(
        "oracle equivalence",
        f"fast fixed point = literal iteration on {checked} instances",
    )


def test_exact_size_formulas(random_graphs):
    graphs = list(random_graphs) + copwin_catalog()
    graphs += [s.to_graph() for s in robberwin_cycle_catalog()]
    for g in graphs:
        gg = build_game_graph(g)
        n, lcm = g.vertex_count, period_summary(g).lcm
        assert gg.num_states == 2 * lcm * n * n
        assert max(gg.out_degree(i) for i in range(gg.num_states)) <= n
    _report(
        "exact size formulas",
        f"|V'| = 2*LCM*n^2 and out-degree <= n on {len(graphs)} graphs",
    )


def test_copwin_3lcm_reproduction():
    t0 = time.perf_counter()
    for m in (2, 3, 4, 5, 6):
        spec = gen_copwin_3lcm_cycle(m)
        assert decide(spec.to_graph()).winner is Winner.COP
        rare = Pattern.from_string("0" * (m - 1) + "1")
        extended = CycleSpec((rare, rare) + (ALWAYS,) * (4 * m - 2))
        assert extended.length == extended.summary().cycle_threshold
        assert decide(extended.to_graph()).winner is Winner.ROBBER
    _report(
        "3*LCM cop-win cycles",
        f"cop-win at 3M, robber-win at 4M, M=2..6 ({time.perf_counter() - t0:.1f}s)",
    )


def test_copwin_15lcm_reproduction():
    t0 = time.perf_counter()
    for m in (3, 5, 7):
        spec = gen_copwin_15lcm_cycle(m)
        s = spec.summary()
        assert s.lcm == 2 * m
        assert 2 * spec.length == 3 * s.lcm  # n = 1.5 * LCM
        assert decide(spec.to_graph()).winner is Winner.COP
    _report(
        "1.5*LCM cop-win cycles",
        f"cop-win with LCM = 2M, n = 1.5*LCM, M=3,5,7 ({time.perf_counter() - t0:.1f}s)",
    )


def test_threshold_sweep_exhaustive_and_sampled():
    t0 = time.perf_counter()
    report = verify_cycle_threshold(
        [8, 9, 10, 11, 12], SWEEP_POOL, mode="exhaustive"
    )
    assert report["instances"] == sum(3**n for n in range(8, 13))
    assert report["checked"] == report["instances"]  # this family is all at/over threshold
    assert report["counterexamples"] == []
    assert report["robber_win"] == report["checked"]
    assert report["skipped"] == []
    pool = [Pattern(mask, L) for L in (1, 2, 3) for mask in range(1, 1 << L)]
    sampled = verify_cycle_threshold([], pool, mode="sample", samples=500, seed=SEED)
    assert sampled["checked"] == 500
    assert sampled["counterexamples"] == []
    assert sampled["margin"] == {"min": 0, "max": 0, "mean": 0.0}
    _report(
        "robber-win threshold sweep",
        f"{report['instances']} exhaustive + 500 at-threshold samples, "
        f"0 counterexamples ({time.perf_counter() - t0:.0f}s)",
    )


def _robber_turns(po):
    return sum(1 for p in po.positions[:-1] if p.mover is Mover.ROBBER)


def test_strategy_soundness():
    t0 = time.perf_counter()
    capture_playouts = 0
    for g in copwin_catalog():
        res = decide(g)
        assert res.winner is Winner.COP
        cop = optimal_cop_policy(res)
        n = g.vertex_count
        worst = engine_robber_start(res, res.cop_start)
        for r in range(n):
            rank0 = res.attractor.ranks[res.game.start_index((res.cop_start,), r)]
            for robber in (rank_maximizing_robber_policy(res), stay_policy):
                po = playout(g, cop, robber, res.cop_start, r)
                assert po.outcome is Outcome.CAPTURED
                assert _robber_turns(po) <= max(rank0, 0)
                capture_playouts += 1
        rank_worst = res.attractor.ranks[res.game.start_index((res.cop_start,), worst)]
        for seed in range(100):
            po = playout(g, cop, random_policy(seed), res.cop_start, worst)
            assert po.outcome is Outcome.CAPTURED
            assert _robber_turns(po) <= rank_worst
            capture_playouts += 1
    evasions = 0
    for spec in robberwin_cycle_catalog():
        g = spec.to_graph()
        res = decide(g)
        assert res.winner is Winner.ROBBER
        closure = robber_closure_states(res)
        assert all(not res.attractor.in_attractor[i] for i in closure)
        cop = optimal_cop_policy(res)
        for cop_start in range(g.vertex_count):
            po = playout(
                g,
                cop,
                hide_escape_policy(spec),
                cop_start,
                hide_escape_start(spec, cop_start),
                certify_evasion=True,
            )
            assert po.outcome is Outcome.EVASION_CERTIFIED
            evasions += 1
    _report(
        "strategy soundness",
        f"{capture_playouts} capture playouts within rank, closures disjoint, "
        f"{evasions} certified evasions ({time.perf_counter() - t0:.0f}s)",
    )


def test_strip_inequalities():
    rng = random.Random(SEED)
    strips_checked = 0
    for _ in range(50):
        spec = random_threshold_cycle(rng)
        an = strip_analysis(
            spec,
            cop_start=rng.randrange(spec.length),
            direction=rng.choice([1, -1]),
            t0=rng.randrange(spec.summary().lcm),
            horizon=None,
        )
        assert an.strips
        assert an.violations() == []
        strips_checked += len(an.strips)
    _report(
        "chase strip inequalities",
        f"runner/pursuer orderings hold on {strips_checked} strips across 50 cycles",
    )


def test_static_graph_sanity():
    # verdicts recomputed from the literal oracle, not taken from decide()
    def oracle_verdict(g):
        gg = build_game_graph(g)
        attr = naive_attractor_oracle(gg)
        n = g.vertex_count
        for v in range(n):
            if all(gg.start_index((v,), r) in attr for r in range(n)):
                return Winner.COP
        return Winner.ROBBER

    trees = all_trees_up_to(7)
    for g in trees:
        assert decide(g).winner is Winner.COP
        assert oracle_verdict(g) is Winner.COP
    c3 = static_cycle(3).to_graph()
    assert decide(c3).winner is Winner.COP
    assert oracle_verdict(c3) is Winner.COP
    for n in range(4, 9):
        ring = static_cycle(n).to_graph()
        assert decide(ring).winner is Winner.ROBBER
        assert oracle_verdict(ring) is Winner.ROBBER
    _report(
        "static graph sanity",
        f"{len(trees)} trees + triangle cop-win; rings of 4..8 robber-win",
    )


def test_k_cop_layered_construction():
    rng = random.Random(SEED + 1)
    for _ in range(50):
        g = random_epg(rng, rng.randint(1, 4), 0.5, 2)
        assert decide(g).winner is decide_k_cops(g, 1).winner
    c4 = static_cycle(4).to_graph()
    two_cops = decide_k_cops(c4, 2)
    assert two_cops.winner is Winner.COP
    naive = naive_attractor_oracle(two_cops.game)
    att = two_cops.attractor
    assert naive == {i for i in range(two_cops.game.num_states) if att.in_attractor[i]}
    assert decide_k_cops(c4, 1).winner is Winner.ROBBER
    _report(
        "k-cop layered construction",
        "k=1 matches the base game on 50 instances; 2 cops clear the 4-ring",
    )


def test_scaling_follows_cubic_model():
    sizes = [10, 20, 40]
    edge_counts = []
    times = []
    for n in sizes:
        g = EdgePeriodicGraph(
            n, [((u, v), ALWAYS) for u in range(n) for v in range(u + 1, n)]
        )
        t0 = time.perf_counter()
        res = decide(g)
        times.append(time.perf_counter() - t0)
        edge_counts.append(res.stats.edge_count)
        assert res.winner is Winner.COP  # complete graphs fall to one cop
    xs = [math.log(n) for n in sizes]
    ys = [math.log(e) for e in edge_counts]
    xbar, ybar = sum(xs) / 3, sum(ys) / 3
    slope = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / sum(
        (x - xbar) ** 2 for x in xs
    )
    assert abs(slope - 3.0) <= 0.5
    detail = ", ".join(
        f"n={n}: {e} edges, {t * 1000:.0f}ms" for n, e, t in zip(sizes, edge_counts, times)
    )
    _report("cubic scaling", f"edge-count log-log slope {slope:.2f} ({detail})")


def test_secondary_scripted_session():
    # [SECONDARY] the HTTP surface the playground consumes, end to end
    from fastapi.testclient import TestClient

    from epcr import parse_epg, serialize_epg
    from epcr.attractor import cop_strategy, position_state_index
    from epcr.server import create_app
    from epcr.simulate import Position, apply_move, legal_moves

    epg = serialize_epg(gen_copwin_3lcm_cycle(2).to_graph())
    res = decide(parse_epg(epg))
    step = cop_strategy(res)
    client = TestClient(create_app())
    doc = client.post("/session", json={"epg": epg, "human_role": "cop"}).json()
    sid = doc["session_id"]
    client.post(f"/session/{sid}/start", json={"vertex": doc["optimal_start"]})
    # illegal move: the rare pair is absent at t=0
    bad = client.post(f"/session/{sid}/move", json={"vertex": 99})
    assert bad.status_code == 422 and bad.json()["detail"]["condition"] == "out-of-range"
    g = parse_epg(epg)
    moves = 0
    while True:
        cur = client.get(f"/session/{sid}").json()
        hints = client.get(f"/session/{sid}/hints").json()["moves"]
        p = Position(cur["cop"], cur["robber"], Mover.COP, cur["time"])
        want = {
            d: bool(
                res.attractor.in_attractor[
                    position_state_index(res.game, apply_move(g, p, d))
                ]
            )
            for d in legal_moves(g, p)
        }
        assert {h["vertex"]: h["in_attractor"] for h in hints} == want
        body = client.post(
            f"/session/{sid}/move", json={"vertex": step(p).cop}
        ).json()
        moves += 1
        if body["outcome"]:
            assert body["outcome"]["result"] == "captured"
            break
        assert moves < 50
    _report(
        "[SECONDARY] scripted session",
        f"create -> starts -> {moves} strategy moves -> capture; 422 names "
        "the violated condition; hints equal forced-region membership",
    )
