import random

import pytest

from epcr import (
    ALWAYS,
    BudgetError,
    EdgePeriodicGraph,
    GameState,
    Mover,
    Position,
    StrategyError,
    Winner,
    build_game_graph,
    compute_attractor,
    cop_strategy,
    decide,
    decide_k_cops,
    gen_copwin_3lcm_cycle,
    naive_attractor_oracle,
    robber_closure_states,
    robber_strategy,
)
from conftest import random_epg, relabeled, static_cycle


def attr_set(gg):
    att = compute_attractor(gg)
    return {i for i in range(gg.num_states) if att.in_attractor[i]}


def test_capture_states_have_rank_zero():
    gg = build_game_graph(static_cycle(4).to_graph())
    att = compute_attractor(gg)
    for i in range(gg.num_states):
        assert (att.ranks[i] == 0) == (i in set(gg.final_states))


def test_single_edge_all_cop_starts_win():
    # hand iteration: cop either starts on the robber or crosses to it
    g = EdgePeriodicGraph(2, {(0, 1): ALWAYS})
    gg = build_game_graph(g)
    att = compute_attractor(gg)
    for c in range(2):
        for r in range(2):
            assert att.in_attractor[gg.index_of(GameState((c,), r, 0, 0))]


def test_static_ring_center_state_not_attracted():
    # classical evasion on a 4-cycle, confirmed by the literal oracle
    gg = build_game_graph(static_cycle(4).to_graph())
    naive = naive_attractor_oracle(gg)
    i = gg.index_of(GameState((0,), 2, 0, 0))
    assert i not in naive
    assert not compute_attractor(gg).in_attractor[i]


def test_oracle_monotone_and_contains_final():
    gg = build_game_graph(static_cycle(5).to_graph())
    naive = naive_attractor_oracle(gg)
    assert set(gg.final_states) <= naive


def test_oracle_cap():
    gg = build_game_graph(static_cycle(8).to_graph())
    with pytest.raises(BudgetError):
        naive_attractor_oracle(gg, cap=10)


def test_fast_equals_oracle_on_random_graphs():
    rng = random.Random(21)
    for _ in range(60):
        g = random_epg(rng, rng.randint(1, 5), 0.5, 3)
        gg = build_game_graph(g)
        assert attr_set(gg) == naive_attractor_oracle(gg)


def test_fixed_point_is_stable():
    rng = random.Random(22)
    for _ in range(20):
        g = random_epg(rng, rng.randint(1, 5), 0.6, 3)
        gg = build_game_graph(g)
        att = compute_attractor(gg)
        inside = {i for i in range(gg.num_states) if att.in_attractor[i]}
        grown = set(inside)
        for v in range(gg.num_states):
            if v in inside:
                continue
            succs = gg.successors(v)
            if gg.owner[v]:
                if all(s in inside for s in succs):
                    grown.add(v)
            elif any(s in inside for s in succs):
                grown.add(v)
        assert grown == inside


def test_rank_soundness():
    rng = random.Random(23)
    for _ in range(20):
        g = random_epg(rng, rng.randint(1, 5), 0.6, 3)
        gg = build_game_graph(g)
        att = compute_attractor(gg)
        for i in range(gg.num_states):
            rank = att.ranks[i]
            if rank < 0:
                continue
            succ_ranks = [att.ranks[j] for j in gg.successors(i)]
            if rank == 0:
                continue
            if gg.owner[i]:
                # every escape hatch closed one round earlier
                assert all(0 <= r_ <= rank - 1 for r_ in succ_ranks)
            else:
                assert any(0 <= r_ <= rank - 1 for r_ in succ_ranks)
                e = att.cop_strategy_edge[i]
                assert e in gg.successors(i)
                assert att.ranks[e] < rank


def test_ranks_match_literal_rounds():
    # round-by-round iteration, recording the round each state joins
    rng = random.Random(24)
    for _ in range(10):
        g = random_epg(rng, rng.randint(1, 4), 0.6, 2)
        gg = build_game_graph(g)
        att = compute_attractor(gg)
        level = {i: 0 for i in gg.final_states}
        frontier = set(level)
        current = set(level)
        round_no = 0
        while True:
            round_no += 1
            added = set()
            for v in range(gg.num_states):
                if v in current:
                    continue
                succs = gg.successors(v)
                ok = (
                    all(s in current for s in succs)
                    if gg.owner[v]
                    else any(s in current for s in succs)
                )
                if ok:
                    added.add(v)
            if not added:
                break
            for v in added:
                level[v] = round_no
            current |= added
        assert {i for i in range(gg.num_states) if att.ranks[i] >= 0} == current
        for i, lv in level.items():
            assert att.ranks[i] == lv


def test_robber_strategy_edges_stay_outside():
    rng = random.Random(25)
    for _ in range(20):
        g = random_epg(rng, rng.randint(2, 5), 0.4, 3)
        gg = build_game_graph(g)
        att = compute_attractor(gg)
        for i in range(gg.num_states):
            if gg.owner[i] and not att.in_attractor[i]:
                e = att.robber_strategy_edge[i]
                assert e in gg.successors(i)
                assert not att.in_attractor[e]


def test_decide_copwin_examples():
    p3 = EdgePeriodicGraph(3, {(0, 1): ALWAYS, (1, 2): ALWAYS})
    res = decide(p3)
    assert res.winner is Winner.COP
    assert res.cop_start == 0  # least winning start
    assert res.robber_start_map is None
    for m in (2, 3, 4):
        assert decide(gen_copwin_3lcm_cycle(m).to_graph()).winner is Winner.COP


def test_decide_robberwin_examples():
    res = decide(static_cycle(4).to_graph())
    assert res.winner is Winner.ROBBER
    assert res.cop_start is None
    assert res.robber_start_map == {0: 2, 1: 3, 2: 0, 3: 1}


def test_decide_degenerate_single_vertex():
    assert decide(EdgePeriodicGraph(1, {})).winner is Winner.COP


def test_decide_edgeless_two_vertices():
    assert decide(EdgePeriodicGraph(2, {})).winner is Winner.ROBBER


def test_decide_disconnected_graph_is_robber_win():
    g = EdgePeriodicGraph(4, {(0, 1): ALWAYS, (2, 3): ALWAYS})
    assert decide(g).winner is Winner.ROBBER


def test_decision_invariant_under_relabeling():
    rng = random.Random(26)
    for _ in range(30):
        g = random_epg(rng, rng.randint(2, 5), 0.5, 3)
        perm = list(range(g.vertex_count))
        rng.shuffle(perm)
        assert decide(g).winner is decide(relabeled(g, perm)).winner


def test_cop_strategy_rank_one_captures():
    g = EdgePeriodicGraph(2, {(0, 1): ALWAYS})
    res = decide(g)
    step = cop_strategy(res)
    nxt = step(Position(0, 1, Mover.COP, 0))
    assert nxt.cop == nxt.robber == 1


def test_cop_strategy_decreases_rank():
    res = decide(gen_copwin_3lcm_cycle(3).to_graph())
    step = cop_strategy(res)
    gg, att = res.game, res.attractor
    for r in range(gg.meta.n):
        p = Position(res.cop_start, r, Mover.COP, 0)
        if p.is_capture:
            continue
        i = gg.start_index((p.cop,), p.robber)
        p2 = step(p)
        j = gg.index_of(GameState((p2.cop,), p2.robber, 1, p2.time % gg.meta.lcm))
        assert att.ranks[j] < att.ranks[i]


def test_cop_strategy_domain_errors():
    res = decide(static_cycle(4).to_graph())
    with pytest.raises(StrategyError):
        cop_strategy(res)  # robber wins
    res = decide(gen_copwin_3lcm_cycle(2).to_graph())
    step = cop_strategy(res)
    with pytest.raises(StrategyError):
        step(Position(0, 1, Mover.ROBBER, 0))  # wrong mover


def test_robber_strategy_stays_safe():
    res = decide(static_cycle(6).to_graph())
    step = robber_strategy(res)
    gg, att = res.game, res.attractor
    cop = 0
    p = Position(cop, res.robber_start_map[cop], Mover.ROBBER, 0)
    p2 = step(p)
    j = gg.index_of(GameState((p2.cop,), p2.robber, 0, p2.time % gg.meta.lcm))
    assert not att.in_attractor[j]


def test_robber_strategy_domain_errors():
    res = decide(gen_copwin_3lcm_cycle(2).to_graph())
    with pytest.raises(StrategyError):
        robber_strategy(res)
    res = decide(static_cycle(4).to_graph())
    step = robber_strategy(res)
    with pytest.raises(StrategyError):
        step(Position(0, 0, Mover.ROBBER, 0))  # captured state is inside


def test_robber_closure_disjoint_from_attractor():
    rng = random.Random(27)
    found = 0
    while found < 15:
        g = random_epg(rng, rng.randint(2, 5), 0.5, 3)
        res = decide(g)
        if res.winner is not Winner.ROBBER:
            continue
        found += 1
        closure = robber_closure_states(res)
        assert closure
        assert all(not res.attractor.in_attractor[i] for i in closure)


def test_solve_result_json_shape():
    res = decide(static_cycle(4).to_graph())
    doc = res.to_json_dict(include_strategy=True, include_timings=False)
    assert doc["winner"] == "robber"
    assert "elapsed_ms" not in doc
    assert doc["state_count"] == 32
    assert set(doc["strategy"]) == {"cop", "robber"}
    doc2 = res.to_json_dict()
    assert "elapsed_ms" in doc2 and "strategy" not in doc2


def test_k_cop_decisions():
    c4 = static_cycle(4).to_graph()
    assert decide_k_cops(c4, 1).winner is Winner.ROBBER
    k2 = decide_k_cops(c4, 2)
    assert k2.winner is Winner.COP
    assert k2.cop_start is not None
    # brute-force oracle agrees on the layered graph
    naive = naive_attractor_oracle(k2.game)
    att = k2.attractor
    assert naive == {i for i in range(k2.game.num_states) if att.in_attractor[i]}


def test_k1_matches_base_decision():
    rng = random.Random(28)
    for _ in range(25):
        g = random_epg(rng, rng.randint(1, 4), 0.5, 2)
        assert decide(g).winner is decide_k_cops(g, 1).winner
