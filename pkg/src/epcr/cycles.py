"""Edge-periodic cycles: tight cop-win constructions, the hide/escape
evasion policy, chase strip analysis, and a threshold verification harness.

Every cycle of length at least 2 * l * LCM(L) is robber-win, where l is 1
when LCM >= 2 * max(L) and 2 otherwise. The two generators here witness
how tight that threshold is: a cop-win cycle of length 3 * LCM in the
l = 2 regime, and one of length 1.5 * LCM in the l = 1 regime.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import product

from .attractor import Winner, decide
from .errors import BudgetError, GraphError, StrategyError
from .gamegraph import DEFAULT_STATE_BUDGET
from .graph import ALWAYS, EdgePeriodicGraph, Pattern, PeriodSummary, period_summary
from .simulate import Position, legal_moves


@dataclass(frozen=True)
class CycleSpec:
    """A cycle of length n with patterns[i] on edge {i, (i+1) mod n}."""

    patterns: tuple[Pattern, ...]

    def __post_init__(self):
        if len(self.patterns) < 3:
            raise GraphError("a cycle needs at least 3 vertices")

    @property
    def length(self) -> int:
        return len(self.patterns)

    def to_graph(self) -> EdgePeriodicGraph:
        n = self.length
        return EdgePeriodicGraph(
            n,
            [((i, (i + 1) % n), p) for i, p in enumerate(self.patterns)],
            max_pattern_length=None,
        )

    def summary(self) -> PeriodSummary:
        return period_summary(self.to_graph())


def gen_copwin_3lcm_cycle(m: int) -> CycleSpec:
    """Cop-win cycle of length 3*LCM with pattern lengths {1, m}.

    Two consecutive edges carry the rare pattern 0..01 of length m; the
    other 3m - 2 edges are static, so LCM = max length = m and the
    robber-win threshold (4m here) stays strictly above the length.
    """
    if m < 2:
        raise GraphError("construction needs m >= 2")
    rare = Pattern.from_string("0" * (m - 1) + "1")
    return CycleSpec((rare, rare) + (ALWAYS,) * (3 * m - 2))


def copwin_cycle_cop_start(m: int) -> int:
    """The designated winning start for the 3*LCM construction: the static
    vertex at distance m-1 from one end of the rare pair and 2m-1 from the
    other (distances along the static arc)."""
    return 2 * m + 1


def gen_copwin_15lcm_cycle(m: int) -> CycleSpec:
    """Cop-win cycle of length 1.5*LCM (m odd, so LCM = 2m).

    Starts from the 3*LCM construction and re-patterns the second edge of
    the short static arc out of the designated cop start to 01 (length 2):
    that edge is crossed in the second step of the winning chase, when 01
    is present. Pattern lengths become {1, 2, m}; the length 3m equals
    1.5 * LCM.
    """
    if m < 3 or m % 2 == 0:
        raise GraphError("construction needs odd m >= 3")
    base = gen_copwin_3lcm_cycle(m)
    x = copwin_cycle_cop_start(m)
    patterns = list(base.patterns)
    patterns[(x + 1) % (3 * m)] = Pattern.from_string("01")
    return CycleSpec(tuple(patterns))


def random_cycle(n: int, max_len: int, seed_or_rng: int | random.Random) -> CycleSpec:
    """Uniformly random patterns (length 1..max_len, at least one 1-bit)."""
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    if max_len < 1:
        raise GraphError("max_len must be >= 1")
    rng = (
        seed_or_rng
        if isinstance(seed_or_rng, random.Random)
        else random.Random(seed_or_rng)
    )
    patterns = []
    for _ in range(n):
        length = rng.randint(1, max_len)
        mask = rng.randrange(1, 1 << length)
        patterns.append(Pattern(mask, length))
    return CycleSpec(tuple(patterns))


def cycle_distance(n: int, a: int, b: int) -> int:
    d = (a - b) % n
    return min(d, n - d)


def antipodal_vertices(n: int, v: int) -> tuple[int, ...]:
    """The one (even n) or two (odd n) vertices farthest from v."""
    h = n // 2
    if n % 2 == 0:
        return ((v + h) % n,)
    return tuple(sorted(((v + h) % n, (v + h + 1) % n)))


def hide_escape_start(cycle: CycleSpec, cop_start: int) -> int:
    """Robber's reply start: the lowest-numbered antipodal vertex."""
    return antipodal_vertices(cycle.length, cop_start)[0]


class HideEscapePolicy:
    """Robber policy for threshold-length cycles: mirror or flee.

    Hide: after seeing the cop's move, land on (or edge toward) a vertex
    antipodal to the cop's new position. Escape: when antipodality cannot
    be restored, run in the rotational direction of the cop's last
    advancing move whenever the forward edge is present, returning to Hide
    as soon as an antipodal vertex is reachable again.

    Only guaranteed on cycles at or above the robber-win threshold
    2 * l * LCM; shorter cycles are rejected.
    """

    def __init__(self, cycle: CycleSpec):
        summ = cycle.summary()
        if cycle.length < summ.cycle_threshold:
            raise StrategyError(
                f"cycle length {cycle.length} below the evasion threshold "
                f"{summ.cycle_threshold} (= 2*{summ.bound_multiplier}*{summ.lcm})"
            )
        self.n = cycle.length
        self.mode = "hide"
        self.direction = 1  # frozen for the duration of an escape period
        self.last_advance = 1
        self.last_cop: int | None = None

    def reset(self, g: EdgePeriodicGraph, cop_start: int, robber_start: int) -> None:
        self.mode = "hide"
        self.direction = 1
        self.last_advance = 1
        self.last_cop = cop_start

    def snapshot(self) -> object:
        return (self.mode, self.direction, self.last_advance, self.last_cop)

    def __call__(self, g: EdgePeriodicGraph, p: Position) -> int:
        n = self.n
        c, r = p.cop, p.robber
        if self.last_cop is not None and c != self.last_cop:
            self.last_advance = 1 if (self.last_cop + 1) % n == c else -1
        self.last_cop = c
        dests = legal_moves(g, p)
        targets = antipodal_vertices(n, c)
        reachable = sorted(d for d in dests if d in targets)
        if reachable:
            self.mode = "hide"
            return reachable[0]
        if self.mode == "hide":
            # No antipodal landing this turn: edge toward one, but never
            # into the cop's reach (the guarantee never needs such a step).
            def gap(x: int) -> int:
                return min(cycle_distance(n, x, a) for a in targets)

            best = None
            for d in sorted(dests):
                if cycle_distance(n, d, c) < 2:
                    continue
                if gap(d) < gap(r) and (best is None or gap(d) < gap(best)):
                    best = d
            if best is not None:
                return best
            self.mode = "escape"
            self.direction = self.last_advance  # flee the way the cop pushed
        forward = (r + self.direction) % n
        if forward in dests and cycle_distance(n, forward, c) >= min(
            2, cycle_distance(n, r, c)
        ):
            return forward
        return r


def hide_escape_policy(cycle: CycleSpec) -> HideEscapePolicy:
    return HideEscapePolicy(cycle)


@dataclass(frozen=True)
class Strip:
    """One block of the unrolled chase: the edges the pursuer first crosses
    within a window of B time steps, with both walkers' traversal times."""

    index: int
    first_edge: int
    last_edge: int
    cop_first: int
    cop_last: int
    robber_first: int | None
    robber_last: int | None

    @property
    def edge_count(self) -> int:
        return self.last_edge - self.first_edge + 1


@dataclass(frozen=True)
class EscapeAnalysis:
    """Strip decomposition of a one-directional chase on a cycle.

    B is LCM when LCM >= 2 * max length, else 2 * LCM. The evasion
    argument needs, per strip i: the runner clears strip i before the
    pursuer enters it, and the pursuer is still inside strip i when the
    runner has already entered strip i+1.
    """

    B: int
    strips: tuple[Strip, ...]

    def violations(self) -> list[str]:
        out = []
        for s in self.strips:
            if s.edge_count < 2:
                out.append(f"strip {s.index}: only {s.edge_count} edge")
            if s.robber_last is not None and not s.robber_last < s.cop_first:
                out.append(
                    f"strip {s.index}: runner finished at {s.robber_last}, "
                    f"pursuer entered at {s.cop_first}"
                )
        for s, s2 in zip(self.strips, self.strips[1:]):
            if s2.robber_first is not None and not s.cop_last > s2.robber_first:
                out.append(
                    f"strip {s.index}: pursuer left at {s.cop_last}, runner "
                    f"entered strip {s2.index} at {s2.robber_first}"
                )
        return out


def _earliest_walk(
    cycle: CycleSpec, cop_start: int, direction: int, start_pos: int, t0: int, horizon: int
) -> dict[int, int]:
    """First-crossing times of a walker that advances whenever the edge
    ahead on the unrolled path is present; path position j sits at cycle
    vertex cop_start + direction*j."""
    n = cycle.length
    pos = start_pos
    times: dict[int, int] = {}
    for t in range(t0, t0 + horizon):
        v = (cop_start + direction * pos) % n
        edge = v if direction == 1 else (v - 1) % n
        pat = cycle.patterns[edge]
        if pat.mask >> (t % pat.length) & 1:
            times[pos] = t
            pos += 1
    return times


def strip_analysis(
    cycle: CycleSpec,
    cop_start: int,
    direction: int = 1,
    t0: int = 0,
    horizon: int | None = None,
) -> EscapeAnalysis:
    """Decompose a one-directional chase into strips.

    The cycle is unrolled into a path from the pursuer's start; both
    walkers move forward whenever the edge ahead is present. The runner
    starts, at the same time t0, from the first vertex of the second
    strip. Only complete B-step windows within the horizon become strips.
    """
    if direction not in (1, -1):
        raise GraphError("direction must be +1 or -1")
    summ = cycle.summary()
    b = summ.lcm if summ.lcm >= 2 * summ.max_len else 2 * summ.lcm
    if horizon is None:
        horizon = 4 * b
    cop_times = _earliest_walk(cycle, cop_start, direction, 0, t0, horizon)
    num_strips = horizon // b
    # assign each crossed edge to its B-window
    blocks: dict[int, list[tuple[int, int]]] = {}
    for pos, t in cop_times.items():
        i = (t - t0) // b + 1
        blocks.setdefault(i, []).append((pos, t))
    if 2 not in blocks:
        return EscapeAnalysis(b, ())
    robber_start_pos = min(pos for pos, _ in blocks[2])
    robber_times = _earliest_walk(
        cycle, cop_start, direction, robber_start_pos, t0, horizon
    )
    strips = []
    for i in range(1, num_strips + 1):
        entries = sorted(blocks.get(i, ()))
        if not entries:
            continue
        first, last = entries[0][0], entries[-1][0]
        strips.append(
            Strip(
                index=i,
                first_edge=first,
                last_edge=last,
                cop_first=cop_times[first],
                cop_last=cop_times[last],
                robber_first=robber_times.get(first),
                robber_last=robber_times.get(last),
            )
        )
    return EscapeAnalysis(b, tuple(strips))


def _canonical_cycle(patterns: tuple[str, ...]) -> tuple[str, ...]:
    """Least rotation/reflection representative; relabeling a cycle's
    vertices permutes patterns this way and cannot change the verdict."""
    n = len(patterns)
    best = patterns
    rev = patterns[::-1]
    for seq in (patterns, rev):
        for s in range(n):
            cand = seq[s:] + seq[:s]
            if cand < best:
                best = cand
    return best


def verify_cycle_threshold(
    lengths: list[int],
    pattern_pool: list[Pattern],
    mode: str = "exhaustive",
    samples: int = 500,
    seed: int = 0,
    dedupe: bool = True,
    max_states: int = DEFAULT_STATE_BUDGET,
) -> dict:
    """Check that every generated cycle at or above its own robber-win
    threshold really is robber-win.

    Exhaustive mode enumerates every assignment of pool patterns to the
    edges of cycles with the given lengths (memoizing verdicts per
    rotation/reflection class unless ``dedupe`` is off). Sample mode draws
    ``samples`` random cycles sitting exactly at their threshold, using
    pool patterns. Returns a JSON-ready report; a correct solver produces
    an empty counterexample list, and below-threshold cop-win instances
    are reported as evidence the threshold is not slack.
    """
    if mode not in ("exhaustive", "sample"):
        raise GraphError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    verdict_cache: dict[tuple[str, ...], Winner] = {}
    counterexamples = []
    skipped = []
    margins = []
    total = 0
    checked = 0
    robber_wins = 0
    solved = 0
    below = {"count": 0, "cop_win": 0, "robber_win": 0}

    def run_instance(patterns: tuple[Pattern, ...]) -> None:
        nonlocal total, checked, robber_wins, solved
        total += 1
        strings = tuple(p.as_string() for p in patterns)
        key = _canonical_cycle(strings) if dedupe else strings
        verdict = verdict_cache.get(key)
        if verdict is None:
            try:
                verdict = decide(
                    CycleSpec(patterns).to_graph(), max_states=max_states
                ).winner
            except BudgetError as exc:
                skipped.append({"n": len(patterns), "patterns": list(strings), "reason": str(exc)})
                return
            solved += 1
            verdict_cache[key] = verdict
        n = len(patterns)
        plengths = set(len(s) for s in strings)
        lcm = math.lcm(*plengths)
        mult = 1 if lcm >= 2 * max(plengths) else 2
        threshold = 2 * mult * lcm
        if n >= threshold:
            checked += 1
            margins.append(n - threshold)
            if verdict is Winner.ROBBER:
                robber_wins += 1
            else:
                counterexamples.append(
                    {"n": n, "patterns": list(strings), "lcm": lcm, "threshold": threshold}
                )
        else:
            below["count"] += 1
            below["cop_win" if verdict is Winner.COP else "robber_win"] += 1

    if mode == "exhaustive":
        for n in sorted(lengths):
            for assignment in product(pattern_pool, repeat=n):
                run_instance(assignment)
    else:
        by_length: dict[int, list[Pattern]] = {}
        for p in pattern_pool:
            by_length.setdefault(p.length, []).append(p)
        all_lengths = sorted(by_length)
        for _ in range(samples):
            count = rng.randint(1, len(all_lengths))
            chosen = sorted(rng.sample(all_lengths, count))
            lcm = math.lcm(*chosen)
            mult = 1 if lcm >= 2 * max(chosen) else 2
            n = 2 * mult * lcm  # exactly at the threshold
            # one pattern of each chosen length, the rest drawn freely
            picks = [rng.choice(by_length[l]) for l in chosen]
            picks += [
                rng.choice(by_length[rng.choice(chosen)]) for _ in range(n - count)
            ]
            rng.shuffle(picks)
            run_instance(tuple(picks))

    counterexamples.sort(key=lambda c: (c["n"], c["patterns"]))
    skipped.sort(key=lambda c: (c["n"], c["patterns"]))
    margin_stats = None
    if margins:
        margin_stats = {
            "min": min(margins),
            "max": max(margins),
            "mean": sum(margins) / len(margins),
        }
    return {
        "mode": mode,
        "lengths": sorted(lengths) if mode == "exhaustive" else None,
        "pool": [p.as_string() for p in pattern_pool],
        "instances": total,
        "solved": solved,
        "checked": checked,
        "robber_win": robber_wins,
        "counterexamples": counterexamples,
        "below_threshold": below,
        "skipped": skipped,
        "margin": margin_stats,
    }
