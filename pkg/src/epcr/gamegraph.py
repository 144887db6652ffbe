"""Finite directed game graph for the pursuit game on an edge-periodic graph.

Positions repeat with period LCM(L), so the infinite-lifetime game collapses
onto states (cop vertices, robber vertex, mover, time mod LCM). Cop moves
keep the time step; the robber's move ends the step and advances time. A
move across an edge is generated only when that edge is present at the
state's time step, and waiting is always available, so every state has at
least one successor and out-degree at most n.

States are packed into a dense mixed-radix index (mover, time, cop
vertices, robber vertex) and adjacency lives in flat offset/target arrays;
predecessor lists are produced in the same pass (presence of {u,v} is
symmetric, so reverse neighborhoods reuse the destination table).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import IO

from .errors import BudgetError, GraphError
from .graph import EdgePeriodicGraph, PeriodSummary, period_summary

# 2*LCM*n^2 (or (k+1)*LCM*n^(k+1)) must stay below this unless raised.
DEFAULT_STATE_BUDGET = 2_000_000

PLAYER_COP = 0
PLAYER_ROBBER = 1


@dataclass(frozen=True)
class GameMeta:
    """Dimensions of a game graph: period data, vertex count, cop count."""

    period: PeriodSummary
    n: int
    k: int

    @property
    def lcm(self) -> int:
        return self.period.lcm

    @property
    def num_states(self) -> int:
        return (self.k + 1) * self.lcm * self.n ** (self.k + 1)


@dataclass(frozen=True)
class GameState:
    """One game-graph state.

    ``mover`` is the index of the cop about to move (0..k-1), or k for the
    robber; for the single-cop game that is 0 = cop, 1 = robber. ``time``
    is already reduced mod LCM.
    """

    cops: tuple[int, ...]
    robber: int
    mover: int
    time: int

    @property
    def is_robber_turn(self) -> bool:
        return self.mover == len(self.cops)

    def mover_label(self) -> str:
        if self.is_robber_turn:
            return "R"
        return "C" if len(self.cops) == 1 else f"C{self.mover}"


def state_index(s: GameState, meta: GameMeta) -> int:
    """Bijection from states onto [0, (k+1)*LCM*n^(k+1))."""
    n, k, lcm = meta.n, meta.k, meta.lcm
    if len(s.cops) != k:
        raise GraphError(f"expected {k} cop vertices, got {len(s.cops)}")
    if not 0 <= s.mover <= k:
        raise GraphError(f"mover {s.mover} out of range 0..{k}")
    if not 0 <= s.time < lcm:
        raise GraphError(f"time {s.time} out of range 0..{lcm - 1}")
    if not 0 <= s.robber < n or any(not 0 <= c < n for c in s.cops):
        raise GraphError("vertex id out of range")
    code = 0
    for c in s.cops:
        code = code * n + c
    return ((s.mover * lcm + s.time) * n**k + code) * n + s.robber


def state_of(index: int, meta: GameMeta) -> GameState:
    """Inverse of :func:`state_index`."""
    n, k, lcm = meta.n, meta.k, meta.lcm
    if not 0 <= index < meta.num_states:
        raise GraphError(f"state index {index} out of range 0..{meta.num_states - 1}")
    index, robber = divmod(index, n)
    index, code = divmod(index, n**k)
    mover_time, time = divmod(index, lcm)
    cops = [0] * k
    for i in range(k - 1, -1, -1):
        code, cops[i] = divmod(code, n)
    return GameState(tuple(cops), robber, mover_time, time)


class GameGraph:
    """Directed two-player reachability arena in CSR form.

    ``owner[i]`` is 0 for cop-layer states and 1 for robber states;
    ``final_states`` are the states where some cop shares the robber's
    vertex. Immutable once built.
    """

    def __init__(
        self,
        meta: GameMeta,
        succ_off: list[int],
        succ: list[int],
        pred_off: list[int],
        pred: list[int],
        owner: bytearray,
        final_states: list[int],
    ):
        self.meta = meta
        self.succ_off = succ_off
        self.succ = succ
        self.pred_off = pred_off
        self.pred = pred
        self.owner = owner
        self.final_states = final_states

    @property
    def num_states(self) -> int:
        return len(self.owner)

    @property
    def edge_count(self) -> int:
        return len(self.succ)

    def successors(self, i: int) -> list[int]:
        return self.succ[self.succ_off[i] : self.succ_off[i + 1]]

    def predecessors(self, i: int) -> list[int]:
        return self.pred[self.pred_off[i] : self.pred_off[i + 1]]

    def out_degree(self, i: int) -> int:
        return self.succ_off[i + 1] - self.succ_off[i]

    def state_of(self, i: int) -> GameState:
        return state_of(i, self.meta)

    def index_of(self, s: GameState) -> int:
        return state_index(s, self.meta)

    def start_index(self, cops: tuple[int, ...], robber: int) -> int:
        """Index of (cops, robber, first cop to move, time 0)."""
        n = self.meta.n
        code = 0
        for c in cops:
            code = code * n + c
        return code * n + robber

    def dump(self, out: IO[str] = sys.stdout) -> None:
        """Line-oriented debug dump: state table, then one line per edge."""
        out.write(f"states {self.num_states}\n")
        for i in range(self.num_states):
            s = self.state_of(i)
            cops = ",".join(str(c) for c in s.cops)
            out.write(f"{i} {cops} {s.robber} {s.mover_label()} {s.time}\n")
        out.write(f"edges {self.edge_count}\n")
        for i in range(self.num_states):
            for j in self.successors(i):
                out.write(f"{i} {j}\n")


def destination_table(g: EdgePeriodicGraph, lcm: int) -> list[list[tuple[int, ...]]]:
    """dests[t][v]: sorted move destinations from v at time t (v included)."""
    n = g.vertex_count
    items = list(g.pattern_of.items())
    table = []
    for t in range(lcm):
        row: list[list[int]] = [[v] for v in range(n)]
        for (u, v), pat in items:
            if pat.mask >> (t % pat.length) & 1:
                row[u].append(v)
                row[v].append(u)
        table.append([tuple(sorted(ds)) for ds in row])
    return table


def build_game_graph(
    g: EdgePeriodicGraph, max_states: int = DEFAULT_STATE_BUDGET
) -> GameGraph:
    """Construct the single-cop game graph; |V'| = 2 * LCM * n^2 exactly."""
    summ = period_summary(g)
    n = g.vertex_count
    lcm = summ.lcm
    num_states = 2 * lcm * n * n
    if num_states > max_states:
        raise BudgetError(
            f"game graph would have {num_states} states (2*{lcm}*{n}^2), "
            f"over the budget of {max_states}"
        )
    dests = destination_table(g, lcm)
    nn = n * n
    succ_off = [0] * (num_states + 1)
    pred_off = [0] * (num_states + 1)
    succ: list[int] = []
    pred: list[int] = []
    final: list[int] = []
    idx = 0
    for mover in (PLAYER_COP, PLAYER_ROBBER):
        for t in range(lcm):
            dt = dests[t]
            if mover == PLAYER_COP:
                succ_base = (lcm + t) * nn  # robber states, same t
                tp = (t - 1) % lcm
                pred_base = (lcm + tp) * nn  # robber states one step back
                dtp = dests[tp]
            else:
                succ_base = ((t + 1) % lcm) * nn  # cop states, next t
                pred_base = t * nn  # cop states, same t
            for c in range(n):
                cn = c * n
                for r in range(n):
                    if c == r:
                        final.append(idx)
                    if mover == PLAYER_COP:
                        succ.extend(succ_base + d * n + r for d in dt[c])
                        pred.extend(pred_base + cn + d for d in dtp[r])
                    else:
                        succ.extend(succ_base + cn + d for d in dt[r])
                        pred.extend(pred_base + d * n + r for d in dt[c])
                    idx += 1
                    succ_off[idx] = len(succ)
                    pred_off[idx] = len(pred)
    owner = bytearray(num_states)
    half = lcm * nn
    for i in range(half, num_states):
        owner[i] = PLAYER_ROBBER
    return GameGraph(GameMeta(summ, n, 1), succ_off, succ, pred_off, pred, owner, final)


def build_k_cop_game_graph(
    g: EdgePeriodicGraph, k: int, max_states: int = DEFAULT_STATE_BUDGET
) -> GameGraph:
    """Serialized k-cop game graph: layers Cop(0)..Cop(k-1), then the robber.

    Cops move one at a time in fixed index order within a time step; the
    robber's layer advances time. Cops may share a vertex (states hold an
    ordered tuple). For k = 1 this is the same arena as
    :func:`build_game_graph`, built by an independent code path.
    """
    if k < 1:
        raise GraphError("need at least one cop")
    summ = period_summary(g)
    n = g.vertex_count
    lcm = summ.lcm
    nk = n**k
    num_states = (k + 1) * lcm * nk * n
    if num_states > max_states:
        raise BudgetError(
            f"game graph would have {num_states} states (({k}+1)*{lcm}*{n}^{k + 1}), "
            f"over the budget of {max_states}"
        )
    dests = destination_table(g, lcm)
    # cop digit values per code, most significant first
    digits: list[tuple[int, ...]] = []
    for code in range(nk):
        ds = [0] * k
        rem = code
        for i in range(k - 1, -1, -1):
            rem, ds[i] = divmod(rem, n)
        digits.append(tuple(ds))
    succ_off = [0] * (num_states + 1)
    pred_off = [0] * (num_states + 1)
    succ: list[int] = []
    pred: list[int] = []
    final: list[int] = []
    owner = bytearray(num_states)
    layer_size = lcm * nk * n
    idx = 0
    for mover in range(k + 1):
        for t in range(lcm):
            dt = dests[t]
            tp = (t - 1) % lcm
            for code in range(nk):
                cops = digits[code]
                if mover < k:
                    place = n ** (k - 1 - mover)  # weight of the moving cop's digit
                    cm = cops[mover]
                    succ_layer = (mover + 1) * layer_size + t * nk * n
                    succ_targets = [
                        succ_layer + (code + (d - cm) * place) * n for d in dt[cm]
                    ]
                if mover > 0:
                    place_p = n ** (k - mover)
                    cp = cops[mover - 1]
                    pred_layer = (mover - 1) * layer_size + t * nk * n
                    pred_codes = [
                        pred_layer + (code + (d - cp) * place_p) * n for d in dt[cp]
                    ]
                for r in range(n):
                    if r in cops:
                        final.append(idx)
                    if mover < k:
                        succ.extend(base + r for base in succ_targets)
                    else:
                        owner[idx] = PLAYER_ROBBER
                        succ_base = (((t + 1) % lcm) * nk + code) * n
                        succ.extend(succ_base + d for d in dt[r])
                    if mover > 0:
                        pred.extend(base + r for base in pred_codes)
                    else:
                        pred_base = k * layer_size + (tp * nk + code) * n
                        pred.extend(pred_base + d for d in dests[tp][r])
                    idx += 1
                    succ_off[idx] = len(succ)
                    pred_off[idx] = len(pred)
    return GameGraph(GameMeta(summ, n, k), succ_off, succ, pred_off, pred, owner, final)
