"""Rules engine: legal moves, position stepping, and strategy playouts.

Positions carry unreduced wall-clock time; reduction mod LCM happens only
where positions meet the game graph. The cop moves first in every time
step, the robber's move ends the step, and capture is checked after both
half-moves.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Protocol, runtime_checkable

from .errors import IllegalMoveError
from .graph import EdgePeriodicGraph, edge_key, period_summary


class Mover(Enum):
    COP = "cop"
    ROBBER = "robber"


class Outcome(Enum):
    CAPTURED = "captured"
    EVASION_CERTIFIED = "evasion-certified"
    CUTOFF = "cutoff"


@dataclass(frozen=True)
class Position:
    cop: int
    robber: int
    mover: Mover
    time: int

    @property
    def mover_vertex(self) -> int:
        return self.cop if self.mover is Mover.COP else self.robber

    @property
    def is_capture(self) -> bool:
        return self.cop == self.robber

    def to_json_dict(self) -> dict:
        return {
            "cop": self.cop,
            "robber": self.robber,
            "mover": self.mover.value,
            "time": self.time,
        }


@dataclass(frozen=True)
class Playout:
    """A recorded match: every position visited plus how it ended.

    ``outcome_step`` is the time step of the capture, the step at which a
    repeated state certified evasion, or the cutoff step count.
    """

    positions: tuple[Position, ...]
    outcome: Outcome
    outcome_step: int

    def to_json_dict(self) -> dict:
        return {
            "positions": [p.to_json_dict() for p in self.positions],
            "outcome": self.outcome.value,
            "step": self.outcome_step,
        }


@runtime_checkable
class StatefulPolicy(Protocol):
    """Optional protocol for policies with internal state.

    ``reset`` is called once before a playout; ``snapshot`` must return a
    hashable digest of the internal state so repeated-state detection stays
    sound for deterministic policies.
    """

    def __call__(self, g: EdgePeriodicGraph, p: Position) -> int: ...

    def reset(self, g: EdgePeriodicGraph, cop_start: int, robber_start: int) -> None: ...

    def snapshot(self) -> object: ...


Policy = Callable[[EdgePeriodicGraph, Position], int]


def legal_moves(g: EdgePeriodicGraph, p: Position) -> set[int]:
    """Destinations for the player to move: stay put, or cross any edge
    present at the position's time step."""
    v = p.mover_vertex
    moves = {v}
    for u in g.neighbors(v):
        pat = g.pattern_of[edge_key(v, u)]
        if pat.mask >> (p.time % pat.length) & 1:
            moves.add(u)
    return moves


def apply_move(g: EdgePeriodicGraph, p: Position, dest: int) -> Position:
    """Step the position; the robber's move advances the clock."""
    v = p.mover_vertex
    if dest != v:
        if not 0 <= dest < g.vertex_count:
            raise IllegalMoveError(
                f"destination {dest} outside 0..{g.vertex_count - 1}",
                condition="out-of-range",
            )
        key = edge_key(v, dest)
        pat = g.pattern_of.get(key)
        if pat is None:
            raise IllegalMoveError(
                f"no edge {{{key[0]},{key[1]}}} in the graph", condition="not-adjacent"
            )
        if not pat.bit(p.time % pat.length):
            raise IllegalMoveError(
                f"edge {{{key[0]},{key[1]}}} is absent at time step {p.time} "
                f"(pattern {pat.as_string()})",
                condition="edge-absent",
            )
    if p.mover is Mover.COP:
        return Position(dest, p.robber, Mover.ROBBER, p.time)
    return Position(p.cop, dest, Mover.COP, p.time + 1)


def _snapshot(policy: Policy) -> object:
    snap = getattr(policy, "snapshot", None)
    return snap() if callable(snap) else None


def playout(
    g: EdgePeriodicGraph,
    cop_policy: Policy,
    robber_policy: Policy,
    cop_start: int,
    robber_start: int,
    max_steps: int | None = None,
    certify_evasion: bool = False,
) -> Playout:
    """Alternate the two policies from time step 0 until the game resolves.

    Stops at capture or after ``max_steps`` time steps (default four times
    the game-graph state count). With ``certify_evasion`` (callers set it
    when both policies are deterministic), a repeat of the reduced state
    plus policy snapshots proves an infinite loop, so the playout ends as
    certified evasion.
    """
    lcm = period_summary(g).lcm
    if max_steps is None:
        max_steps = 8 * lcm * g.vertex_count * g.vertex_count
    if max_steps < 1:
        raise IllegalMoveError("max_steps must be >= 1", condition="bad-arguments")
    for policy in (cop_policy, robber_policy):
        reset = getattr(policy, "reset", None)
        if callable(reset):
            reset(g, cop_start, robber_start)
    p = Position(cop_start, robber_start, Mover.COP, 0)
    positions = [p]
    if p.is_capture:
        return Playout(tuple(positions), Outcome.CAPTURED, 0)
    seen: set = set()
    while True:
        if certify_evasion:
            key = (
                p.cop,
                p.robber,
                p.mover,
                p.time % lcm,
                _snapshot(cop_policy),
                _snapshot(robber_policy),
            )
            if key in seen:
                return Playout(tuple(positions), Outcome.EVASION_CERTIFIED, p.time)
            seen.add(key)
        if p.time >= max_steps:
            return Playout(tuple(positions), Outcome.CUTOFF, p.time)
        name, policy = (
            ("cop", cop_policy) if p.mover is Mover.COP else ("robber", robber_policy)
        )
        dest = policy(g, p)
        try:
            nxt = apply_move(g, p, dest)
        except IllegalMoveError as exc:
            raise IllegalMoveError(
                f"{name} policy returned an illegal move: {exc}",
                condition=exc.condition,
            ) from exc
        positions.append(nxt)
        if nxt.is_capture:
            return Playout(tuple(positions), Outcome.CAPTURED, p.time)
        p = nxt
