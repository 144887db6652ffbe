"""Edge-periodic graphs: patterns, validation, period arithmetic, .epg I/O.

An edge-periodic graph is a simple undirected graph in which every edge
carries a periodic bit pattern; the edge exists at time step t exactly when
bit ``t mod len(pattern)`` is set. A pattern of "1" encodes a static,
always-present edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Mapping

from .errors import GraphError, ParseError

# Patterns longer than this are rejected unless the caller raises the cap;
# a handful of coprime lengths past 64 already drives LCM(L) astronomical.
DEFAULT_MAX_PATTERN_LENGTH = 64

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    """Canonical (min, max) form of an undirected edge."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Pattern:
    """Periodic presence pattern, packed little-endian into an int mask.

    Bit i of ``mask`` is the edge's status at time step i within each
    period of ``length`` steps. At least one bit must be set: every edge
    is present at least once per period.
    """

    mask: int
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise GraphError("pattern length must be >= 1")
        if not 0 < self.mask < (1 << self.length):
            raise GraphError("pattern needs at least one 1-bit within its length")

    @classmethod
    def from_string(cls, bits: str) -> "Pattern":
        if not bits or any(c not in "01" for c in bits):
            raise GraphError(f"pattern must be a nonempty string over 0/1, got {bits!r}")
        mask = 0
        for i, c in enumerate(bits):
            if c == "1":
                mask |= 1 << i
        return cls(mask, len(bits))

    def bit(self, i: int) -> bool:
        """Presence at phase ``i`` (callers reduce time mod length)."""
        return bool((self.mask >> (i % self.length)) & 1)

    def as_string(self) -> str:
        return "".join("1" if self.mask >> i & 1 else "0" for i in range(self.length))

    def __str__(self) -> str:
        return self.as_string()


ALWAYS = Pattern(1, 1)  # canonical static edge


@dataclass(frozen=True)
class PeriodSummary:
    """Distinct pattern lengths with their LCM and the cycle-bound multiplier.

    ``bound_multiplier`` is 1 when lcm >= 2 * max_len and 2 otherwise; the
    robber-win length threshold for cycles is ``2 * bound_multiplier * lcm``.
    """

    lengths: frozenset[int]
    lcm: int
    max_len: int
    bound_multiplier: int

    @property
    def cycle_threshold(self) -> int:
        return 2 * self.bound_multiplier * self.lcm


class EdgePeriodicGraph:
    """Simple undirected graph over vertices 0..n-1 with a pattern per edge.

    Immutable after construction; safe to share across threads.
    """

    def __init__(
        self,
        vertex_count: int,
        patterns: Mapping[Edge, Pattern] | Iterable[tuple[Edge, Pattern]],
        max_pattern_length: int | None = DEFAULT_MAX_PATTERN_LENGTH,
    ):
        if vertex_count < 1:
            raise GraphError("vertex_count must be >= 1")
        items = patterns.items() if isinstance(patterns, Mapping) else patterns
        self.vertex_count = vertex_count
        self.pattern_of: dict[Edge, Pattern] = {}
        for (u, v), pat in items:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphError(f"edge ({u},{v}) references a vertex outside 0..{vertex_count - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u} (waiting already covers it)")
            key = edge_key(u, v)
            if key in self.pattern_of:
                raise GraphError(f"duplicate edge {key}")
            if max_pattern_length is not None and pat.length > max_pattern_length:
                raise GraphError(
                    f"pattern on edge {key} has length {pat.length} > cap "
                    f"{max_pattern_length}; pass max_pattern_length=None to override"
                )
            self.pattern_of[key] = pat
        adj: list[list[int]] = [[] for _ in range(vertex_count)]
        for u, v in self.pattern_of:
            adj[u].append(v)
            adj[v].append(u)
        self._adjacency = tuple(tuple(sorted(nbrs)) for nbrs in adj)

    @property
    def edges(self) -> list[Edge]:
        """Edges in canonical lexicographic order."""
        return sorted(self.pattern_of)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adjacency[v]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EdgePeriodicGraph)
            and self.vertex_count == other.vertex_count
            and self.pattern_of == other.pattern_of
        )

    def __repr__(self) -> str:
        return f"EdgePeriodicGraph(n={self.vertex_count}, m={len(self.pattern_of)})"


def edge_present(g: EdgePeriodicGraph, e: Edge, t: int) -> bool:
    """Whether edge ``e`` exists at time step ``t`` (t >= 0)."""
    key = edge_key(*e)
    pat = g.pattern_of.get(key)
    if pat is None:
        raise GraphError(f"unknown edge {key}")
    if t < 0:
        raise GraphError("time step must be >= 0")
    return pat.bit(t % pat.length)


def period_summary(g: EdgePeriodicGraph) -> PeriodSummary:
    """Distinct pattern lengths, their LCM, and the bound multiplier.

    An edgeless graph has no pattern lengths; it summarizes as the static
    case (lcm 1, max_len 1).
    """
    lengths = frozenset(p.length for p in g.pattern_of.values())
    lcm = math.lcm(*lengths) if lengths else 1
    max_len = max(lengths) if lengths else 1
    multiplier = 1 if lcm >= 2 * max_len else 2
    return PeriodSummary(lengths, lcm, max_len, multiplier)


def parse_epg(
    text: str | IO[str],
    max_pattern_length: int | None = DEFAULT_MAX_PATTERN_LENGTH,
) -> EdgePeriodicGraph:
    """Parse the .epg line format.

    Grammar (UTF-8, line oriented): ``#`` starts a comment, blank lines are
    skipped, the first effective line is ``n <vertex-count>``, then one
    ``e <u> <v> <bits>`` line per edge.
    """
    lines: Iterator[tuple[int, str]]
    if isinstance(text, str):
        lines = ((i + 1, ln) for i, ln in enumerate(text.splitlines()))
    else:
        lines = ((i + 1, ln.rstrip("\n")) for i, ln in enumerate(text))

    n: int | None = None
    entries: list[tuple[Edge, Pattern]] = []
    seen: set[Edge] = set()
    for line_no, raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        tag = fields[0]
        if tag == "n":
            if n is not None:
                raise ParseError(line_no, "duplicate 'n' line")
            if len(fields) != 2:
                raise ParseError(line_no, "expected 'n <vertex-count>'")
            try:
                n = int(fields[1])
            except ValueError:
                raise ParseError(line_no, f"vertex count is not an integer: {fields[1]!r}") from None
            if n < 1:
                raise ParseError(line_no, f"vertex count must be >= 1, got {n}")
        elif tag == "e":
            if n is None:
                raise ParseError(line_no, "'e' line before the 'n' line")
            if len(fields) != 4:
                raise ParseError(line_no, "expected 'e <u> <v> <bits>'")
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError(line_no, f"vertex ids are not integers: {fields[1]!r} {fields[2]!r}") from None
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(line_no, f"vertex out of range 0..{n - 1} on edge ({u},{v})")
            if u == v:
                raise ParseError(line_no, f"self-loop at vertex {u}")
            key = edge_key(u, v)
            if key in seen:
                raise ParseError(line_no, f"duplicate edge {key}")
            seen.add(key)
            try:
                pat = Pattern.from_string(fields[3])
            except GraphError as exc:
                raise ParseError(line_no, str(exc)) from None
            if max_pattern_length is not None and pat.length > max_pattern_length:
                raise ParseError(
                    line_no,
                    f"pattern length {pat.length} exceeds cap {max_pattern_length}",
                )
            entries.append((key, pat))
        else:
            raise ParseError(line_no, f"unknown directive {tag!r}")
    if n is None:
        raise ParseError(0, "missing 'n' line")
    return EdgePeriodicGraph(n, entries, max_pattern_length=max_pattern_length)


def serialize_epg(g: EdgePeriodicGraph) -> str:
    """Deterministic text form; parse_epg(serialize_epg(g)) == g."""
    out = [f"n {g.vertex_count}"]
    for u, v in g.edges:
        out.append(f"e {u} {v} {g.pattern_of[(u, v)].as_string()}")
    return "\n".join(out) + "\n"
