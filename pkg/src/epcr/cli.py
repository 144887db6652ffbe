"""Command-line surface: solve, generate, simulate, verify-bounds, serve.

JSON goes to stdout, human-readable notes to stderr. ``solve`` exits 0 for
a cop win, 1 for a robber win, 2 on any error, so scripts can branch on
the verdict directly.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .attractor import Winner, decide
from .cycles import (
    CycleSpec,
    gen_copwin_15lcm_cycle,
    gen_copwin_3lcm_cycle,
    hide_escape_policy,
    hide_escape_start,
    random_cycle,
    verify_cycle_threshold,
)
from .errors import EpcrError
from .gamegraph import DEFAULT_STATE_BUDGET
from .graph import Pattern, edge_key, parse_epg, serialize_epg
from .policies import (
    engine_cop_start,
    engine_robber_start,
    optimal_cop_policy,
    optimal_robber_policy,
    random_policy,
    stay_policy,
)
from .simulate import playout

EXIT_COP = 0
EXIT_ROBBER = 1
EXIT_ERROR = 2


def _read_graph(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_epg(fh)


def cmd_solve(args) -> int:
    g = _read_graph(args.input)
    res = decide(g, max_states=args.budget)
    doc = res.to_json_dict(
        include_strategy=args.with_strategy, include_timings=not args.no_timings
    )
    json.dump(doc, sys.stdout, indent=2)
    print()
    print(f"{args.input}: {res.winner.value} wins", file=sys.stderr)
    return EXIT_COP if res.winner is Winner.COP else EXIT_ROBBER


def cmd_generate(args) -> int:
    if args.kind == "copwin-3lcm":
        spec = gen_copwin_3lcm_cycle(args.M)
    elif args.kind == "copwin-15lcm":
        spec = gen_copwin_15lcm_cycle(args.M)
    else:
        spec = random_cycle(args.n, args.max_len, args.seed)
    sys.stdout.write(serialize_epg(spec.to_graph()))
    return 0


def _pick_policies(args, res, spec: CycleSpec | None):
    deterministic = True

    def build(name: str, role: str):
        nonlocal deterministic
        if name == "optimal":
            return optimal_cop_policy(res) if role == "cop" else optimal_robber_policy(res)
        if name == "stay":
            return stay_policy
        if name == "random":
            deterministic = False
            return random_policy(args.seed)
        if name == "hide-escape":
            if role != "robber":
                raise EpcrError("hide-escape is a robber policy")
            if spec is None:
                raise EpcrError("hide-escape needs a cycle input graph")
            return hide_escape_policy(spec)
        raise EpcrError(f"unknown policy {name!r}")

    cop = build(args.cop, "cop")
    robber = build(args.robber, "robber")
    return cop, robber, deterministic


def _as_cycle(g) -> CycleSpec | None:
    n = g.vertex_count
    keys = [edge_key(i, (i + 1) % n) for i in range(n)]
    if n < 3 or set(g.pattern_of) != set(keys):
        return None
    return CycleSpec(tuple(g.pattern_of[k] for k in keys))


def cmd_simulate(args) -> int:
    g = _read_graph(args.input)
    res = decide(g, max_states=args.budget)
    spec = _as_cycle(g)
    cop_policy, robber_policy, deterministic = _pick_policies(args, res, spec)
    cop_start = args.cop_start if args.cop_start is not None else engine_cop_start(res)
    if args.robber_start is not None:
        robber_start = args.robber_start
    elif args.robber == "hide-escape":
        robber_start = hide_escape_start(spec, cop_start)
    else:
        robber_start = engine_robber_start(res, cop_start)
    po = playout(
        g,
        cop_policy,
        robber_policy,
        cop_start,
        robber_start,
        max_steps=args.max_steps,
        certify_evasion=deterministic,
    )
    json.dump(po.to_json_dict(), sys.stdout, indent=2)
    print()
    print(f"outcome: {po.outcome.value} (step {po.outcome_step})", file=sys.stderr)
    return 0


def _parse_lengths(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in text.split(",") if part]


def _parse_pool(args) -> list[Pattern]:
    if args.patterns:
        return [Pattern.from_string(s) for s in args.patterns.split(",") if s]
    pool = []
    for length in range(1, args.max_len + 1):
        pool.extend(Pattern(mask, length) for mask in range(1, 1 << length))
    return pool


def cmd_verify_bounds(args) -> int:
    pool = _parse_pool(args)
    if args.exhaustive:
        report = verify_cycle_threshold(
            _parse_lengths(args.n),
            pool,
            mode="exhaustive",
            dedupe=not args.no_dedupe,
            max_states=args.budget,
        )
    else:
        report = verify_cycle_threshold(
            [],
            pool,
            mode="sample",
            samples=args.sample,
            seed=args.seed,
            dedupe=not args.no_dedupe,
            max_states=args.budget,
        )
    json.dump(report, sys.stdout, indent=2)
    print()
    bad = len(report["counterexamples"])
    print(
        f"checked {report['checked']} threshold instances of {report['instances']}: "
        f"{bad} counterexamples",
        file=sys.stderr,
    )
    return 0 if bad == 0 else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    app = create_app(
        static_dir=args.static, session_ttl=args.session_ttl, max_states=args.budget
    )
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except SystemExit as exc:  # uvicorn raises on bind failure
        if exc.code not in (0, None):
            print(f"server failed to start on port {args.port}", file=sys.stderr)
            return EXIT_ERROR
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epcr",
        description="Cops-and-robbers on edge-periodic graphs: decide the "
        "winner, synthesize strategies, generate benchmark cycles, and play.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide cop-win vs robber-win for an .epg file")
    p.add_argument("input")
    p.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET)
    p.add_argument("--with-strategy", action="store_true", help="include the strategy tables")
    p.add_argument("--no-timings", action="store_true", help="byte-stable output")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("generate", help="emit a benchmark cycle as .epg")
    p.add_argument("kind", choices=["copwin-3lcm", "copwin-15lcm", "random-cycle"])
    p.add_argument("--M", type=int, default=2, help="period of the rare edges")
    p.add_argument("--n", type=int, default=8, help="random cycle length")
    p.add_argument("--max-len", type=int, default=3, help="random pattern length cap")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("simulate", help="play two policies against each other")
    p.add_argument("input")
    p.add_argument("--cop", default="optimal", choices=["optimal", "random", "stay"])
    p.add_argument(
        "--robber",
        default="optimal",
        choices=["optimal", "random", "stay", "hide-escape"],
    )
    p.add_argument("--cop-start", type=int, default=None)
    p.add_argument("--robber-start", type=int, default=None)
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET)
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser(
        "verify-bounds",
        help="check that threshold-length cycles are robber-win",
    )
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--sample", type=int, metavar="K")
    p.add_argument("--n", default="8..12", help="cycle lengths, e.g. 8..12 or 8,10")
    p.add_argument("--patterns", default=None, help="comma-separated pattern pool")
    p.add_argument("--max-len", type=int, default=3, help="pool = all patterns up to this length")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-dedupe", action="store_true", help="solve every rotation separately")
    p.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET)
    p.set_defaults(fn=cmd_verify_bounds)

    p = sub.add_parser("serve", help="run the HTTP playground API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--static", default=None, help="directory of playground assets")
    p.add_argument("--session-ttl", type=int, default=1800)
    p.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET)
    p.set_defaults(fn=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except EpcrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
