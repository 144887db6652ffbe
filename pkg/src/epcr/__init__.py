"""Cops-and-robbers on edge-periodic graphs: solver, strategies, playground."""

from .attractor import (
    AttractorResult,
    KCopDecision,
    SolveResult,
    SolveStats,
    Winner,
    compute_attractor,
    cop_strategy,
    decide,
    decide_k_cops,
    naive_attractor_oracle,
    robber_closure_states,
    robber_strategy,
)
from .cycles import (
    CycleSpec,
    EscapeAnalysis,
    HideEscapePolicy,
    Strip,
    antipodal_vertices,
    copwin_cycle_cop_start,
    cycle_distance,
    gen_copwin_15lcm_cycle,
    gen_copwin_3lcm_cycle,
    hide_escape_policy,
    hide_escape_start,
    random_cycle,
    strip_analysis,
    verify_cycle_threshold,
)
from .errors import (
    BudgetError,
    EpcrError,
    GraphError,
    IllegalMoveError,
    ParseError,
    StrategyError,
)
from .gamegraph import (
    DEFAULT_STATE_BUDGET,
    GameGraph,
    GameMeta,
    GameState,
    build_game_graph,
    build_k_cop_game_graph,
    state_index,
    state_of,
)
from .graph import (
    ALWAYS,
    DEFAULT_MAX_PATTERN_LENGTH,
    EdgePeriodicGraph,
    Pattern,
    PeriodSummary,
    edge_key,
    edge_present,
    parse_epg,
    period_summary,
    serialize_epg,
)
from .policies import (
    engine_cop_start,
    engine_robber_start,
    optimal_cop_policy,
    optimal_robber_policy,
    random_policy,
    rank_maximizing_robber_policy,
    stay_policy,
)
from .simulate import (
    Mover,
    Outcome,
    Playout,
    Position,
    apply_move,
    legal_moves,
    playout,
)

__version__ = "0.1.0"
