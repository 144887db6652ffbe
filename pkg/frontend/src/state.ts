// Pure view-state bookkeeping. The board is a projection of the latest
// ServerState; hints bound which vertices are clickable; the move log
// records every server response so a finished game can be replayed.

import type { Hint, MoveResponse, ServerState } from './types.js';

export interface LogEntry {
    kind: 'start' | 'move';
    vertex: number;
    state: ServerState;            // after the human action
    engineReply: ServerState | null;
}

export interface ViewState {
    session: ServerState | null;
    hints: Map<number, boolean>;
    log: LogEntry[];
    banner: string | null;
    busy: boolean;
}

export function initialViewState(): ViewState {
    return { session: null, hints: new Map(), log: [], banner: null, busy: false };
}

export function withSession(view: ViewState, state: ServerState): ViewState {
    return { ...view, session: state, hints: new Map(), banner: null };
}

export function withHints(view: ViewState, hints: Hint[]): ViewState {
    return { ...view, hints: new Map(hints.map((h) => [h.vertex, h.in_attractor])) };
}

export function withStart(view: ViewState, vertex: number, state: ServerState): ViewState {
    return {
        ...view,
        session: state,
        hints: new Map(),
        banner: null,
        log: [...view.log, { kind: 'start', vertex, state, engineReply: null }],
    };
}

export function withMove(view: ViewState, vertex: number, resp: MoveResponse): ViewState {
    const latest = resp.engine_reply ?? resp.state;
    return {
        ...view,
        session: latest,
        hints: new Map(),
        banner: null,
        log: [
            ...view.log,
            { kind: 'move', vertex, state: resp.state, engineReply: resp.engine_reply },
        ],
    };
}

// API failures must never wipe the live session; the banner is the only change.
export function withBanner(view: ViewState, message: string): ViewState {
    return { ...view, banner: message };
}

export function isHumanTurn(view: ViewState): boolean {
    const s = view.session;
    if (!s) return false;
    if (s.phase === 'awaiting-cop-start') return s.human_role === 'cop';
    if (s.phase === 'awaiting-robber-start') return s.human_role === 'robber';
    return s.phase === 'playing' && s.mover === s.human_role;
}

// Vertices the human may click right now. Starts allow any vertex; moves
// allow exactly what the server's hint list named — the UI cannot invent
// a move the API did not offer.
export function clickableVertices(view: ViewState): Set<number> {
    const s = view.session;
    if (!s || !isHumanTurn(view)) return new Set();
    if (s.phase !== 'playing') {
        return new Set(Array.from({ length: s.n }, (_, i) => i));
    }
    return new Set(view.hints.keys());
}

// Replaying the recorded log must land on the state the server last
// reported; renderers re-derive the final board purely from the log.
export function replayFinalState(view: ViewState): ServerState | null {
    if (view.log.length === 0) return view.session;
    const last = view.log[view.log.length - 1];
    return last.engineReply ?? last.state;
}

export function replayMatchesSession(view: ViewState): boolean {
    const replayed = replayFinalState(view);
    if (replayed === null || view.session === null) return replayed === view.session;
    return JSON.stringify(replayed) === JSON.stringify(view.session);
}

export function outcomeText(state: ServerState): string | null {
    if (state.outcome) {
        return `captured at step ${state.outcome.step}`;
    }
    if (state.evasion_certified) {
        return 'engine robber is provably safe: evasion certified';
    }
    return null;
}
