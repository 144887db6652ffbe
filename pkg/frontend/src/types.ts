// Shapes of the session API payloads. The server is the single source of
// truth for rules; the client never evaluates edge patterns itself.

export type Role = 'cop' | 'robber';

export type Phase =
    | 'awaiting-cop-start'
    | 'awaiting-robber-start'
    | 'playing'
    | 'finished';

export interface SessionOutcome {
    result: 'captured';
    step: number;
}

export interface ServerState {
    session_id: string;
    phase: Phase;
    human_role: Role;
    winner: Role;
    n: number;
    edges: [number, number][];
    cop: number | null;
    robber: number | null;
    mover: Role | null;
    time: number;
    present_edges: [number, number][];
    in_attractor: boolean | null;
    evasion_certified: boolean;
    outcome: SessionOutcome | null;
}

export interface CreateSessionResponse {
    session_id: string;
    winner: Role;
    optimal_start: number;
    state: ServerState;
}

export interface MoveResponse {
    state: ServerState;
    engine_reply: ServerState | null;
    outcome: SessionOutcome | null;
}

export interface Hint {
    vertex: number;
    in_attractor: boolean;
}

export interface HintsResponse {
    moves: Hint[];
}
