// Thin typed client for the session API. Rule violations surface as
// ApiError carrying the server's condition tag so the UI can explain
// rejections without losing the session.

import type {
    CreateSessionResponse,
    HintsResponse,
    MoveResponse,
    Role,
    ServerState,
} from './types.js';

export class ApiError extends Error {
    constructor(
        message: string,
        public readonly status: number,
        public readonly condition: string,
    ) {
        super(message);
    }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await fetch(path, init);
    if (!res.ok) {
        let message = `${res.status} ${res.statusText}`;
        let condition = 'http-error';
        try {
            const body = await res.json();
            const detail = body?.detail;
            if (typeof detail === 'string') {
                message = detail;
            } else if (detail) {
                message = detail.message ?? message;
                condition = detail.condition ?? condition;
            }
        } catch {
            // non-JSON error body: keep the status text
        }
        throw new ApiError(message, res.status, condition);
    }
    return res.json() as Promise<T>;
}

function post<T>(path: string, body: unknown): Promise<T> {
    return request<T>(path, {
        method: 'POST',
        headers: { 'Content-Type': 'application/json' },
        body: JSON.stringify(body),
    });
}

export function createSession(epg: string, humanRole: Role): Promise<CreateSessionResponse> {
    return post('/session', { epg, human_role: humanRole });
}

export function chooseStart(sessionId: string, vertex: number): Promise<ServerState> {
    return post(`/session/${sessionId}/start`, { vertex });
}

export function sendMove(sessionId: string, vertex: number): Promise<MoveResponse> {
    return post(`/session/${sessionId}/move`, { vertex });
}

export function getState(sessionId: string): Promise<ServerState> {
    return request(`/session/${sessionId}`);
}

export function getHints(sessionId: string): Promise<HintsResponse> {
    return request(`/session/${sessionId}/hints`);
}
