// Wiring: forms, fetch calls, and re-rendering. All game logic lives on
// the server; this file only moves JSON between the API and the board.

import { ApiError, chooseStart, createSession, getHints, getState, sendMove } from './api.js';
import { renderBoard } from './board.js';
import { layoutFor, Point } from './layout.js';
import {
    clickableVertices,
    initialViewState,
    isHumanTurn,
    outcomeText,
    replayMatchesSession,
    ViewState,
    withBanner,
    withHints,
    withMove,
    withSession,
    withStart,
} from './state.js';
import type { Role } from './types.js';

const EXAMPLE_EPG = `# 6-cycle; the two edges at the top only exist every second step
n 6
e 0 1 01
e 1 2 01
e 2 3 1
e 3 4 1
e 4 5 1
e 0 5 1
`;

let view: ViewState = initialViewState();
let points: Point[] = [];
let hintsEnabled = true;

const $ = <T extends HTMLElement>(id: string): T => {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing #${id}`);
    return node as T;
};

function statusLine(): string {
    const s = view.session;
    if (!s) return 'paste a graph and create a session';
    switch (s.phase) {
        case 'awaiting-cop-start':
            return s.human_role === 'cop'
                ? 'click a vertex to place your cop'
                : 'waiting for the engine cop';
        case 'awaiting-robber-start':
            return s.human_role === 'robber'
                ? 'click a vertex to place your robber'
                : 'waiting for the engine robber';
        case 'playing':
            return isHumanTurn(view)
                ? `your move (${s.human_role}), step ${s.time}`
                : 'engine thinking';
        case 'finished':
            return outcomeText(s) ?? 'game over';
    }
}

function redraw(): void {
    const s = view.session;
    const banner = $('banner');
    banner.textContent = view.banner ?? '';
    banner.classList.toggle('hidden', view.banner === null);
    $('status').textContent = statusLine();
    const meta = $('meta');
    if (s) {
        const verdict = `solver verdict: ${s.winner}-win`;
        const extra = outcomeText(s);
        meta.textContent = extra ? `${verdict} — ${extra}` : verdict;
    } else {
        meta.textContent = '';
    }
    const svg = $('board') as unknown as SVGSVGElement;
    if (!s) {
        svg.replaceChildren();
        return;
    }
    if (points.length !== s.n) {
        points = layoutFor(s.n, s.edges, svg.clientWidth || 640, svg.clientHeight || 480);
    }
    const clickable = view.busy ? new Set<number>() : clickableVertices(view);
    const hints = hintsEnabled ? view.hints : new Map<number, boolean>();
    renderBoard(svg, s, points, clickable, hints, { onVertexClick: handleClick });
    $('replay-note').textContent = replayMatchesSession(view)
        ? ''
        : 'warning: recorded log and live state diverge';
}

async function refreshHints(): Promise<void> {
    const s = view.session;
    if (!s || s.phase !== 'playing' || !isHumanTurn(view)) return;
    const hints = await getHints(s.session_id);
    view = withHints(view, hints.moves);
}

async function act(action: () => Promise<void>): Promise<void> {
    view = { ...view, busy: true };
    redraw();
    try {
        await action();
    } catch (err) {
        // non-blocking: the session and board survive a rejected request
        const message =
            err instanceof ApiError ? `${err.message} [${err.condition}]` : String(err);
        view = withBanner(view, message);
    } finally {
        view = { ...view, busy: false };
        redraw();
    }
}

function handleClick(vertex: number): void {
    const s = view.session;
    if (!s) return;
    void act(async () => {
        if (s.phase === 'playing') {
            const resp = await sendMove(s.session_id, vertex);
            view = withMove(view, vertex, resp);
        } else {
            const state = await chooseStart(s.session_id, vertex);
            view = withStart(view, vertex, state);
        }
        await refreshHints();
    });
}

function bind(): void {
    ($('epg') as HTMLTextAreaElement).value = EXAMPLE_EPG;
    $('create').addEventListener('click', () => {
        void act(async () => {
            const epg = ($('epg') as HTMLTextAreaElement).value;
            const role = ($('role') as HTMLSelectElement).value as Role;
            const created = await createSession(epg, role);
            points = [];
            view = withSession(initialViewState(), created.state);
            view = withBanner(
                view,
                `session ready: ${created.winner}-win graph; suggested start ${created.optimal_start}`,
            );
            await refreshHints();
        });
    });
    $('refresh').addEventListener('click', () => {
        const s = view.session;
        if (!s) return;
        void act(async () => {
            view = withSession(view, await getState(s.session_id));
            await refreshHints();
        });
    });
    ($('hints-toggle') as HTMLInputElement).addEventListener('change', (ev) => {
        hintsEnabled = (ev.target as HTMLInputElement).checked;
        redraw();
    });
    redraw();
}

document.addEventListener('DOMContentLoaded', bind);
