// SVG board: edges drawn solid when present this step and faded when
// absent, tokens for both players, clickable rings on exactly the
// vertices the current hint set allows.

import type { Point } from './layout.js';
import type { ServerState } from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

export interface BoardCallbacks {
    onVertexClick: (vertex: number) => void;
}

function el<K extends keyof SVGElementTagNameMap>(
    tag: K,
    attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
    const node = document.createElementNS(SVG_NS, tag);
    for (const [key, value] of Object.entries(attrs)) {
        node.setAttribute(key, String(value));
    }
    return node;
}

export function renderBoard(
    svg: SVGSVGElement,
    state: ServerState,
    points: Point[],
    clickable: Set<number>,
    hints: Map<number, boolean>,
    callbacks: BoardCallbacks,
): void {
    svg.replaceChildren();
    const present = new Set(state.present_edges.map(([u, v]) => `${u},${v}`));
    for (const [u, v] of state.edges) {
        const line = el('line', {
            x1: points[u].x,
            y1: points[u].y,
            x2: points[v].x,
            y2: points[v].y,
            class: present.has(`${u},${v}`) ? 'edge present' : 'edge absent',
        });
        svg.appendChild(line);
    }
    for (let v = 0; v < state.n; v++) {
        const group = el('g', { class: 'vertex-group' });
        if (hints.get(v) === true) {
            group.appendChild(el('circle', { cx: points[v].x, cy: points[v].y, r: 17, class: 'hint-ring' }));
        }
        const circle = el('circle', {
            cx: points[v].x,
            cy: points[v].y,
            r: 12,
            class: clickable.has(v) ? 'vertex clickable' : 'vertex',
        });
        if (clickable.has(v)) {
            circle.addEventListener('click', () => callbacks.onVertexClick(v));
        }
        group.appendChild(circle);
        const label = el('text', {
            x: points[v].x,
            y: points[v].y + 4,
            'text-anchor': 'middle',
            class: 'vertex-label',
        });
        label.textContent = String(v);
        group.appendChild(label);
        svg.appendChild(group);
    }
    if (state.cop !== null) {
        svg.appendChild(
            el('rect', {
                x: points[state.cop].x - 7,
                y: points[state.cop].y - 24,
                width: 14,
                height: 14,
                class: 'token cop',
            }),
        );
    }
    if (state.robber !== null) {
        svg.appendChild(
            el('circle', {
                cx: points[state.robber].x,
                cy: points[state.robber].y - 18,
                r: 7,
                class: 'token robber',
            }),
        );
    }
}
