// Vertex placement. Cycles read best on a ring, so they get an exact
// circular layout; anything else falls back to a small deterministic
// spring relaxation (seeded, so re-renders never jiggle).

export interface Point {
    x: number;
    y: number;
}

export function isCycleGraph(n: number, edges: [number, number][]): boolean {
    if (n < 3 || edges.length !== n) return false;
    const want = new Set<string>();
    for (let i = 0; i < n; i++) {
        const u = i, v = (i + 1) % n;
        want.add(`${Math.min(u, v)},${Math.max(u, v)}`);
    }
    return edges.every(([u, v]) => want.delete(`${Math.min(u, v)},${Math.max(u, v)}`)) && want.size === 0;
}

export function circularLayout(n: number, width: number, height: number): Point[] {
    const cx = width / 2;
    const cy = height / 2;
    const radius = 0.42 * Math.min(width, height);
    const points: Point[] = [];
    for (let i = 0; i < n; i++) {
        const angle = (2 * Math.PI * i) / n - Math.PI / 2;
        points.push({ x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) });
    }
    return points;
}

// Park-Miller PRNG: deterministic placements for a given seed.
function makeRng(seed: number): () => number {
    let state = seed % 2147483647;
    if (state <= 0) state += 2147483646;
    return () => {
        state = (state * 16807) % 2147483647;
        return (state - 1) / 2147483646;
    };
}

export function forceLayout(
    n: number,
    edges: [number, number][],
    width: number,
    height: number,
    iterations = 250,
    seed = 42,
): Point[] {
    const rng = makeRng(seed);
    const pts: Point[] = Array.from({ length: n }, () => ({
        x: width * (0.2 + 0.6 * rng()),
        y: height * (0.2 + 0.6 * rng()),
    }));
    if (n === 1) return [{ x: width / 2, y: height / 2 }];
    const area = width * height;
    const k = Math.sqrt(area / n) * 0.7;
    let temperature = width / 8;
    for (let iter = 0; iter < iterations; iter++) {
        const disp: Point[] = Array.from({ length: n }, () => ({ x: 0, y: 0 }));
        for (let i = 0; i < n; i++) {
            for (let j = i + 1; j < n; j++) {
                let dx = pts[i].x - pts[j].x;
                let dy = pts[i].y - pts[j].y;
                let dist = Math.hypot(dx, dy);
                if (dist < 1e-6) {
                    dx = rng() - 0.5;
                    dy = rng() - 0.5;
                    dist = Math.hypot(dx, dy);
                }
                const repulse = (k * k) / dist;
                disp[i].x += (dx / dist) * repulse;
                disp[i].y += (dy / dist) * repulse;
                disp[j].x -= (dx / dist) * repulse;
                disp[j].y -= (dy / dist) * repulse;
            }
        }
        for (const [u, v] of edges) {
            const dx = pts[u].x - pts[v].x;
            const dy = pts[u].y - pts[v].y;
            const dist = Math.max(Math.hypot(dx, dy), 1e-6);
            const attract = (dist * dist) / k;
            disp[u].x -= (dx / dist) * attract;
            disp[u].y -= (dy / dist) * attract;
            disp[v].x += (dx / dist) * attract;
            disp[v].y += (dy / dist) * attract;
        }
        for (let i = 0; i < n; i++) {
            const d = Math.max(Math.hypot(disp[i].x, disp[i].y), 1e-6);
            const step = Math.min(d, temperature);
            pts[i].x += (disp[i].x / d) * step;
            pts[i].y += (disp[i].y / d) * step;
            pts[i].x = Math.min(width * 0.95, Math.max(width * 0.05, pts[i].x));
            pts[i].y = Math.min(height * 0.95, Math.max(height * 0.05, pts[i].y));
        }
        temperature *= 0.97;
    }
    return pts;
}

export function layoutFor(
    n: number,
    edges: [number, number][],
    width: number,
    height: number,
): Point[] {
    return isCycleGraph(n, edges)
        ? circularLayout(n, width, height)
        : forceLayout(n, edges, width, height);
}
