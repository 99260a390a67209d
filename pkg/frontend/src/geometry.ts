/** Pure 2-D helpers shared by the axis pane, scatterplot, and star guide. */

export type Point = [number, number];

/** Clamp a cursor position into the closed unit disk. */
export function clampToUnitDisk(x: number, y: number): Point {
    const n = Math.hypot(x, y);
    return n > 1 ? [x / n, y / n] : [x, y];
}

/**
 * Index of the axis endpoint nearest to the cursor; ties break to the
 * lowest index, mirroring the server's own selection rule.
 */
export function nearestAxis(axes: number[][], cursor: Point): number {
    let best = 0;
    let bestDist = Infinity;
    for (let j = 0; j < axes.length; j++) {
        const d = Math.hypot(axes[j][0] - cursor[0], axes[j][1] - cursor[1]);
        if (d < bestDist - 1e-15) {
            best = j;
            bestDist = d;
        }
    }
    return best;
}

/** Affine map from a data interval onto a pixel interval. */
export function linearScale(
    domain: [number, number],
    range: [number, number],
): (v: number) => number {
    const [d0, d1] = domain;
    const [r0, r1] = range;
    const span = d1 - d0 || 1;
    return (v) => r0 + ((v - d0) / span) * (r1 - r0);
}

export function extent(values: number[]): [number, number] {
    let lo = Infinity;
    let hi = -Infinity;
    for (const v of values) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
    }
    return lo <= hi ? [lo, hi] : [0, 1];
}

/**
 * Star-plot polygon vertices: one radial axis per variable, evenly spaced
 * starting at 12 o'clock, vertex j at fraction radial[j] of the axis.
 * All-0.5 input therefore yields a regular polygon of half radius.
 */
export function starPolygonPoints(
    radial: number[],
    cx: number,
    cy: number,
    r: number,
): Point[] {
    const p = radial.length;
    const pts: Point[] = [];
    for (let j = 0; j < p; j++) {
        const angle = -Math.PI / 2 + (2 * Math.PI * j) / p;
        pts.push([
            cx + r * radial[j] * Math.cos(angle),
            cy + r * radial[j] * Math.sin(angle),
        ]);
    }
    return pts;
}

/** Expected in-slice fraction for a unit-radius uniform ball, thickness h. */
export function expectedSliceFraction(h: number, p: number): number {
    if (h >= 1) return 1;
    if (p === 2) return 1;
    return 0.5 * Math.pow(h, p - 2) * (p - (p - 2) * h * h);
}

/**
 * Thickness whose expected in-slice fraction is `frac` under the
 * uniform-ball heuristic — the default slider preset (~10%).  Solved by
 * bisection; the fraction is monotone increasing in h on (0, 1].
 */
export function thicknessForFraction(p: number, frac: number): number {
    if (p <= 2 || frac >= 1) return 1;
    let lo = 0;
    let hi = 1;
    for (let i = 0; i < 60; i++) {
        const mid = (lo + hi) / 2;
        if (expectedSliceFraction(mid, p) < frac) lo = mid;
        else hi = mid;
    }
    return (lo + hi) / 2;
}
