/**
 * Canvas renderers.  Each takes the 2-D context subset it actually uses so
 * tests can substitute a recording stub; a real CanvasRenderingContext2D
 * satisfies every interface here.
 */

import { Point, extent, linearScale, starPolygonPoints } from "./geometry.js";
import { TourFrame } from "./protocol.js";

export interface Ctx2D {
    clearRect(x: number, y: number, w: number, h: number): void;
    beginPath(): void;
    moveTo(x: number, y: number): void;
    lineTo(x: number, y: number): void;
    arc(x: number, y: number, r: number, a0: number, a1: number): void;
    closePath(): void;
    stroke(): void;
    fill(): void;
    fillText(text: string, x: number, y: number): void;
    strokeStyle: string | CanvasGradient | CanvasPattern;
    fillStyle: string | CanvasGradient | CanvasPattern;
    lineWidth: number;
    globalAlpha: number;
    font: string;
}

export interface ViewSettings {
    pointSize: number;
    zoom: number;
    showProjectionOverlay: boolean;
    showMatrix: boolean;
    showOutsidePoints: boolean;
}

export const DEFAULT_SETTINGS: ViewSettings = {
    pointSize: 3,
    zoom: 1,
    showProjectionOverlay: false,
    showMatrix: false,
    showOutsidePoints: false,
};

/** Fixed categorical palette keyed by group index, overridable per source.
 *  A transparent entry hides that group entirely. */
export const PALETTE = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a",
    "#66a61e", "#e6ab02", "#a6761d", "#666666",
];

export function groupColor(group: number, override?: (string | null)[]): string | null {
    if (override && group < override.length) return override[group];
    return PALETTE[group % PALETTE.length];
}

const OUTSIDE_COLOR = "#b8d4e8";

/** Linked scatterplot of the projected coordinates. */
export function renderScatter(
    ctx: Ctx2D,
    frame: TourFrame,
    settings: ViewSettings,
    width: number,
    height: number,
    palette?: (string | null)[],
): void {
    ctx.clearRect(0, 0, width, height);
    const xs = frame.coords.map((c) => c[0]);
    const ys = frame.coords.map((c) => c[1] ?? 0);
    const pad = 12;
    const half = settings.zoom;
    const [x0, x1] = extent(xs);
    const [y0, y1] = extent(ys);
    const cx = (x0 + x1) / 2;
    const cy = (y0 + y1) / 2;
    const span = Math.max(x1 - x0, y1 - y0, 1e-12) / 2 / half;
    const sx = linearScale([cx - span, cx + span], [pad, width - pad]);
    const sy = linearScale([cy - span, cy + span], [height - pad, pad]);
    const sliced = frame.applied_params.view_mode === "slice";
    for (let i = 0; i < frame.coords.length; i++) {
        const inside = frame.mask[i];
        if (sliced && !inside && !settings.showOutsidePoints && !settings.showProjectionOverlay) {
            continue;
        }
        const color = groupColor(frame.groups[i], palette);
        if (color === null) continue;
        ctx.fillStyle = sliced && !inside ? OUTSIDE_COLOR : color;
        ctx.globalAlpha = sliced && !inside ? 0.5 : 1;
        ctx.beginPath();
        ctx.arc(sx(xs[i]), sy(ys[i]), settings.pointSize, 0, 2 * Math.PI);
        ctx.fill();
    }
    ctx.globalAlpha = 1;
}

export interface DragState {
    active: boolean;
    variable: number;
    cursor: Point;
}

/** Unit-circle axis pane: one labeled segment per variable from the origin
 *  to the projection row, with the active drag highlighted. */
export function renderAxisPane(
    ctx: Ctx2D,
    frame: TourFrame,
    drag: DragState,
    size: number,
    labels?: string[],
): void {
    ctx.clearRect(0, 0, size, size);
    const c = size / 2;
    const r = size / 2 - 18;
    ctx.strokeStyle = "#999";
    ctx.lineWidth = 1;
    ctx.beginPath();
    ctx.arc(c, c, r, 0, 2 * Math.PI);
    ctx.stroke();
    ctx.font = "11px sans-serif";
    frame.axes.forEach((row, j) => {
        const x = c + r * row[0];
        const y = c - r * (row[1] ?? 0);
        const active = drag.active && drag.variable === j;
        ctx.strokeStyle = active ? "#d95f02" : "#333";
        ctx.lineWidth = active ? 2.5 : 1.2;
        ctx.beginPath();
        ctx.moveTo(c, c);
        ctx.lineTo(x, y);
        ctx.stroke();
        // label follows the endpoint with a simple outward offset
        const n = Math.hypot(x - c, y - c) || 1;
        ctx.fillStyle = "#333";
        ctx.fillText(
            labels?.[j] ?? `V${j}`,
            x + (8 * (x - c)) / n,
            y + (8 * (y - c)) / n,
        );
    });
}

/** Star-plot center guide: p radial axes with the polygon at guide[j]. */
export function renderStarGuide(ctx: Ctx2D, radial: number[], size: number): void {
    ctx.clearRect(0, 0, size, size);
    const c = size / 2;
    const r = size / 2 - 8;
    const rim = starPolygonPoints(radial.map(() => 1), c, c, r);
    ctx.strokeStyle = "#bbb";
    ctx.lineWidth = 1;
    rim.forEach((tip) => {
        ctx.beginPath();
        ctx.moveTo(c, c);
        ctx.lineTo(tip[0], tip[1]);
        ctx.stroke();
    });
    const pts = starPolygonPoints(radial, c, c, r);
    ctx.strokeStyle = "#1b9e77";
    ctx.fillStyle = "#1b9e77";
    ctx.globalAlpha = 0.25;
    ctx.beginPath();
    pts.forEach((p, i) => (i === 0 ? ctx.moveTo(p[0], p[1]) : ctx.lineTo(p[0], p[1])));
    ctx.closePath();
    ctx.fill();
    ctx.globalAlpha = 1;
    ctx.lineWidth = 1.5;
    ctx.stroke();
}

/** Numeric projection-matrix panel text, matching displayed precision. */
export function matrixText(matrix: number[][], digits = 3): string {
    return matrix
        .map((row) => row.map((x) => x.toFixed(digits)).join("  "))
        .join("\n");
}
