/** Entry point: wires the socket, panes, and controls into one render loop. */

import { Controls } from "./controls.js";
import { clampToUnitDisk, nearestAxis } from "./geometry.js";
import { dragMessage, TourFrame } from "./protocol.js";
import { DragState, DEFAULT_SETTINGS, matrixText, renderAxisPane, renderScatter, renderStarGuide } from "./render.js";
import { DragThrottle, TourSocket } from "./socket.js";

function canvas(id: string, size: number): [HTMLCanvasElement, CanvasRenderingContext2D] {
    const el = document.getElementById(id) as HTMLCanvasElement;
    el.width = size;
    el.height = size;
    return [el, el.getContext("2d")!];
}

export function start(): void {
    const params = new URLSearchParams(window.location.search);
    const host = params.get("host") ?? window.location.hostname ?? "localhost";
    const port = params.get("port") ?? (window.location.port || "8000");
    const ws = new WebSocket(`ws://${host}:${port}/ws`);

    const [, scatterCtx] = canvas("scatter", 480);
    const [axisEl, axisCtx] = canvas("axes", 260);
    const [, guideCtx] = canvas("guide", 160);
    const matrixPanel = document.getElementById("matrix")!;

    let lastFrame: TourFrame | null = null;
    const settings = { ...DEFAULT_SETTINGS };
    const drag: DragState = { active: false, variable: 0, cursor: [0, 0] };

    const socket = new TourSocket(ws, {
        onFrame(frame) {
            lastFrame = frame;
            controls.sync(frame);
        },
        onError(code, detail) {
            controls.showError(code, detail);
        },
        onMalformed() {
            controls.showError("malformed frame", "keeping last good frame");
        },
    });
    ws.addEventListener("message", (ev) => socket.receive(String(ev.data)));

    const controls = new Controls({ send: (msg) => socket.send(msg) });
    document.getElementById("controls")!.appendChild(controls.root);
    const throttle = new DragThrottle(socket);

    const toAxisCoords = (ev: MouseEvent): [number, number] => {
        const rect = axisEl.getBoundingClientRect();
        const c = axisEl.width / 2;
        const r = axisEl.width / 2 - 18;
        const x = (ev.clientX - rect.left - c) / r;
        const y = -(ev.clientY - rect.top - c) / r;
        return clampToUnitDisk(x, y);
    };

    axisEl.addEventListener("mousedown", (ev) => {
        if (!lastFrame) return;
        drag.active = true;
        drag.cursor = toAxisCoords(ev);
        drag.variable = nearestAxis(lastFrame.axes, drag.cursor);
    });
    window.addEventListener("mousemove", (ev) => {
        if (!drag.active) return;
        drag.cursor = toAxisCoords(ev);
        throttle.push(dragMessage(drag.cursor, drag.variable));
    });
    window.addEventListener("mouseup", () => {
        drag.active = false;
    });

    function loop(): void {
        throttle.flush();
        socket.tick();
        if (lastFrame) {
            renderScatter(scatterCtx, lastFrame, settings, 480, 480);
            renderAxisPane(axisCtx, lastFrame, drag, 260);
            renderStarGuide(guideCtx, lastFrame.guide, 160);
            matrixPanel.textContent =
                settings.showMatrix && lastFrame.matrix ? matrixText(lastFrame.matrix) : "";
        }
        requestAnimationFrame(loop);
    }
    requestAnimationFrame(loop);
}

if (typeof document !== "undefined" && document.getElementById("scatter")) {
    start();
}
