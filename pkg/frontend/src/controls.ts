/**
 * Control strip: thin emitters that translate widget events into protocol
 * messages.  No geometry lives here; the widgets resync from each frame.
 */

import { thicknessForFraction } from "./geometry.js";
import { ClientMessage, TourFrame } from "./protocol.js";

export interface ControlsOptions {
    send(msg: ClientMessage): void;
    thicknessRange?: [number, number];
    methods?: string[];
}

const DEFAULT_METHODS = [
    "simple",
    "exact_zeroed",
    "exact_completion_random",
    "exact_completion_continuous",
    "exact_rotation",
];

export class Controls {
    readonly root: HTMLElement;
    private readonly thickness: HTMLInputElement;
    private readonly centerInputs: HTMLInputElement[] = [];
    private readonly centerBox: HTMLElement;
    private readonly sourceSelect: HTMLSelectElement;
    private readonly banner: HTMLElement;
    private syncing = false;

    constructor(private readonly opts: ControlsOptions) {
        const doc = document;
        this.root = doc.createElement("div");
        this.root.className = "controls";

        const [hMin, hMax] = opts.thicknessRange ?? [0.05, 5];
        this.thickness = doc.createElement("input");
        this.thickness.type = "range";
        this.thickness.min = String(hMin);
        this.thickness.max = String(hMax);
        this.thickness.step = "0.01";
        this.thickness.addEventListener("input", () => {
            if (!this.syncing) opts.send({ t: "set_thickness", h: Number(this.thickness.value) });
        });
        this.root.appendChild(this.labeled("slice width", this.thickness));

        const view = doc.createElement("input");
        view.type = "checkbox";
        view.addEventListener("change", () =>
            opts.send({ t: "set_view", mode: view.checked ? "slice" : "projection" }),
        );
        this.root.appendChild(this.labeled("slice view", view));

        const method = doc.createElement("select");
        for (const name of opts.methods ?? DEFAULT_METHODS) {
            const o = doc.createElement("option");
            o.value = name;
            o.textContent = name;
            method.appendChild(o);
        }
        method.addEventListener("change", () => opts.send({ t: "set_method", method: method.value }));
        this.root.appendChild(this.labeled("method", method));

        this.sourceSelect = doc.createElement("select");
        this.sourceSelect.addEventListener("change", () =>
            opts.send({ t: "select_source", name: this.sourceSelect.value }),
        );
        this.root.appendChild(this.labeled("source", this.sourceSelect));

        this.centerBox = doc.createElement("span");
        this.root.appendChild(this.labeled("center", this.centerBox));

        const exportBtn = doc.createElement("button");
        exportBtn.textContent = "export A";
        exportBtn.addEventListener("click", () => opts.send({ t: "export_projection" }));
        this.root.appendChild(exportBtn);

        const importBtn = doc.createElement("button");
        importBtn.textContent = "import A";
        importBtn.addEventListener("click", () => {
            const text = window.prompt("projection rows (space-separated):");
            if (text) opts.send({ t: "import_projection", A: text });
        });
        this.root.appendChild(importBtn);

        this.banner = doc.createElement("div");
        this.banner.className = "banner";
        this.root.appendChild(this.banner);
    }

    private labeled(text: string, el: HTMLElement): HTMLElement {
        const label = document.createElement("label");
        label.textContent = text + " ";
        label.appendChild(el);
        return label;
    }

    /** Preselect the slider so ~10% of a uniform ball is expected in-slice. */
    presetThickness(p: number): void {
        const h = thicknessForFraction(p, 0.1);
        this.thickness.value = String(h);
        this.opts.send({ t: "set_thickness", h });
    }

    setSources(names: string[]): void {
        this.sourceSelect.innerHTML = "";
        for (const name of names) {
            const o = document.createElement("option");
            o.value = name;
            o.textContent = name;
            this.sourceSelect.appendChild(o);
        }
    }

    showError(code: string, detail?: string): void {
        this.banner.textContent = detail ? `${code}: ${detail}` : code;
    }

    /** Resync widget positions from an authoritative frame. */
    sync(frame: TourFrame): void {
        this.syncing = true;
        this.thickness.value = String(frame.applied_params.thickness);
        const center = frame.applied_params.center;
        while (this.centerInputs.length < center.length) {
            const j = this.centerInputs.length;
            const input = document.createElement("input");
            input.type = "number";
            input.step = "0.1";
            input.style.width = "4em";
            input.addEventListener("change", () => {
                const c = this.centerInputs.map((el) => Number(el.value));
                this.opts.send({ t: "set_center", c });
            });
            this.centerInputs.push(input);
            this.centerBox.appendChild(input);
            void j;
        }
        center.forEach((v, j) => {
            if (document.activeElement !== this.centerInputs[j]) {
                this.centerInputs[j].value = v.toFixed(3);
            }
        });
        this.banner.textContent = "";
        this.syncing = false;
    }
}
