/**
 * Wire protocol spoken with the tour session backend.
 *
 * Every geometric quantity the UI draws arrives inside a TourFrame; the UI
 * holds no geometry of its own, so reconnecting mid-session reproduces the
 * identical scene from the next frame.
 */

export interface AppliedParams {
    view_mode: "projection" | "slice";
    method: string;
    thickness: number;
    center: number[];
    source: string;
    display: Record<string, unknown>;
    m?: number;
}

export interface TourFrame {
    t: "frame";
    coords: number[][];
    mask: boolean[];
    axes: number[][];
    guide: number[];
    groups: number[];
    class_names: string[];
    applied_params: AppliedParams;
    matrix?: number[][];
}

export interface AckMessage {
    t: "ack";
    applied?: Record<string, unknown>;
    projection?: string;
}

export interface ErrorMessage {
    t: "error";
    code: string;
    recoverable: boolean;
    detail?: string;
}

export type ServerMessage = TourFrame | AckMessage | ErrorMessage;

export type ClientMessage =
    | { t: "drag_axis"; m?: number; target: number[] }
    | { t: "set_method"; method: string }
    | { t: "set_thickness"; h: number }
    | { t: "set_center"; c: number[] }
    | { t: "set_view"; mode: "projection" | "slice" }
    | { t: "set_display"; [key: string]: unknown }
    | { t: "select_source"; name: string }
    | { t: "export_projection" }
    | { t: "import_projection"; A: string }
    | { t: "get_frame" };

export function isFrame(msg: ServerMessage): msg is TourFrame {
    return msg.t === "frame";
}

/**
 * Parse and structurally validate one server message.  Returns null for
 * anything malformed so the caller can show a banner and keep the last
 * good frame.
 */
export function parseServerMessage(text: string): ServerMessage | null {
    let raw: unknown;
    try {
        raw = JSON.parse(text);
    } catch {
        return null;
    }
    if (typeof raw !== "object" || raw === null) return null;
    const msg = raw as Record<string, unknown>;
    switch (msg.t) {
        case "frame":
            if (
                Array.isArray(msg.coords) &&
                Array.isArray(msg.mask) &&
                Array.isArray(msg.axes) &&
                Array.isArray(msg.guide) &&
                Array.isArray(msg.groups) &&
                Array.isArray(msg.class_names) &&
                msg.coords.length === msg.mask.length &&
                msg.coords.length === msg.groups.length &&
                typeof msg.applied_params === "object" &&
                msg.applied_params !== null
            ) {
                return msg as unknown as TourFrame;
            }
            return null;
        case "ack":
            return msg as unknown as AckMessage;
        case "error":
            return typeof msg.code === "string" ? (msg as unknown as ErrorMessage) : null;
        default:
            return null;
    }
}

export function dragMessage(target: [number, number], m?: number): ClientMessage {
    return m === undefined ? { t: "drag_axis", target } : { t: "drag_axis", m, target };
}
