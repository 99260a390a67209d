/**
 * Transport glue: a rate limiter that forwards at most one drag message per
 * animation tick, and a thin socket wrapper that keeps only the newest
 * frame per tick (stale frames are discarded, frames apply in order).
 */

import { ClientMessage, ServerMessage, TourFrame, isFrame, parseServerMessage } from "./protocol.js";

export interface Transport {
    send(msg: ClientMessage): void;
}

/**
 * Collapses a stream of drag gestures to one outbound message per tick.
 * `flush()` is called once per animation frame; intermediate cursor
 * positions within a tick are dropped in favor of the latest.
 */
export class DragThrottle {
    private pending: ClientMessage | null = null;

    constructor(private readonly transport: Transport) {}

    push(msg: ClientMessage): void {
        this.pending = msg;
    }

    flush(): void {
        if (this.pending !== null) {
            this.transport.send(this.pending);
            this.pending = null;
        }
    }
}

export interface TourSocketHandlers {
    onFrame(frame: TourFrame): void;
    onError?(code: string, detail?: string): void;
    onAck?(msg: ServerMessage): void;
    onMalformed?(): void;
}

/**
 * Wraps a WebSocket; parses messages, routes frames/acks/errors, and keeps
 * only the newest frame if several arrive within one tick.
 */
export class TourSocket implements Transport {
    private latest: TourFrame | null = null;

    constructor(
        private readonly ws: { send(data: string): void; readyState?: number },
        private readonly handlers: TourSocketHandlers,
    ) {}

    send(msg: ClientMessage): void {
        try {
            this.ws.send(JSON.stringify(msg));
        } catch {
            // dropped if the socket closed; state resyncs on the next frame
        }
    }

    receive(text: string): void {
        const msg = parseServerMessage(text);
        if (msg === null) {
            this.handlers.onMalformed?.();
            return;
        }
        if (isFrame(msg)) {
            this.latest = msg;
        } else if (msg.t === "error") {
            this.handlers.onError?.(msg.code, msg.detail);
        } else {
            this.handlers.onAck?.(msg);
        }
    }

    /** Deliver the newest frame of the tick, if any. */
    tick(): void {
        if (this.latest !== null) {
            const frame = this.latest;
            this.latest = null;
            this.handlers.onFrame(frame);
        }
    }
}
