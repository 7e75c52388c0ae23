/** WebSocket wrapper: typed send, dispatch by message type, staleness clock. */
export class SessionSocket {
    constructor() {
        this.ws = null;
        this.handlers = [];
        this.openHandlers = [];
        this.closeHandlers = [];
        this.lastMessageAt = 0;
    }
    connect(url) {
        this.close();
        const ws = new WebSocket(url);
        this.ws = ws;
        ws.onopen = () => {
            this.lastMessageAt = performance.now();
            for (const h of this.openHandlers)
                h();
        };
        ws.onmessage = (event) => {
            this.lastMessageAt = performance.now();
            let parsed;
            try {
                parsed = JSON.parse(event.data);
            }
            catch {
                return;
            }
            for (const h of this.handlers)
                h(parsed);
        };
        ws.onclose = () => {
            for (const h of this.closeHandlers)
                h();
        };
    }
    close() {
        if (this.ws && this.ws.readyState <= WebSocket.OPEN)
            this.ws.close();
        this.ws = null;
    }
    get connected() {
        return this.ws !== null && this.ws.readyState === WebSocket.OPEN;
    }
    /** Milliseconds since the last message; Infinity when not connected. */
    staleness() {
        if (!this.connected)
            return Infinity;
        return performance.now() - this.lastMessageAt;
    }
    send(msg) {
        if (!this.connected)
            return false;
        this.ws.send(JSON.stringify(msg));
        return true;
    }
    onMessage(handler) {
        this.handlers.push(handler);
    }
    onOpen(handler) {
        this.openHandlers.push(handler);
    }
    onClose(handler) {
        this.closeHandlers.push(handler);
    }
}
