/** WebSocket wrapper: typed send, dispatch by message type, staleness clock. */

import type { ClientMessage, ServerMessage } from "./protocol.js";

export type MessageHandler = (msg: ServerMessage) => void;

export class SessionSocket {
  private ws: WebSocket | null = null;
  private handlers: MessageHandler[] = [];
  private openHandlers: (() => void)[] = [];
  private closeHandlers: (() => void)[] = [];
  lastMessageAt = 0;

  connect(url: string): void {
    this.close();
    const ws = new WebSocket(url);
    this.ws = ws;
    ws.onopen = () => {
      this.lastMessageAt = performance.now();
      for (const h of this.openHandlers) h();
    };
    ws.onmessage = (event) => {
      this.lastMessageAt = performance.now();
      let parsed: ServerMessage;
      try {
        parsed = JSON.parse(event.data as string) as ServerMessage;
      } catch {
        return;
      }
      for (const h of this.handlers) h(parsed);
    };
    ws.onclose = () => {
      for (const h of this.closeHandlers) h();
    };
  }

  close(): void {
    if (this.ws && this.ws.readyState <= WebSocket.OPEN) this.ws.close();
    this.ws = null;
  }

  get connected(): boolean {
    return this.ws !== null && this.ws.readyState === WebSocket.OPEN;
  }

  /** Milliseconds since the last message; Infinity when not connected. */
  staleness(): number {
    if (!this.connected) return Infinity;
    return performance.now() - this.lastMessageAt;
  }

  send(msg: ClientMessage): boolean {
    if (!this.connected) return false;
    this.ws!.send(JSON.stringify(msg));
    return true;
  }

  onMessage(handler: MessageHandler): void {
    this.handlers.push(handler);
  }

  onOpen(handler: () => void): void {
    this.openHandlers.push(handler);
  }

  onClose(handler: () => void): void {
    this.closeHandlers.push(handler);
  }
}
