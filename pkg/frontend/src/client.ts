/**
 * Engine client over a swappable line transport.
 *
 * The protocol is the contract; the transport is not.  Node tests use the
 * TCP transport against `spiralgram serve`; a browser deployment can inject
 * a WebSocket bridge (or an in-page engine) exposing the same interface.
 */

import { encodeLine, createLineParser } from "./ndjson.js";
import {
  EngineOp,
  EngineResponse,
  isEngineResponse,
  makeRequest,
} from "./protocol.js";

export interface LineTransport {
  send(line: string): void;
  onLine(handler: (line: string) => void): void;
  close(): void;
}

export class EngineError extends Error {}

export class EngineClient {
  private queue: Array<{
    resolve: (r: EngineResponse) => void;
    reject: (e: Error) => void;
  }> = [];

  constructor(private transport: LineTransport) {
    const parser = createLineParser(
      (value) => this.dispatch(value),
      (_line, error) => this.fail(new EngineError(`undecodable response: ${error.message}`)),
    );
    transport.onLine((line) => parser.push(line.endsWith("\n") ? line : line + "\n"));
  }

  private dispatch(value: unknown): void {
    const waiter = this.queue.shift();
    if (!waiter) return; // unsolicited line; engine sends none
    if (!isEngineResponse(value)) {
      waiter.reject(new EngineError("response failed schema validation"));
      return;
    }
    waiter.resolve(value);
  }

  private fail(error: Error): void {
    const waiter = this.queue.shift();
    if (waiter) waiter.reject(error);
  }

  /** Send one request; resolves with the schema-checked response. */
  request(op: EngineOp, payload: Record<string, unknown>): Promise<EngineResponse> {
    return new Promise((resolve, reject) => {
      this.queue.push({ resolve, reject });
      this.transport.send(encodeLine(makeRequest(op, payload)));
    });
  }

  /** Like request(), but turns engine-side errors into rejections. */
  async call(op: EngineOp, payload: Record<string, unknown>): Promise<Record<string, unknown>> {
    const response = await this.request(op, payload);
    if (!response.ok) throw new EngineError(response.error);
    return response.payload;
  }

  close(): void {
    this.transport.close();
  }
}

/** TCP transport for Node environments (tests, scripted sessions). */
export async function connectTcp(host: string, port: number): Promise<LineTransport> {
  const net = await import("node:net");
  const socket = net.createConnection({ host, port });
  await new Promise<void>((resolve, reject) => {
    socket.once("connect", () => resolve());
    socket.once("error", reject);
  });
  socket.setEncoding("utf-8");
  let handler: ((line: string) => void) | null = null;
  socket.on("data", (chunk: string) => handler?.(chunk));
  return {
    send(line: string) {
      socket.write(line);
    },
    onLine(h) {
      handler = h;
    },
    close() {
      socket.end();
      socket.destroy();
    },
  };
}

/** WebSocket transport for browser deployments behind an NDJSON bridge. */
export function connectWebSocket(url: string): LineTransport {
  const socket = new WebSocket(url);
  let handler: ((line: string) => void) | null = null;
  socket.onmessage = (event) => handler?.(String(event.data));
  return {
    send(line: string) {
      socket.send(line);
    },
    onLine(h) {
      handler = h;
    },
    close() {
      socket.close();
    },
  };
}
