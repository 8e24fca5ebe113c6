/** Newline-delimited JSON framing shared by every transport. */

export function encodeLine(value: unknown): string {
  return `${JSON.stringify(value)}\n`;
}

/**
 * Incremental splitter: feed chunks, get complete JSON values.  Malformed
 * lines are surfaced to the error callback instead of being swallowed,
 * since a desynchronized stream should fail loudly.
 */
export function createLineParser(
  onValue: (value: unknown) => void,
  onError: (line: string, error: Error) => void,
): { push(chunk: string): void; pendingBytes(): number } {
  let buffer = "";
  return {
    push(chunk: string) {
      buffer += chunk;
      for (;;) {
        const idx = buffer.indexOf("\n");
        if (idx === -1) break;
        const line = buffer.slice(0, idx).trim();
        buffer = buffer.slice(idx + 1);
        if (!line) continue;
        try {
          onValue(JSON.parse(line));
        } catch (error) {
          onError(line, error as Error);
        }
      }
    },
    pendingBytes() {
      return buffer.length;
    },
  };
}
