import { describe, expect, it } from "vitest";

import { createLineParser, encodeLine } from "../src/ndjson.js";

describe("ndjson framing", () => {
  it("encodes one line per value", () => {
    expect(encodeLine({ a: 1 })).toBe('{"a":1}\n');
  });

  it("reassembles values split across chunks", () => {
    const seen: unknown[] = [];
    const parser = createLineParser(
      (v) => seen.push(v),
      () => {
        throw new Error("unexpected parse error");
      },
    );
    parser.push('{"v":1,"ok":tr');
    parser.push('ue,"payload":{}}\n{"v":1,"ok":false,');
    expect(seen).toHaveLength(1);
    parser.push('"error":"x"}\n');
    expect(seen).toHaveLength(2);
    expect(parser.pendingBytes()).toBe(0);
  });

  it("skips blank lines and reports malformed ones", () => {
    const seen: unknown[] = [];
    const errors: string[] = [];
    const parser = createLineParser(
      (v) => seen.push(v),
      (line) => errors.push(line),
    );
    parser.push("\n\n{oops}\n{}\n");
    expect(seen).toEqual([{}]);
    expect(errors).toEqual(["{oops}"]);
  });
});
