import { describe, expect, it } from "vitest";

import { forceLayout, mulberry32 } from "../src/layout.js";
import type { EdgePair } from "../src/types.js";

const edges: EdgePair[] = [
  [0, 1],
  [1, 2],
  [2, 3],
  [0, 4],
];

describe("deterministic layout", () => {
  it("mulberry32 reproduces its sequence", () => {
    const a = mulberry32(7);
    const b = mulberry32(7);
    const seqA = Array.from({ length: 5 }, () => a());
    const seqB = Array.from({ length: 5 }, () => b());
    expect(seqA).toEqual(seqB);
  });

  it("same inputs give identical positions", () => {
    const first = forceLayout(5, edges, 900, 620, 42);
    const second = forceLayout(5, edges, 900, 620, 42);
    expect(first).toEqual(second);
  });

  it("different seeds move nodes", () => {
    const a = forceLayout(5, edges, 900, 620, 42);
    const b = forceLayout(5, edges, 900, 620, 43);
    expect(a).not.toEqual(b);
  });

  it("keeps every node inside the frame", () => {
    const pos = forceLayout(18, edges, 900, 620, 42);
    expect(pos).toHaveLength(18);
    for (const p of pos) {
      expect(p.x).toBeGreaterThanOrEqual(30);
      expect(p.x).toBeLessThanOrEqual(870);
      expect(p.y).toBeGreaterThanOrEqual(30);
      expect(p.y).toBeLessThanOrEqual(590);
    }
  });

  it("handles tiny graphs", () => {
    expect(forceLayout(0, [], 100, 100)).toEqual([]);
    expect(forceLayout(1, [], 100, 100)).toHaveLength(1);
  });
});
