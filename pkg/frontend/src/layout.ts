import type { EdgePair } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

/** Deterministic 32-bit PRNG so layouts (and screenshots) reproduce. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/** Simple force-directed layout: spring attraction along edges, pairwise
 * repulsion, linear cooling. Pure function of its arguments. */
export function forceLayout(
  n: number,
  edges: EdgePair[],
  width: number,
  height: number,
  seed = 42,
  iterations = 250,
): Point[] {
  if (n === 0) return [];
  const rng = mulberry32(seed);
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) * 0.38;
  const pos: Point[] = [];
  for (let i = 0; i < n; i++) {
    const angle = (2 * Math.PI * i) / n;
    pos.push({
      x: cx + radius * Math.cos(angle) + (rng() - 0.5) * 10,
      y: cy + radius * Math.sin(angle) + (rng() - 0.5) * 10,
    });
  }
  if (n === 1) return pos;
  const k = Math.sqrt((width * height) / n) * 0.6;
  for (let iter = 0; iter < iterations; iter++) {
    const disp: Point[] = pos.map(() => ({ x: 0, y: 0 }));
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let dx = pos[i].x - pos[j].x;
        let dy = pos[i].y - pos[j].y;
        let d = Math.hypot(dx, dy);
        if (d < 1e-6) {
          dx = 1e-3 * (i - j);
          dy = 1e-3;
          d = Math.hypot(dx, dy);
        }
        const force = (k * k) / d;
        disp[i].x += (dx / d) * force;
        disp[i].y += (dy / d) * force;
        disp[j].x -= (dx / d) * force;
        disp[j].y -= (dy / d) * force;
      }
    }
    for (const [u, v] of edges) {
      let dx = pos[u].x - pos[v].x;
      let dy = pos[u].y - pos[v].y;
      const d = Math.max(Math.hypot(dx, dy), 1e-6);
      const force = (d * d) / k;
      disp[u].x -= (dx / d) * force;
      disp[u].y -= (dy / d) * force;
      disp[v].x += (dx / d) * force;
      disp[v].y += (dy / d) * force;
    }
    const temp = (1 - iter / iterations) * k * 0.5;
    for (let i = 0; i < n; i++) {
      const d = Math.max(Math.hypot(disp[i].x, disp[i].y), 1e-6);
      const step = Math.min(d, temp);
      pos[i].x += (disp[i].x / d) * step;
      pos[i].y += (disp[i].y / d) * step;
      pos[i].x = Math.min(width - 30, Math.max(30, pos[i].x));
      pos[i].y = Math.min(height - 30, Math.max(30, pos[i].y));
    }
  }
  return pos.map((p) => ({ x: Math.round(p.x * 100) / 100, y: Math.round(p.y * 100) / 100 }));
}
