import type { ApiState, ApiVertex } from "./types.js";

export interface Placed {
  vertex: ApiVertex;
  x: number;
  y: number;
}

export const COL_WIDTH = 190;
export const ROW_HEIGHT = 46;
export const MARGIN = 70;

/**
 * Grid layout from the (i, r) coordinates: one column per Dynkin node i,
 * r increasing upward (larger r renders higher), matching the printed
 * pictures.
 */
export function layout(state: ApiState): {
  placed: Map<string, Placed>;
  width: number;
  height: number;
} {
  const rs = state.vertices.map((v) => v.r);
  const is = state.vertices.map((v) => v.i);
  const rMax = Math.max(...rs);
  const rMin = Math.min(...rs);
  const iMax = Math.max(...is);
  const placed = new Map<string, Placed>();
  for (const v of state.vertices) {
    placed.set(`${v.i},${v.r}`, {
      vertex: v,
      x: MARGIN + (v.i - 1) * COL_WIDTH,
      y: MARGIN + (rMax - v.r) * (ROW_HEIGHT / 2),
    });
  }
  return {
    placed,
    width: 2 * MARGIN + (iMax - 1) * COL_WIDTH,
    height: 2 * MARGIN + (rMax - rMin) * (ROW_HEIGHT / 2),
  };
}
