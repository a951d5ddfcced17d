/** Wire types of the seed-session JSON API. */

export type VertexId = [number, number];

export interface ApiVertex {
  id: VertexId;
  i: number;
  r: number;
  color: "black" | "red" | "green";
  frozen: boolean;
  label: string | null;
  value?: string;
}

export interface ApiState {
  vertices: ApiVertex[];
  /** One entry per arrow, repeated for multiplicities. */
  arrows: [VertexId, VertexId][];
  history: VertexId[];
  n: number;
  window: [number, number];
}

export const idKey = (id: VertexId): string => `${id[0]},${id[1]}`;
