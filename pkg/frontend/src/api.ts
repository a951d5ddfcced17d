import type { ApiState, VertexId } from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    detail: string,
  ) {
    super(detail);
  }
}

async function asState(res: Response): Promise<ApiState> {
  if (!res.ok) {
    let detail = res.statusText;
    try {
      const body = await res.json();
      if (typeof body.detail === "string") detail = body.detail;
    } catch {
      // keep the status text
    }
    throw new ApiError(res.status, detail);
  }
  return (await res.json()) as ApiState;
}

/** Thin typed client for the seed-session endpoints. */
export class SeedApi {
  constructor(private base: string = "") {}

  getState(): Promise<ApiState> {
    return fetch(`${this.base}/api/state`).then(asState);
  }

  mutate(vertex: VertexId): Promise<ApiState> {
    return fetch(`${this.base}/api/mutate`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ vertex }),
    }).then(asState);
  }

  undo(): Promise<ApiState> {
    return fetch(`${this.base}/api/undo`, { method: "POST" }).then(asState);
  }

  reset(): Promise<ApiState> {
    return fetch(`${this.base}/api/reset`, { method: "POST" }).then(asState);
  }
}
