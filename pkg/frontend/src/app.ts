import { ApiError, SeedApi } from "./api.js";
import { renderHistory, renderSeedView } from "./render.js";
import type { ApiState, VertexId } from "./types.js";

export interface AppHooks {
  /** Called with every toast message (errors, blocked clicks). */
  toast?: (message: string) => void;
}

/**
 * The explorer: renders the server state into `root`, drives mutations
 * from clicks, and serializes user actions with an in-flight guard.
 * All math happens server-side; this class only re-renders responses.
 */
export class SeedExplorer {
  state: ApiState | null = null;
  inFlight = false;

  constructor(
    private root: HTMLElement,
    private api: SeedApi,
    private hooks: AppHooks = {},
  ) {}

  async start(): Promise<void> {
    this.render(await this.api.getState());
  }

  render(state: ApiState): void {
    this.state = state;
    this.root.replaceChildren();

    const bar = document.createElement("div");
    bar.className = "toolbar";
    const undo = document.createElement("button");
    undo.textContent = "undo";
    undo.dataset.action = "undo";
    undo.disabled = this.inFlight || state.history.length === 0;
    undo.addEventListener("click", () => void this.undo());
    const reset = document.createElement("button");
    reset.textContent = "reset";
    reset.dataset.action = "reset";
    reset.disabled = this.inFlight;
    reset.addEventListener("click", () => void this.reset());
    const history = document.createElement("span");
    history.className = "history";
    history.textContent = renderHistory(state);
    bar.append(undo, reset, history);
    this.root.appendChild(bar);

    this.root.appendChild(
      renderSeedView(state, (id) => void this.onVertexClick(id), this.inFlight),
    );
  }

  private toast(message: string): void {
    this.hooks.toast?.(message);
    const note = document.createElement("div");
    note.className = "toast";
    note.textContent = message;
    this.root.appendChild(note);
    setTimeout(() => note.remove(), 4000);
  }

  async onVertexClick(id: VertexId): Promise<void> {
    if (this.inFlight || !this.state) return;
    const vertex = this.state.vertices.find(
      (v) => v.id[0] === id[0] && v.id[1] === id[1],
    );
    if (vertex?.frozen) {
      this.toast(`vertex (${id[0]},${id[1]}) is frozen`);
      return;
    }
    await this.run(() => this.api.mutate(id));
  }

  undo(): Promise<void> {
    return this.run(() => this.api.undo());
  }

  reset(): Promise<void> {
    return this.run(() => this.api.reset());
  }

  /** Optimistically disable the view, call the server, re-render. */
  private async run(op: () => Promise<ApiState>): Promise<void> {
    if (this.inFlight) return;
    this.inFlight = true;
    if (this.state) this.render(this.state); // disabled view during flight
    try {
      const next = await op();
      this.inFlight = false;
      this.render(next);
    } catch (err) {
      this.inFlight = false;
      if (this.state) this.render(this.state); // view unchanged
      if (err instanceof ApiError) this.toast(err.message);
      else this.toast(String(err));
    }
  }
}
