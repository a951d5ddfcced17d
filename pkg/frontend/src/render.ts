import { layout } from "./layout.js";
import type { ApiState, VertexId } from "./types.js";
import { idKey } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const FILL: Record<string, string> = {
  black: "#1f1f1f",
  red: "#c0392b",
  green: "#1e8449",
};

export type ClickHandler = (id: VertexId) => void;

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v));
  return node;
}

/**
 * Render the whole seed view as an SVG element.  Pure function of the
 * server state: no local bookkeeping beyond the click callback.
 */
export function renderSeedView(
  state: ApiState,
  onClick?: ClickHandler,
  busy = false,
): SVGSVGElement {
  const { placed, width, height } = layout(state);
  const svg = el("svg", {
    width,
    height,
    viewBox: `0 0 ${width} ${height}`,
  });
  svg.dataset.busy = busy ? "true" : "false";

  const defs = el("defs", {});
  const marker = el("marker", {
    id: "arrowhead",
    markerWidth: 7,
    markerHeight: 7,
    refX: 6,
    refY: 2.5,
    orient: "auto",
  });
  marker.appendChild(el("path", { d: "M0,0 L6,2.5 L0,5 z", fill: "#555" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  // arrows under the vertices; bundle multiplicities into one line + count
  const bundled = new Map<string, { a: VertexId; b: VertexId; mult: number }>();
  for (const [a, b] of state.arrows) {
    const key = `${idKey(a)}->${idKey(b)}`;
    const cur = bundled.get(key);
    if (cur) cur.mult += 1;
    else bundled.set(key, { a, b, mult: 1 });
  }
  for (const { a, b, mult } of bundled.values()) {
    const pa = placed.get(idKey(a));
    const pb = placed.get(idKey(b));
    if (!pa || !pb) continue;
    const dx = pb.x - pa.x;
    const dy = pb.y - pa.y;
    const len = Math.hypot(dx, dy) || 1;
    const pad = 16;
    const line = el("line", {
      x1: pa.x + (dx / len) * pad,
      y1: pa.y + (dy / len) * pad,
      x2: pb.x - (dx / len) * pad,
      y2: pb.y - (dy / len) * pad,
      stroke: "#555",
      "stroke-width": 1.2,
      "marker-end": "url(#arrowhead)",
    });
    svg.appendChild(line);
    if (mult > 1) {
      const label = el("text", {
        x: (pa.x + pb.x) / 2 + 6,
        y: (pa.y + pb.y) / 2 - 4,
        "font-size": 11,
        fill: "#555",
      });
      label.textContent = `×${mult}`;
      svg.appendChild(label);
    }
  }

  for (const { vertex, x, y } of placed.values()) {
    const group = el("g", {});
    group.classList.add("vertex");
    group.dataset.id = idKey(vertex.id);
    group.dataset.frozen = vertex.frozen ? "true" : "false";
    const shape = vertex.frozen
      ? el("rect", {
          x: x - 9,
          y: y - 9,
          width: 18,
          height: 18,
          fill: "white",
          stroke: FILL[vertex.color] ?? "#1f1f1f",
          "stroke-width": 2.5,
        })
      : el("circle", {
          cx: x,
          cy: y,
          r: 10,
          fill: FILL[vertex.color] ?? "#1f1f1f",
        });
    if (!vertex.frozen && !busy) group.classList.add("clickable");
    group.appendChild(shape);

    const text = el("text", {
      x: x + 14,
      y: y - 2,
      "font-size": 12,
      fill: "#333",
    });
    text.classList.add("label");
    text.textContent = vertex.label ?? "";
    group.appendChild(text);

    if (vertex.value !== undefined) {
      const value = el("text", {
        x: x + 14,
        y: y + 12,
        "font-size": 12,
        "font-weight": "bold",
        fill: "#000",
      });
      value.classList.add("value");
      value.textContent = vertex.value;
      group.appendChild(value);
    }
    if (onClick) {
      group.addEventListener("click", () => onClick(vertex.id));
    }
    svg.appendChild(group);
  }
  return svg;
}

/** The " (1,0) (2,-1) ..." history line. */
export function renderHistory(state: ApiState): string {
  if (state.history.length === 0) return "(initial seed)";
  return state.history.map((v) => `(${v[0]},${v[1]})`).join(" → ");
}
