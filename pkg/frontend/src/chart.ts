/**
 * SVG Smith-chart renderer.
 *
 * Draws gridlines, the trajectory arcs delivered by the service, start and
 * current markers, and the S11 readout. All plotted values come straight
 * from a SessionState; the only local computation is the view transform.
 */

import type { SessionState, TrajectoryArc } from "./api.js";
import {
  CONDUCTANCE_GRID,
  REACTANCE_GRID,
  RESISTANCE_GRID,
  ViewTransform,
  clampToDisk,
  conductanceCircle,
  isClipped,
  reactanceArc,
  resistanceCircle,
  toPixels,
} from "./smith.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface ChartOptions {
  size?: number;
  animateMs?: number;
}

export interface RenderedChart {
  markerPx: [number, number] | null;
  readoutText: string;
  clippedPoints: number;
}

function svgNode<K extends keyof SVGElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const node = doc.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
  return node;
}

function polylineAttr(points: [number, number][]): string {
  return points.map(([x, y]) => `${x},${y}`).join(" ");
}

function drawGrid(doc: Document, svg: SVGSVGElement, view: ViewTransform) {
  const grid = svgNode(doc, "g", { class: "grid", stroke: "#c8c8c8", fill: "none" });
  const [cx, cy] = toPixels(0, 0, view);
  const unitRadius = view.size / 2 - view.margin;
  grid.appendChild(
    svgNode(doc, "circle", { cx, cy, r: unitRadius, "stroke-width": 1.2, stroke: "#555" }),
  );
  for (const r of RESISTANCE_GRID) {
    const circle = resistanceCircle(r);
    const [px, py] = toPixels(circle.cx, circle.cy, view);
    grid.appendChild(
      svgNode(doc, "circle", { cx: px, cy: py, r: circle.radius * unitRadius, "stroke-width": 0.5 }),
    );
  }
  for (const g of CONDUCTANCE_GRID) {
    const circle = conductanceCircle(g);
    const [px, py] = toPixels(circle.cx, circle.cy, view);
    grid.appendChild(
      svgNode(doc, "circle", {
        cx: px,
        cy: py,
        r: circle.radius * unitRadius,
        "stroke-width": 0.5,
        "stroke-dasharray": "3,3",
        stroke: "#d8d8e8",
      }),
    );
  }
  for (const x of REACTANCE_GRID) {
    const arc = reactanceArc(x);
    if (arc.length < 2) continue;
    grid.appendChild(
      svgNode(doc, "polyline", {
        points: polylineAttr(arc.map(([gr, gi]) => toPixels(gr, gi, view))),
        "stroke-width": 0.4,
      }),
    );
  }
  svg.appendChild(grid);
}

function animatePath(node: SVGPolylineElement, svg: SVGSVGElement, durationMs: number) {
  const totalLength =
    typeof node.getTotalLength === "function" ? safeLength(node) : 0;
  if (!durationMs || !totalLength || typeof requestAnimationFrame !== "function") {
    return;
  }
  node.setAttribute("stroke-dasharray", String(totalLength));
  node.setAttribute("stroke-dashoffset", String(totalLength));
  let skipped = false;
  const finish = () => {
    skipped = true;
    node.removeAttribute("stroke-dasharray");
    node.removeAttribute("stroke-dashoffset");
  };
  svg.addEventListener("click", finish, { once: true }); // click skips the reveal
  const started = Date.now();
  const step = () => {
    if (skipped) return;
    const t = Math.min(1, (Date.now() - started) / durationMs);
    node.setAttribute("stroke-dashoffset", String(totalLength * (1 - t)));
    if (t < 1) requestAnimationFrame(step);
    else svg.removeEventListener("click", finish);
  };
  requestAnimationFrame(step);
}

function safeLength(node: SVGPolylineElement): number {
  try {
    return node.getTotalLength();
  } catch {
    return 0;
  }
}

export function renderChart(
  svg: SVGSVGElement,
  state: SessionState | null,
  options: ChartOptions = {},
): RenderedChart {
  const doc = svg.ownerDocument;
  const size = options.size ?? 600;
  const view: ViewTransform = { size, margin: 20 };
  svg.setAttribute("viewBox", `0 0 ${size} ${size}`);
  svg.setAttribute("width", String(size));
  svg.setAttribute("height", String(size));
  while (svg.firstChild) svg.removeChild(svg.firstChild);

  drawGrid(doc, svg, view);

  // center target cross
  const [centerX, centerY] = toPixels(0, 0, view);
  const target = svgNode(doc, "g", { class: "target", stroke: "#777" });
  target.appendChild(svgNode(doc, "line", { x1: centerX - 6, y1: centerY, x2: centerX + 6, y2: centerY }));
  target.appendChild(svgNode(doc, "line", { x1: centerX, y1: centerY - 6, x2: centerX, y2: centerY + 6 }));
  svg.appendChild(target);

  if (!state) {
    return { markerPx: null, readoutText: "", clippedPoints: 0 };
  }

  let clippedPoints = 0;
  const plot = (gr: number, gi: number): [number, number] => {
    if (isClipped(gr, gi)) clippedPoints += 1;
    const [cr, ci] = clampToDisk(gr, gi);
    return toPixels(cr, ci, view);
  };

  const trajectories = svgNode(doc, "g", { class: "trajectories", fill: "none" });
  state.arcs.forEach((arc: TrajectoryArc, index: number) => {
    const isLast = index === state.arcs.length - 1;
    const node = svgNode(doc, "polyline", {
      points: polylineAttr(arc.points.map((p) => plot(p.real, p.imag))),
      stroke: arc.element.placement === "series" ? "#c0392b" : "#2471a3",
      "stroke-width": 2,
      class: `arc arc-${arc.element_index}`,
    });
    trajectories.appendChild(node);
    if (isLast && options.animateMs) animatePath(node, svg, options.animateMs);
  });
  svg.appendChild(trajectories);

  // start marker: the unmatched load point (first arc start, else current)
  const startGamma = state.arcs.length > 0 ? state.arcs[0]!.points[0]! : state.gamma;
  const [sx, sy] = plot(startGamma.real, startGamma.imag);
  svg.appendChild(
    svgNode(doc, "circle", { cx: sx, cy: sy, r: 5, fill: "none", stroke: "#444", class: "start-marker" }),
  );

  // current marker
  const [mx, my] = plot(state.gamma.real, state.gamma.imag);
  svg.appendChild(
    svgNode(doc, "circle", { cx: mx, cy: my, r: 5, fill: "#27ae60", class: "current-marker" }),
  );

  // S11 readout straight from the service value
  const readoutText = `S11 ${state.s11_db.toFixed(2)} dB @ ${(state.f0_hz / 1e6).toFixed(1)} MHz`;
  const label = svgNode(doc, "text", { x: 12, y: 24, class: "readout", "font-size": 16 });
  label.textContent = readoutText;
  svg.appendChild(label);

  if (clippedPoints > 0) {
    const badge = svgNode(doc, "text", {
      x: 12,
      y: size - 12,
      class: "clip-warning",
      fill: "#c0392b",
      "font-size": 14,
    });
    badge.textContent = `warning: ${clippedPoints} point(s) outside the unit circle were clipped`;
    svg.appendChild(badge);
  }

  return { markerPx: [mx, my], readoutText, clippedPoints };
}
