/**
 * S11-versus-frequency panel: sweep curve, the -10 dB acceptability line,
 * dip annotation, and an optional measured-overlay curve. Dip selection
 * picks the service-supplied minimum sample; no dB math happens here.
 */

import type { SweepResult } from "./api.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface SweepRender {
  dipFrequencyHz: number;
  dipS11Db: number;
}

interface Extent {
  fMin: number;
  fMax: number;
  dbMin: number;
  dbMax: number;
}

function node<K extends keyof SVGElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const el = doc.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, String(value));
  return el;
}

function extentOf(curves: SweepResult[]): Extent {
  const all = curves.flatMap((c) => c.points);
  const dbValues = all.map((p) => p.s11_db);
  return {
    fMin: Math.min(...all.map((p) => p.frequency_hz)),
    fMax: Math.max(...all.map((p) => p.frequency_hz)),
    dbMin: Math.min(...dbValues, -25),
    dbMax: Math.max(...dbValues, 0),
  };
}

export function renderSweep(
  svg: SVGSVGElement,
  sweep: SweepResult,
  overlay: SweepResult | null = null,
  width = 640,
  height = 300,
): SweepRender {
  const doc = svg.ownerDocument;
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height));
  while (svg.firstChild) svg.removeChild(svg.firstChild);

  const margin = { left: 48, right: 12, top: 10, bottom: 28 };
  const curves = overlay ? [sweep, overlay] : [sweep];
  const extent = extentOf(curves);
  const spanF = extent.fMax - extent.fMin || 1;
  const spanDb = extent.dbMax - extent.dbMin || 1;
  const x = (hz: number) =>
    margin.left + ((hz - extent.fMin) / spanF) * (width - margin.left - margin.right);
  const y = (db: number) =>
    margin.top + ((extent.dbMax - db) / spanDb) * (height - margin.top - margin.bottom);

  svg.appendChild(
    node(doc, "rect", {
      x: margin.left,
      y: margin.top,
      width: width - margin.left - margin.right,
      height: height - margin.top - margin.bottom,
      fill: "none",
      stroke: "#999",
    }),
  );

  // -10 dB acceptability threshold
  const threshold = node(doc, "line", {
    x1: x(extent.fMin),
    x2: x(extent.fMax),
    y1: y(-10),
    y2: y(-10),
    stroke: "#c0392b",
    "stroke-dasharray": "6,4",
    class: "threshold-line",
  });
  svg.appendChild(threshold);

  const toPolyline = (result: SweepResult): string =>
    result.points.map((p) => `${x(p.frequency_hz)},${y(p.s11_db)}`).join(" ");

  if (overlay) {
    svg.appendChild(
      node(doc, "polyline", {
        points: toPolyline(overlay),
        fill: "none",
        stroke: "#888",
        "stroke-width": 1.5,
        class: "overlay-curve",
      }),
    );
  }
  svg.appendChild(
    node(doc, "polyline", {
      points: toPolyline(sweep),
      fill: "none",
      stroke: "#2471a3",
      "stroke-width": 2,
      class: "sweep-curve",
    }),
  );

  // dip annotation: the minimum service sample, earliest frequency on ties
  let dip = sweep.points[0]!;
  for (const p of sweep.points) {
    if (p.s11_db < dip.s11_db) dip = p;
  }
  svg.appendChild(
    node(doc, "circle", { cx: x(dip.frequency_hz), cy: y(dip.s11_db), r: 4, fill: "#c0392b", class: "dip-marker" }),
  );
  const label = node(doc, "text", {
    x: Math.min(x(dip.frequency_hz) + 8, width - 150),
    y: Math.max(y(dip.s11_db) - 8, 14),
    "font-size": 12,
    class: "dip-label",
  });
  label.textContent = `dip ${dip.s11_db.toFixed(2)} dB @ ${(dip.frequency_hz / 1e6).toFixed(1)} MHz`;
  svg.appendChild(label);

  return { dipFrequencyHz: dip.frequency_hz, dipS11Db: dip.s11_db };
}
