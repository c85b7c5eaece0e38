/**
 * Smith-chart geometry: fixed gridline construction and the pixel mapping.
 *
 * These are chart furniture (the classic circle families of the reflection
 * plane) plus a linear view transform. Session data is never recomputed
 * here; trajectory points arrive from the service ready to plot.
 */

export interface Circle {
  cx: number;
  cy: number;
  radius: number;
}

/** Constant-resistance circle for normalized resistance r >= 0. */
export function resistanceCircle(r: number): Circle {
  return { cx: r / (1 + r), cy: 0, radius: 1 / (1 + r) };
}

/** Constant-conductance circle for normalized conductance g >= 0 (mirrored family). */
export function conductanceCircle(g: number): Circle {
  return { cx: -g / (1 + g), cy: 0, radius: 1 / (1 + g) };
}

/**
 * Constant-reactance arc for normalized reactance x != 0, sampled and
 * clipped to the unit disk. Returns a polyline in gamma coordinates.
 */
export function reactanceArc(x: number, samples = 181): [number, number][] {
  const radius = 1 / Math.abs(x);
  const cy = x > 0 ? radius : -radius;
  const points: [number, number][] = [];
  for (let i = 0; i < samples; i++) {
    const theta = (2 * Math.PI * i) / (samples - 1);
    const px = 1 + radius * Math.cos(theta);
    const py = cy + radius * Math.sin(theta);
    if (px * px + py * py <= 0.9999) {
      points.push([px, py]);
    }
  }
  return points;
}

export interface ViewTransform {
  size: number;
  margin: number;
}

/** Map a gamma-plane point onto SVG pixel coordinates (y grows downward). */
export function toPixels(
  gammaReal: number,
  gammaImag: number,
  view: ViewTransform,
): [number, number] {
  const half = view.size / 2;
  const scale = half - view.margin;
  return [half + gammaReal * scale, half - gammaImag * scale];
}

/** True when a reflection point lies outside the passive unit disk. */
export function isClipped(gammaReal: number, gammaImag: number): boolean {
  return Math.hypot(gammaReal, gammaImag) > 1.000001;
}

/** Clamp a clipped point back onto the unit circle for display. */
export function clampToDisk(gammaReal: number, gammaImag: number): [number, number] {
  const mag = Math.hypot(gammaReal, gammaImag);
  if (mag <= 1) return [gammaReal, gammaImag];
  return [gammaReal / mag, gammaImag / mag];
}

export const RESISTANCE_GRID = [0.2, 0.5, 1, 2, 5];
export const REACTANCE_GRID = [0.2, 0.5, 1, 2, 5, -0.2, -0.5, -1, -2, -5];
export const CONDUCTANCE_GRID = [0.2, 0.5, 1, 2, 5];
