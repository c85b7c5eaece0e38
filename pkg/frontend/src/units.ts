/**
 * Unit-suffix grammar for palette inputs: 6.8nH, 1.2pF, 915MHz, 50ohm.
 * Mirrors the service CLI grammar; prefixes are case-sensitive.
 */

const PREFIX_EXPONENT: Record<string, number> = {
  f: -15,
  p: -12,
  n: -9,
  u: -6,
  "µ": -6,
  m: -3,
  k: 3,
  M: 6,
  G: 9,
  T: 12,
};

const UNIT_ALIASES: Record<string, string> = {
  Hz: "Hz",
  H: "H",
  F: "F",
  ohm: "ohm",
  Ohm: "ohm",
};

const NUMBER_RE = /^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)(.*)$/;

export class QuantityError extends Error {}

export function parseQuantity(text: string, unit: string): number {
  const match = NUMBER_RE.exec(text.trim());
  if (!match || match[1] === undefined) {
    throw new QuantityError(`cannot parse quantity '${text}'`);
  }
  const value = Number(match[1]);
  const suffix = (match[2] ?? "").trim();
  if (suffix === "") return value;

  for (const [alias, canonical] of Object.entries(UNIT_ALIASES)) {
    if (canonical !== unit) continue;
    if (suffix === alias) return value;
    if (suffix.endsWith(alias)) {
      const prefix = suffix.slice(0, suffix.length - alias.length);
      const exponent = PREFIX_EXPONENT[prefix];
      if (exponent !== undefined) return value * 10 ** exponent;
    }
  }
  throw new QuantityError(`expected a value in ${unit}, cannot parse '${text}'`);
}

export function formatSi(value: number, unit: string): string {
  if (value === 0) return `0 ${unit}`;
  const steps: [number, string][] = [
    [1e12, "T"], [1e9, "G"], [1e6, "M"], [1e3, "k"], [1, ""],
    [1e-3, "m"], [1e-6, "u"], [1e-9, "n"], [1e-12, "p"], [1e-15, "f"],
  ];
  const magnitude = Math.abs(value);
  for (const [scale, prefix] of steps) {
    if (magnitude >= scale) {
      return `${Number((value / scale).toPrecision(4))} ${prefix}${unit}`;
    }
  }
  return `${value} ${unit}`;
}
