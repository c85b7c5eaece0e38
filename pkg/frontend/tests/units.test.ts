import { describe, expect, it } from "vitest";

import { QuantityError, formatSi, parseQuantity } from "../src/units.js";

describe("unit grammar", () => {
  it("parses component and frequency suffixes", () => {
    expect(parseQuantity("6.8nH", "H")).toBeCloseTo(6.8e-9, 20);
    expect(parseQuantity("1.2pF", "F")).toBeCloseTo(1.2e-12, 24);
    expect(parseQuantity("915MHz", "Hz")).toBe(915e6);
    expect(parseQuantity("50ohm", "ohm")).toBe(50);
  });

  it("keeps prefixes case-sensitive", () => {
    expect(parseQuantity("1mHz", "Hz")).toBeCloseTo(1e-3, 12);
    expect(parseQuantity("1MHz", "Hz")).toBe(1e6);
  });

  it("accepts bare numbers as base units", () => {
    expect(parseQuantity("42", "H")).toBe(42);
  });

  it("rejects wrong units and garbage", () => {
    expect(() => parseQuantity("6.8nH", "F")).toThrow(QuantityError);
    expect(() => parseQuantity("squirrel", "Hz")).toThrow(QuantityError);
  });

  it("formats engineering values", () => {
    expect(formatSi(6.8e-9, "H")).toBe("6.8 nH");
    expect(formatSi(915e6, "Hz")).toBe("915 MHz");
  });
});
