"""Complex-valued RF primitives: impedance, admittance, reflection, skin depth.

Sign convention (used everywhere in this package): time-harmonic e^{+jwt},
so an ideal inductor has impedance +jwL and an ideal capacitor -j/(wC).
All quantities are SI doubles; human units (MHz, nH, pF) exist only at I/O
boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

MU_0 = 4 * math.pi * 1e-7  # vacuum permeability [H/m]

# Degenerate-denominator guard for gamma = (Z - Z0)/(Z + Z0) [ohms]
DENOMINATOR_EPS = 1e-12

# |gamma| = 0 has S11 = -inf; file/API output clamps to this floor [dB]
S11_FLOOR_DB = -200.0


class DegenerateValueError(ValueError):
    """Raised when a reciprocal or quotient has a vanishing denominator."""


@dataclass(frozen=True)
class Frequency:
    """A positive frequency in hertz."""

    hertz: float

    def __post_init__(self):
        if not (self.hertz > 0 and math.isfinite(self.hertz)):
            raise ValueError(f"frequency must be positive and finite, got {self.hertz}")

    @property
    def omega(self) -> float:
        """Angular frequency w = 2*pi*f [rad/s]."""
        return 2 * math.pi * self.hertz


@dataclass(frozen=True)
class Impedance:
    """Complex impedance R + jX in ohms."""

    resistance: float
    reactance: float

    def __post_init__(self):
        if not (math.isfinite(self.resistance) and math.isfinite(self.reactance)):
            raise ValueError("impedance parts must be finite")

    @classmethod
    def from_complex(cls, z: complex) -> "Impedance":
        return cls(z.real, z.imag)

    def to_complex(self) -> complex:
        return complex(self.resistance, self.reactance)


@dataclass(frozen=True)
class Admittance:
    """Complex admittance G + jB in siemens."""

    conductance: float
    susceptance: float

    def __post_init__(self):
        if not (math.isfinite(self.conductance) and math.isfinite(self.susceptance)):
            raise ValueError("admittance parts must be finite")

    @classmethod
    def from_complex(cls, y: complex) -> "Admittance":
        return cls(y.real, y.imag)

    def to_complex(self) -> complex:
        return complex(self.conductance, self.susceptance)


@dataclass(frozen=True)
class ReflectionCoefficient:
    """Complex voltage reflection coefficient (dimensionless)."""

    real: float
    imag: float

    @classmethod
    def from_complex(cls, g: complex) -> "ReflectionCoefficient":
        return cls(g.real, g.imag)

    def to_complex(self) -> complex:
        return complex(self.real, self.imag)

    @property
    def magnitude(self) -> float:
        return abs(self.to_complex())


@dataclass(frozen=True)
class ReferenceImpedance:
    """Real, positive reference impedance (default 50 ohms)."""

    ohms: float = 50.0

    def __post_init__(self):
        if not (self.ohms > 0 and math.isfinite(self.ohms)):
            raise ValueError(f"reference impedance must be positive, got {self.ohms}")


@dataclass(frozen=True)
class MaterialSpec:
    """Conductor material: resistivity [ohm*m] and relative permeability."""

    resistivity: float
    relative_permeability: float = 1.0

    def __post_init__(self):
        if not (self.resistivity > 0 and self.relative_permeability > 0):
            raise ValueError("material parameters must be positive")


COPPER = MaterialSpec(resistivity=1.68e-8, relative_permeability=1.0)


def reflection_coefficient(z: Impedance, z0: ReferenceImpedance) -> ReflectionCoefficient:
    """Voltage reflection coefficient gamma = (Z - Z0)/(Z + Z0)."""
    zc = z.to_complex()
    den = zc + z0.ohms
    if abs(den) < DENOMINATOR_EPS:
        raise DegenerateValueError(
            f"|Z + Z0| = {abs(den):g} ohm is below {DENOMINATOR_EPS:g}; "
            "reflection coefficient is undefined"
        )
    return ReflectionCoefficient.from_complex((zc - z0.ohms) / den)


def s11_db(g: ReflectionCoefficient) -> float:
    """S11 in decibels: 20*log10|gamma| (equals 10*log10 of the power ratio).

    A perfect match (|gamma| = 0) returns -inf; use s11_db_floored for
    anything that gets serialized.
    """
    mag = g.magnitude
    if mag == 0.0:
        return float("-inf")
    return 20.0 * math.log10(mag)


def s11_db_floored(g: ReflectionCoefficient) -> float:
    """S11 in dB clamped at the -200 dB serialization floor."""
    return max(s11_db(g), S11_FLOOR_DB)


def skin_depth(m: MaterialSpec, f: Frequency) -> float:
    """Skin depth delta = sqrt(rho / (pi * f * mu0 * mur)) in meters."""
    return math.sqrt(m.resistivity / (math.pi * f.hertz * MU_0 * m.relative_permeability))


def impedance_to_admittance(z: Impedance) -> Admittance:
    """Exact complex reciprocal Y = 1/Z."""
    zc = z.to_complex()
    if abs(zc) == 0.0:
        raise DegenerateValueError("cannot invert zero-magnitude impedance")
    return Admittance.from_complex(1.0 / zc)


def admittance_to_impedance(y: Admittance) -> Impedance:
    """Exact complex reciprocal Z = 1/Y."""
    yc = y.to_complex()
    if abs(yc) == 0.0:
        raise DegenerateValueError("cannot invert zero-magnitude admittance")
    return Impedance.from_complex(1.0 / yc)
