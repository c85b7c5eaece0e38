"""Lumped-element matching networks over frequency-dependent loads.

Networks are ordered lists of series/shunt elements, index 0 nearest the
LOAD; evaluation folds element by element toward the source. Getting this
direction wrong is the classic matching-network bug, so it is stated here
once and assumed everywhere: ``elements[0]`` touches the antenna.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .rfcore import (
    DegenerateValueError,
    Frequency,
    Impedance,
    ReferenceImpedance,
    ReflectionCoefficient,
    S11_FLOOR_DB,
    reflection_coefficient,
    s11_db_floored,
)
from .touchstone import TouchstoneDataset, interpolate_gamma

INDUCTOR = "inductor"
CAPACITOR = "capacitor"
RESISTOR = "resistor"
KINDS = (INDUCTOR, CAPACITOR, RESISTOR)

SERIES = "series"
SHUNT = "shunt"
PLACEMENTS = (SERIES, SHUNT)

MAX_ELEMENTS = 8

# Default sweep grid for the 915 MHz use case (VNA-style span)
DEFAULT_SWEEP_START_HZ = 700e6
DEFAULT_SWEEP_STOP_HZ = 1100e6
DEFAULT_SWEEP_POINTS = 201


class DegenerateNetworkError(ValueError):
    """Network evaluation hit a zero-magnitude reciprocal."""


@dataclass(frozen=True)
class LadderElement:
    """One series or shunt L/C/R element, optionally lossy via Q.

    quality_factor None means ideal; a finite Q adds series resistance
    |X|/Q to reactive elements.
    """

    kind: str
    placement: str
    value: float
    quality_factor: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown element kind {self.kind!r}")
        if self.placement not in PLACEMENTS:
            raise ValueError(f"unknown placement {self.placement!r}")
        if not (self.value > 0 and math.isfinite(self.value)):
            raise ValueError(f"element value must be positive and finite, got {self.value}")
        if self.quality_factor is not None and not self.quality_factor > 0:
            raise ValueError("quality_factor must be positive when given")


def series_l(value: float, q: float | None = None) -> LadderElement:
    return LadderElement(INDUCTOR, SERIES, value, q)


def series_c(value: float, q: float | None = None) -> LadderElement:
    return LadderElement(CAPACITOR, SERIES, value, q)


def shunt_l(value: float, q: float | None = None) -> LadderElement:
    return LadderElement(INDUCTOR, SHUNT, value, q)


def shunt_c(value: float, q: float | None = None) -> LadderElement:
    return LadderElement(CAPACITOR, SHUNT, value, q)


@dataclass(frozen=True)
class MatchingNetwork:
    """Ordered ladder, elements[0] nearest the load."""

    elements: tuple[LadderElement, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if len(self.elements) > MAX_ELEMENTS:
            raise ValueError(f"network exceeds {MAX_ELEMENTS} elements")

    def appended(self, e: LadderElement) -> "MatchingNetwork":
        return MatchingNetwork(self.elements + (e,))

    def without_last(self) -> "MatchingNetwork":
        if not self.elements:
            raise ValueError("network is already empty")
        return MatchingNetwork(self.elements[:-1])

    def __len__(self) -> int:
        return len(self.elements)


def element_impedance(e: LadderElement, f: Frequency) -> Impedance:
    """Impedance of a single element at f (+jwL / -j/(wC) / R)."""
    w = f.omega
    if e.kind == INDUCTOR:
        x = w * e.value
    elif e.kind == CAPACITOR:
        x = -1.0 / (w * e.value)
    else:
        return Impedance(e.value, 0.0)
    r = abs(x) / e.quality_factor if e.quality_factor is not None else 0.0
    return Impedance(r, x)


@dataclass(frozen=True)
class ConstantLoad:
    """Frequency-independent load impedance."""

    impedance: Impedance

    def impedance_at(self, f: Frequency) -> Impedance:
        return self.impedance


@dataclass(frozen=True)
class ResonatorLoad:
    """Series RLC resonator: Z = r + j(wL - 1/(wC)).

    Synthetic stand-in for a measured antenna when no .s1p data exists.
    """

    r_series: float
    inductance: float
    capacitance: float

    def __post_init__(self):
        if not (self.r_series > 0 and self.inductance > 0 and self.capacitance > 0):
            raise ValueError("resonator parameters must be positive")

    @property
    def resonant_frequency(self) -> Frequency:
        return Frequency(1.0 / (2 * math.pi * math.sqrt(self.inductance * self.capacitance)))

    def impedance_at(self, f: Frequency) -> Impedance:
        w = f.omega
        return Impedance(self.r_series, w * self.inductance - 1.0 / (w * self.capacitance))


@dataclass(frozen=True)
class MeasuredLoad:
    """Load backed by a one-port Touchstone dataset (linear-RI interpolation)."""

    dataset: TouchstoneDataset

    def impedance_at(self, f: Frequency) -> Impedance:
        g = interpolate_gamma(self.dataset, f).to_complex()
        den = 1.0 - g
        if abs(den) < 1e-12:
            raise DegenerateNetworkError(
                f"measured gamma at {f.hertz:g} Hz is an open circuit; impedance undefined"
            )
        z = self.dataset.reference_resistance * (1.0 + g) / den
        return Impedance(z.real, z.imag)


LoadProfile = ConstantLoad | ResonatorLoad | MeasuredLoad

# Committed synthetic-antenna fixture: strongly mismatched at 915 MHz
# (S11 ~ -3 dB) so the matching pipeline has real work to do.
RESONATOR_FIXTURE = ResonatorLoad(r_series=15.0, inductance=18e-9, capacitance=1.2e-12)


def load_impedance(p: LoadProfile, f: Frequency) -> Impedance:
    """Load impedance at f for any profile kind."""
    return p.impedance_at(f)


def input_impedance(n: MatchingNetwork, p: LoadProfile, f: Frequency) -> Impedance:
    """Impedance seen from the source: fold elements over the load.

    Series elements add impedances, shunt elements add admittances.
    """
    z = load_impedance(p, f).to_complex()
    for e in n.elements:
        ze = element_impedance(e, f).to_complex()
        if e.placement == SERIES:
            z = z + ze
        else:
            if abs(z) == 0.0 or abs(ze) == 0.0:
                raise DegenerateNetworkError(
                    "shunt fold over a zero-magnitude impedance"
                )
            z = 1.0 / (1.0 / z + 1.0 / ze)
    return Impedance(z.real, z.imag)


@dataclass(frozen=True)
class SweepPoint:
    frequency: Frequency
    gamma: ReflectionCoefficient
    s11_db: float


@dataclass(frozen=True)
class SweepResult:
    """S11 evaluated on a strictly increasing frequency grid."""

    points: tuple[SweepPoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        freqs = [p.frequency.hertz for p in self.points]
        if any(b <= a for a, b in zip(freqs, freqs[1:])):
            raise ValueError("sweep frequencies must be strictly increasing")


def sweep_s11(
    n: MatchingNetwork,
    p: LoadProfile,
    z0: ReferenceImpedance,
    f_start: Frequency,
    f_stop: Frequency,
    n_points: int,
) -> SweepResult:
    """Linear frequency sweep, endpoints included exactly.

    Perfect-match points record the -200 dB serialization floor.
    """
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points}")
    if not f_start.hertz < f_stop.hertz:
        raise ValueError("f_start must be below f_stop")
    step = (f_stop.hertz - f_start.hertz) / (n_points - 1)
    points = []
    for i in range(n_points):
        hz = f_stop.hertz if i == n_points - 1 else f_start.hertz + i * step
        f = Frequency(hz)
        try:
            g = reflection_coefficient(input_impedance(n, p, f), z0)
        except DegenerateValueError as exc:
            raise DegenerateNetworkError(str(exc)) from exc
        points.append(SweepPoint(f, g, s11_db_floored(g)))
    return SweepResult(tuple(points))


def find_dip(s: SweepResult) -> tuple[Frequency, float]:
    """Grid point with minimum S11; ties break toward lower frequency."""
    if not s.points:
        raise ValueError("cannot find the dip of an empty sweep")
    best = s.points[0]
    for pt in s.points[1:]:
        if pt.s11_db < best.s11_db:
            best = pt
    return best.frequency, best.s11_db


# --- JSON wire format -------------------------------------------------------
#
# {"elements": [{"kind": ..., "placement": ..., "value": ..., "quality_factor": ...}]}
# Floats round-trip bit-exactly through repr-based JSON encoding.


def element_to_dict(e: LadderElement) -> dict:
    return {
        "kind": e.kind,
        "placement": e.placement,
        "value": e.value,
        "quality_factor": e.quality_factor,
    }


def element_from_dict(d: dict) -> LadderElement:
    return LadderElement(
        kind=d["kind"],
        placement=d["placement"],
        value=float(d["value"]),
        quality_factor=None if d.get("quality_factor") is None else float(d["quality_factor"]),
    )


def network_to_dict(n: MatchingNetwork) -> dict:
    return {"elements": [element_to_dict(e) for e in n.elements]}


def network_from_dict(d: dict) -> MatchingNetwork:
    return MatchingNetwork(tuple(element_from_dict(e) for e in d["elements"]))


def network_to_json(n: MatchingNetwork) -> str:
    return json.dumps(network_to_dict(n), indent=2)


def network_from_json(text: str) -> MatchingNetwork:
    return network_from_dict(json.loads(text))


def sweep_to_dict(s: SweepResult) -> dict:
    return {
        "points": [
            {
                "frequency_hz": pt.frequency.hertz,
                "gamma": {"real": pt.gamma.real, "imag": pt.gamma.imag},
                "s11_db": max(pt.s11_db, S11_FLOOR_DB),
            }
            for pt in s.points
        ]
    }
