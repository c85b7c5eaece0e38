"""Analytic L-network synthesis and Smith-chart trajectory arcs.

Synthesis solves the classic two-element problem at a single frequency:
given load R + jX and a real reference Z0, find every series/shunt
reactance pair that lands the input impedance on Z0. Candidates come from
the two closed-form families (series-first for R < Z0, shunt-first for
|Z|^2 >= Z0*R) and each one is verified against the independent ladder
fold before it is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ladder import (
    CAPACITOR,
    INDUCTOR,
    LadderElement,
    LoadProfile,
    MatchingNetwork,
    SERIES,
    SHUNT,
    ConstantLoad,
    element_impedance,
    input_impedance,
    load_impedance,
    network_to_dict,
)
from .rfcore import (
    DegenerateValueError,
    Frequency,
    Impedance,
    ReferenceImpedance,
    ReflectionCoefficient,
    impedance_to_admittance,
    reflection_coefficient,
    s11_db_floored,
)

# Solutions must reach the chart center to this tolerance to count as a match
GAMMA_TOL = 1e-6

# R == Z0 routing tolerance (relative); hard equality would be fragile
R_EQUAL_REL_TOL = 1e-9

DEFAULT_ARC_STEPS = 64


class ReactiveLoadError(ValueError):
    """Load has no positive resistance; an L-network cannot match it."""


@dataclass(frozen=True)
class MatchSolution:
    """A verified match: 0-2 elements plus the gamma it achieves at f0."""

    network: MatchingNetwork
    achieved_gamma: ReflectionCoefficient
    topology_label: str
    achieved_s11_db: float


@dataclass(frozen=True)
class SmithArc:
    """Gamma trajectory swept while one element grows from zero effect."""

    points: tuple[ReflectionCoefficient, ...]
    element_index: int

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("an arc needs at least 2 points")


def _series_element(x: float, w: float) -> LadderElement:
    if x > 0:
        return LadderElement(INDUCTOR, SERIES, x / w)
    return LadderElement(CAPACITOR, SERIES, 1.0 / (w * -x))


def _shunt_element(b: float, w: float) -> LadderElement:
    if b > 0:
        return LadderElement(CAPACITOR, SHUNT, b / w)
    return LadderElement(INDUCTOR, SHUNT, 1.0 / (w * -b))


def _kind_letter(e: LadderElement) -> str:
    return {INDUCTOR: "L", CAPACITOR: "C"}.get(e.kind, "R")


def _label(network: MatchingNetwork) -> str:
    if not network.elements:
        return "already matched"
    return " then ".join(f"{e.placement}-{_kind_letter(e)}" for e in network.elements)


def _candidate_networks(load: Impedance, z0: float, w: float) -> list[MatchingNetwork]:
    rl, xl = load.resistance, load.reactance
    x_eps = 1e-9 * z0
    b_eps = 1e-9 / z0
    candidates: list[MatchingNetwork] = []

    if abs(rl - z0) <= R_EQUAL_REL_TOL * z0:
        # Resistance already on target: at most one series element cancels X
        if abs(xl) <= x_eps:
            return [MatchingNetwork()]
        return [MatchingNetwork((_series_element(-xl, w),))]

    if rl < z0:
        # Series X against the load first, then shunt B at the source
        root_x = math.sqrt(rl * (z0 - rl))
        root_b = math.sqrt((z0 - rl) / rl) / z0
        for sign in (+1.0, -1.0):
            x = sign * root_x - xl
            b = sign * root_b
            elements = []
            if abs(x) > x_eps:
                elements.append(_series_element(x, w))
            if abs(b) > b_eps:
                elements.append(_shunt_element(b, w))
            candidates.append(MatchingNetwork(tuple(elements)))

    disc = rl * rl + xl * xl - z0 * rl
    if disc >= 0 and rl > 0:
        # Shunt B across the load first, then series X toward the source
        mag2 = rl * rl + xl * xl
        root = math.sqrt(rl / z0) * math.sqrt(disc)
        for sign in (+1.0, -1.0):
            b = (xl + sign * root) / mag2
            if abs(b) <= b_eps:
                continue
            x = 1.0 / b + xl * z0 / rl - z0 / (b * rl)
            elements = [_shunt_element(b, w)]
            if abs(x) > x_eps:
                elements.append(_series_element(x, w))
            candidates.append(MatchingNetwork(tuple(elements)))

    return candidates


def l_match_solutions(
    load: Impedance, z0: ReferenceImpedance, f0: Frequency
) -> list[MatchSolution]:
    """Every verified L-match for a load with positive resistance.

    Returns up to four two-element solutions (fewer when one element
    degenerates or when R equals Z0), each checked by the ladder
    evaluator to reach |gamma| < 1e-6 at f0.
    """
    if not load.resistance > 0:
        raise ReactiveLoadError(
            f"load resistance must be positive to match, got {load.resistance}"
        )
    profile = ConstantLoad(load)
    solutions = []
    seen = set()
    for network in _candidate_networks(load, z0.ohms, f0.omega):
        key = tuple((e.kind, e.placement, e.value) for e in network.elements)
        if key in seen:
            continue
        seen.add(key)
        gamma = reflection_coefficient(input_impedance(network, profile, f0), z0)
        if gamma.magnitude >= GAMMA_TOL:
            continue
        solutions.append(
            MatchSolution(network, gamma, _label(network), s11_db_floored(gamma))
        )
    if not solutions:
        raise AssertionError(
            f"no L-match found for R={load.resistance}, X={load.reactance}; "
            "this should be impossible for positive resistance"
        )
    solutions.sort(
        key=lambda s: (len(s.network), s.achieved_gamma.magnitude, s.topology_label)
    )
    return solutions


def smith_arc(
    start: Impedance,
    e: LadderElement,
    f0: Frequency,
    steps: int = DEFAULT_ARC_STEPS,
    z0: ReferenceImpedance = ReferenceImpedance(),
    element_index: int = 0,
) -> SmithArc:
    """Trajectory of gamma as the element's reactive effect ramps up.

    The element's impedance (series) or admittance (shunt) contribution is
    scaled linearly from 0 to its full value, so the arc starts exactly at
    the start impedance, follows a constant-resistance circle for series
    elements and a constant-conductance circle for shunt elements, and ends
    at the fully-inserted input impedance.
    """
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    z_start = start.to_complex()
    ze = element_impedance(e, f0).to_complex()
    y_start = impedance_to_admittance(start).to_complex() if e.placement == SHUNT else 0j
    points = []
    for i in range(steps):
        t = i / (steps - 1)
        if t == 0.0:
            # exact start: avoid the double reciprocal 1/(1/z) of the shunt
            # path so arcs chain bit-for-bit onto the previous element's end
            z = z_start
        elif e.placement == SERIES:
            z = z_start + t * ze
        else:
            y = y_start + t / ze
            if y == 0:
                raise DegenerateValueError("arc passes through zero admittance")
            z = 1.0 / y
        points.append(reflection_coefficient(Impedance(z.real, z.imag), z0))
    return SmithArc(tuple(points), element_index=element_index)


def match_and_verify(
    load_profile: LoadProfile, z0: ReferenceImpedance, f0: Frequency
) -> list[MatchSolution]:
    """Read the load at f0, synthesize, and re-verify over the full profile.

    The achieved S11 on each solution is recomputed with the profile (not
    just the frozen load point), so measured or resonator loads report what
    the whole pipeline actually delivers at f0.
    """
    load = load_impedance(load_profile, f0)
    solutions = []
    for sol in l_match_solutions(load, z0, f0):
        gamma = reflection_coefficient(
            input_impedance(sol.network, load_profile, f0), z0
        )
        solutions.append(
            MatchSolution(sol.network, gamma, sol.topology_label, s11_db_floored(gamma))
        )
    return solutions


def solution_to_dict(s: MatchSolution) -> dict:
    return {
        **network_to_dict(s.network),
        "topology": s.topology_label,
        "achieved_gamma": {"real": s.achieved_gamma.real, "imag": s.achieved_gamma.imag},
        "achieved_s11_db": s.achieved_s11_db,
    }
