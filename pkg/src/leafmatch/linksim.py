"""Radiative link budget and capacitor-charging time versus distance.

Far-field Friis propagation with a receiver mismatch factor, feeding a
constant-power energy-balance model of an electrolytic storage capacitor
charging toward its device's turn-on threshold. Absolute times depend on
rig parameters nobody publishes; the model's value is in the trends
(inverse-square power, monotone charge time, exact scaling laws), which
the tests pin down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .rfcore import Frequency, ReflectionCoefficient

SPEED_OF_LIGHT = 299792458.0  # [m/s]


class NearFieldError(ValueError):
    """Distance below one wavelength; the far-field model is invalid there."""


class ZeroPowerError(ValueError):
    """No received power; the capacitor would never charge."""


@dataclass(frozen=True)
class LinkBudget:
    """Transmit side, antenna gains, and the receiver's residual mismatch.

    efficiency_curve, when given, is a table of (input watts, efficiency)
    pairs interpolated linearly in place of the constant
    rectifier_efficiency.
    """

    tx_power: float
    tx_gain_dbi: float
    rx_gain_dbi: float
    frequency: Frequency
    mismatch_gamma: ReflectionCoefficient = ReflectionCoefficient(0.0, 0.0)
    rectifier_efficiency: float = 0.5
    efficiency_curve: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        if not self.tx_power > 0:
            raise ValueError("tx_power must be positive")
        if not 0 < self.rectifier_efficiency <= 1:
            raise ValueError("rectifier_efficiency must be in (0, 1]")
        if self.mismatch_gamma.magnitude > 1:
            raise ValueError("mismatch gamma magnitude cannot exceed 1")
        if self.efficiency_curve is not None:
            powers = [p for p, _ in self.efficiency_curve]
            if len(powers) < 2 or any(b <= a for a, b in zip(powers, powers[1:])):
                raise ValueError("efficiency_curve needs >= 2 rows, increasing in power")

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.frequency.hertz

    def efficiency_at(self, p_in: float) -> float:
        if self.efficiency_curve is None:
            return self.rectifier_efficiency
        pts = self.efficiency_curve
        if p_in <= pts[0][0]:
            return pts[0][1]
        if p_in >= pts[-1][0]:
            return pts[-1][1]
        for (p0, e0), (p1, e1) in zip(pts, pts[1:]):
            if p0 <= p_in <= p1:
                return e0 + (e1 - e0) * (p_in - p0) / (p1 - p0)
        raise AssertionError("unreachable")


@dataclass(frozen=True)
class ChargeTank:
    """Storage capacitor charged from empty toward the turn-on voltage."""

    capacitance: float
    threshold_volts: float = 4.0
    initial_volts: float = 0.0

    def __post_init__(self):
        if not self.capacitance > 0:
            raise ValueError("capacitance must be positive")
        if not 0 <= self.initial_volts < self.threshold_volts:
            raise ValueError("need 0 <= initial_volts < threshold_volts")


@dataclass(frozen=True)
class DistanceSweepResult:
    rows: tuple[tuple[float, float, float], ...]  # (meters, watts, seconds)


def received_power(lb: LinkBudget, d: float) -> float:
    """Friis received power with mismatch: Pt*Gt*Gr*(lambda/4pi d)^2*(1-|G|^2)."""
    if not d > 0:
        raise ValueError("distance must be positive")
    lam = lb.wavelength
    if d < lam:
        raise NearFieldError(
            f"distance {d:g} m is inside one wavelength ({lam:.4f} m); "
            "the far-field model does not apply"
        )
    g_t = 10.0 ** (lb.tx_gain_dbi / 10.0)
    g_r = 10.0 ** (lb.rx_gain_dbi / 10.0)
    mismatch = 1.0 - lb.mismatch_gamma.magnitude ** 2
    return lb.tx_power * g_t * g_r * (lam / (4 * math.pi * d)) ** 2 * mismatch


def charge_time(lb: LinkBudget, tank: ChargeTank, d: float) -> float:
    """Seconds to charge from the initial to the threshold voltage.

    Constant-power balance: t = C (Vth^2 - V0^2) / (2 eta Pr).
    """
    p_r = received_power(lb, d)
    if p_r <= 0:
        raise ZeroPowerError("received power is zero; the tank never charges")
    eta = lb.efficiency_at(p_r)
    energy = tank.capacitance * (tank.threshold_volts**2 - tank.initial_volts**2) / 2.0
    return energy / (eta * p_r)


def distance_sweep(
    lb: LinkBudget, tank: ChargeTank, d_start: float, d_stop: float, step: float
) -> DistanceSweepResult:
    """Rows at d_start, d_start+step, ... up to d_stop inclusive."""
    if not (0 < d_start < d_stop):
        raise ValueError("need 0 < d_start < d_stop")
    if not step > 0:
        raise ValueError("step must be positive")
    # tiny slack so a final step landing on d_stop survives float rounding
    n_rows = int(math.floor((d_stop - d_start) / step + 1e-9)) + 1
    rows = []
    for i in range(n_rows):
        d = d_start + i * step
        p_r = received_power(lb, d)
        rows.append((d, p_r, charge_time(lb, tank, d)))
    return DistanceSweepResult(tuple(rows))


def sweep_to_csv(result: DistanceSweepResult) -> str:
    """CSV with 6 significant digits: distance_m,received_w,charge_s."""
    lines = ["distance_m,received_w,charge_s"]
    for d, p, t in result.rows:
        lines.append(f"{d:.6g},{p:.6g},{t:.6g}")
    return "\n".join(lines) + "\n"


def sweep_to_dict(result: DistanceSweepResult) -> dict:
    return {
        "rows": [
            {"distance_m": d, "received_w": p, "charge_s": t}
            for d, p, t in result.rows
        ]
    }


def budget_from_dict(d: dict) -> LinkBudget:
    curve = d.get("efficiency_curve")
    return LinkBudget(
        tx_power=float(d["tx_power_w"]),
        tx_gain_dbi=float(d.get("tx_gain_dbi", 0.0)),
        rx_gain_dbi=float(d.get("rx_gain_dbi", 0.0)),
        frequency=Frequency(float(d.get("frequency_hz", 915e6))),
        mismatch_gamma=ReflectionCoefficient(
            float(d.get("mismatch_gamma_real", 0.0)),
            float(d.get("mismatch_gamma_imag", 0.0)),
        ),
        rectifier_efficiency=float(d.get("rectifier_efficiency", 0.5)),
        efficiency_curve=None if curve is None else tuple((float(p), float(e)) for p, e in curve),
    )


def tank_from_dict(d: dict) -> ChargeTank:
    return ChargeTank(
        capacitance=float(d["capacitance_f"]),
        threshold_volts=float(d.get("threshold_volts", 4.0)),
        initial_volts=float(d.get("initial_volts", 0.0)),
    )
