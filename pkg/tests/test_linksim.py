import math
import random

import pytest

from leafmatch.linksim import (
    ChargeTank,
    LinkBudget,
    NearFieldError,
    budget_from_dict,
    charge_time,
    distance_sweep,
    received_power,
    sweep_to_csv,
    tank_from_dict,
)
from leafmatch.rfcore import Frequency, ReflectionCoefficient

F915 = Frequency(915e6)


def _budget(**kwargs):
    defaults = dict(tx_power=1.0, tx_gain_dbi=0.0, rx_gain_dbi=0.0, frequency=F915)
    defaults.update(kwargs)
    return LinkBudget(**defaults)


def test_received_power_oracle_at_one_meter():
    # (lambda/4pi)^2 with lambda = c/915e6 = 0.32764 m, unity gains
    p = received_power(_budget(), 1.0)
    assert math.isclose(p, 0.0006797973850689421, rel_tol=1e-12)


def test_doubling_distance_quarters_power():
    p1 = received_power(_budget(), 1.0)
    p2 = received_power(_budget(), 2.0)
    assert math.isclose(p1 / p2, 4.0, rel_tol=1e-12)


def test_total_mismatch_kills_received_power():
    lb = _budget(mismatch_gamma=ReflectionCoefficient(1.0, 0.0))
    assert received_power(lb, 1.0) == 0.0


def test_mismatch_factor_is_exactly_one_minus_gamma_squared():
    g = ReflectionCoefficient(0.2, -0.3)
    matched = received_power(_budget(), 1.3)
    mismatched = received_power(_budget(mismatch_gamma=g), 1.3)
    assert mismatched == matched * (1.0 - g.magnitude**2)


def test_near_field_guard():
    # wavelength at 915 MHz is ~0.328 m; anything closer is rejected
    with pytest.raises(NearFieldError):
        received_power(_budget(), 0.3)
    received_power(_budget(), 0.33)  # just outside, fine


def test_charge_time_zero_when_already_at_threshold():
    tank = ChargeTank(100e-6, threshold_volts=4.0, initial_volts=3.999999)
    lb = _budget()
    assert charge_time(lb, tank, 1.0) < 1e-3
    # exact threshold start is forbidden by the tank invariant
    with pytest.raises(ValueError):
        ChargeTank(100e-6, threshold_volts=4.0, initial_volts=4.0)


def test_charge_time_inverse_in_power():
    tank = ChargeTank(100e-6)
    t_full = charge_time(_budget(tx_power=2.0), tank, 1.0)
    t_half = charge_time(_budget(tx_power=1.0), tank, 1.0)
    assert math.isclose(t_half, 2.0 * t_full, rel_tol=1e-12)


def test_charge_time_arithmetic_oracle():
    # t = C(Vth^2 - V0^2) / (2 eta Pr) with C=100uF, Vth=4, eta=0.5, Pr=6.81e-4
    lam = 299792458.0 / 915e6
    tx_power = 6.81e-4 / (lam / (4 * math.pi)) ** 2
    lb = _budget(tx_power=tx_power, rectifier_efficiency=0.5)
    t = charge_time(lb, ChargeTank(100e-6, threshold_volts=4.0), 1.0)
    assert math.isclose(t, 2.3494860499265786, rel_tol=1e-9)


def test_charge_time_scales_linearly_in_capacitance_and_inverse_eta():
    rng = random.Random(73)
    for _ in range(200):
        c = 10 ** rng.uniform(-6, -3)
        eta = rng.uniform(0.05, 1.0)
        d = rng.uniform(0.5, 3.0)
        lb = _budget(rectifier_efficiency=eta)
        base = charge_time(lb, ChargeTank(c), d)
        assert math.isclose(
            charge_time(lb, ChargeTank(3 * c), d), 3 * base, rel_tol=1e-9
        )
        lb2 = _budget(rectifier_efficiency=eta / 2)
        assert math.isclose(charge_time(lb2, ChargeTank(c), d), 2 * base, rel_tol=1e-9)


def test_monotone_trends_property():
    rng = random.Random(79)
    for _ in range(200):
        lb = _budget(
            tx_power=10 ** rng.uniform(-1, 1),
            tx_gain_dbi=rng.uniform(0, 10),
            rx_gain_dbi=rng.uniform(0, 10),
        )
        tank = ChargeTank(10 ** rng.uniform(-6, -3))
        d1, d2 = sorted(rng.uniform(0.4, 10.0) for _ in range(2))
        if d2 - d1 < 1e-6:
            continue
        assert received_power(lb, d2) < received_power(lb, d1)
        assert charge_time(lb, tank, d2) > charge_time(lb, tank, d1)


def test_distance_sweep_matches_experiment_grid():
    result = distance_sweep(_budget(), ChargeTank(100e-6), 0.5, 2.0, 0.25)
    assert len(result.rows) == 7
    distances = [d for d, _, _ in result.rows]
    assert distances == [0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0]
    times = [t for _, _, t in result.rows]
    assert all(b > a for a, b in zip(times, times[1:]))


def test_distance_sweep_sixteen_to_one_ratio():
    result = distance_sweep(_budget(), ChargeTank(100e-6), 0.5, 2.0, 0.25)
    assert abs(result.rows[-1][2] / result.rows[0][2] - 16.0) < 1e-9


def test_distance_sweep_row_count_formula():
    rng = random.Random(83)
    for _ in range(200):
        step = rng.choice([0.125, 0.25, 0.5, 1.0])
        start = step * rng.randint(3, 10)
        n = rng.randint(1, 30)
        stop = start + step * (n - 1) if n > 1 else start + step * 0.5
        if n == 1:
            result = distance_sweep(_budget(), ChargeTank(1e-4), start, stop, step)
            assert len(result.rows) == 1
        else:
            result = distance_sweep(_budget(), ChargeTank(1e-4), start, stop, step)
            assert len(result.rows) == n


def test_efficiency_curve_interpolates():
    curve = ((1e-5, 0.2), (1e-3, 0.6))
    lb = _budget(efficiency_curve=curve)
    assert lb.efficiency_at(1e-5) == 0.2
    assert lb.efficiency_at(1e-3) == 0.6
    mid = lb.efficiency_at(5.05e-4)
    assert 0.2 < mid < 0.6
    assert lb.efficiency_at(1e-9) == 0.2  # clamped below
    assert lb.efficiency_at(1.0) == 0.6  # clamped above


def test_csv_output_shape():
    result = distance_sweep(_budget(), ChargeTank(100e-6), 0.5, 2.0, 0.25)
    csv = sweep_to_csv(result)
    lines = csv.strip().split("\n")
    assert lines[0] == "distance_m,received_w,charge_s"
    assert len(lines) == 8
    first = lines[1].split(",")
    assert float(first[0]) == 0.5
    assert all(len(cell.replace("-", "").replace(".", "").replace("e", "").lstrip("0")) <= 7 for cell in first)


def test_budget_json_round_trip():
    doc = {
        "tx_power_w": 0.5,
        "tx_gain_dbi": 3.0,
        "rx_gain_dbi": 2.0,
        "frequency_hz": 915e6,
        "rectifier_efficiency": 0.4,
        "capacitance_f": 220e-6,
        "threshold_volts": 4.0,
    }
    lb = budget_from_dict(doc)
    tank = tank_from_dict(doc)
    assert lb.tx_power == 0.5 and tank.capacitance == 220e-6
    assert charge_time(lb, tank, 1.0) > 0
