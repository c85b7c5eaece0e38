import json
import math
import random

import pytest

from leafmatch.ladder import (
    ConstantLoad,
    DegenerateNetworkError,
    LadderElement,
    MatchingNetwork,
    MeasuredLoad,
    RESONATOR_FIXTURE,
    ResonatorLoad,
    SweepPoint,
    SweepResult,
    element_impedance,
    find_dip,
    input_impedance,
    load_impedance,
    network_from_json,
    network_to_json,
    series_c,
    series_l,
    shunt_c,
    shunt_l,
    sweep_s11,
)
from leafmatch.rfcore import (
    Frequency,
    Impedance,
    ReferenceImpedance,
    ReflectionCoefficient,
    reflection_coefficient,
    s11_db,
)
from leafmatch.touchstone import FrequencyRangeError, parse_touchstone

Z0 = ReferenceImpedance(50.0)
F0 = Frequency(915e6)


def test_inductor_reactance_at_915mhz():
    # omega*L with omega = 2*pi*915e6, via calculator oracle
    z = element_impedance(series_l(6.8e-9), F0)
    assert z.resistance == 0.0
    assert math.isclose(z.reactance, 39.093978981271384, rel_tol=1e-12)


def test_capacitor_reactance_always_negative():
    for hz in (1e3, 1e6, 915e6, 40e9):
        z = element_impedance(series_c(1.2e-12), Frequency(hz))
        assert z.reactance < 0


def test_quality_factor_adds_series_loss():
    ideal = element_impedance(series_l(6.8e-9), F0)
    assert ideal.resistance == 0.0
    lossy = element_impedance(series_l(6.8e-9, q=50), F0)
    assert math.isclose(lossy.resistance, abs(lossy.reactance) / 50, rel_tol=1e-12)


def test_element_value_must_be_positive():
    with pytest.raises(ValueError):
        LadderElement("inductor", "series", 0.0)
    with pytest.raises(ValueError):
        LadderElement("inductor", "series", -1e-9)


def test_resonator_reactance_cancels_at_resonance():
    load = ResonatorLoad(10.0, 20e-9, 1.5e-12)
    z = load.impedance_at(load.resonant_frequency)
    assert z.resistance == 10.0
    assert abs(z.reactance) < 1e-9


def test_resonator_oracle_at_915mhz():
    # wL - 1/(wC) evaluated directly
    z = load_impedance(ResonatorLoad(10.0, 20e-9, 1.5e-12), F0)
    assert math.isclose(z.reactance, -0.9775945557686185, rel_tol=1e-12)


def test_constant_load_same_at_any_frequency():
    load = ConstantLoad(Impedance(25, -10))
    for hz in (1e6, 915e6, 5e9):
        assert load_impedance(load, Frequency(hz)) == Impedance(25, -10)


def test_empty_network_is_identity():
    z = input_impedance(MatchingNetwork(), ConstantLoad(Impedance(25, -10)), F0)
    assert z == Impedance(25, -10)


def test_single_series_resistor_on_short():
    net = MatchingNetwork((LadderElement("resistor", "series", 50.0),))
    z = input_impedance(net, ConstantLoad(Impedance(0, 0)), F0)
    assert z == Impedance(50.0, 0.0)


def test_two_step_fold_matches_manual_oracle():
    # hand fold: z1 = (25-10j) + j*w*6.8nH; z2 = 1/(1/z1 + j*w*1.2pF)
    net = MatchingNetwork((series_l(6.8e-9), shunt_c(1.2e-12)))
    z = input_impedance(net, ConstantLoad(Impedance(25, -10)), F0)
    assert math.isclose(z.resistance, 37.39159049282854, rel_tol=1e-12)
    assert math.isclose(z.reactance, 28.331564930339553, rel_tol=1e-12)


def test_series_additivity_property():
    rng = random.Random(19)
    for _ in range(300):
        load = ConstantLoad(Impedance(rng.uniform(0.1, 500), rng.uniform(-500, 500)))
        f = Frequency(10 ** rng.uniform(6, 10))
        base = MatchingNetwork((shunt_c(1e-12),))
        e = series_l(10 ** rng.uniform(-10, -7))
        z_before = input_impedance(base, load, f).to_complex()
        z_after = input_impedance(base.appended(e), load, f).to_complex()
        assert z_after == z_before + element_impedance(e, f).to_complex()


def test_lossless_network_preserves_passivity():
    rng = random.Random(23)
    for _ in range(500):
        load = ConstantLoad(Impedance(rng.uniform(1e-3, 2000), rng.uniform(-2000, 2000)))
        elements = tuple(
            rng.choice(
                [
                    series_l(10 ** rng.uniform(-10, -7)),
                    series_c(10 ** rng.uniform(-13, -10)),
                    shunt_l(10 ** rng.uniform(-10, -7)),
                    shunt_c(10 ** rng.uniform(-13, -10)),
                ]
            )
            for _ in range(rng.randint(0, 4))
        )
        z = input_impedance(MatchingNetwork(elements), load, F0)
        assert reflection_coefficient(z, Z0).magnitude <= 1 + 1e-9


def test_incremental_fold_equals_full_fold():
    net = MatchingNetwork((series_l(6.8e-9), shunt_c(1.2e-12), series_c(3.3e-12), shunt_l(8.2e-9)))
    load = ConstantLoad(Impedance(25, -10))
    z_full = input_impedance(net, load, F0)
    z_inc = load_impedance(load, F0)
    for e in net.elements:
        z_inc = input_impedance(MatchingNetwork((e,)), ConstantLoad(z_inc), F0)
    assert z_full == z_inc


def test_shunt_over_short_is_degenerate():
    net = MatchingNetwork((shunt_c(1e-12),))
    with pytest.raises(DegenerateNetworkError):
        input_impedance(net, ConstantLoad(Impedance(0, 0)), F0)


def test_sweep_grid_and_endpoints():
    sw = sweep_s11(MatchingNetwork(), RESONATOR_FIXTURE, Z0, Frequency(700e6), Frequency(1100e6), 201)
    assert len(sw.points) == 201
    assert sw.points[0].frequency.hertz == 700e6
    assert sw.points[-1].frequency.hertz == 1100e6


def test_sweep_two_points_equals_endpoint_evaluations():
    sw = sweep_s11(MatchingNetwork(), RESONATOR_FIXTURE, Z0, Frequency(700e6), Frequency(1100e6), 2)
    for pt, hz in zip(sw.points, (700e6, 1100e6)):
        g = reflection_coefficient(load_impedance(RESONATOR_FIXTURE, Frequency(hz)), Z0)
        assert (pt.gamma.real, pt.gamma.imag) == (g.real, g.imag)


def test_sweep_perfect_match_records_floor():
    sw = sweep_s11(MatchingNetwork(), ConstantLoad(Impedance(50, 0)), Z0, Frequency(700e6), Frequency(1100e6), 11)
    assert all(pt.s11_db == -200.0 for pt in sw.points)


def test_sweep_rejects_bad_grid():
    with pytest.raises(ValueError):
        sweep_s11(MatchingNetwork(), RESONATOR_FIXTURE, Z0, Frequency(1e9), Frequency(9e8), 11)
    with pytest.raises(ValueError):
        sweep_s11(MatchingNetwork(), RESONATOR_FIXTURE, Z0, Frequency(7e8), Frequency(9e8), 1)


def _sweep_from_values(values):
    points = tuple(
        SweepPoint(Frequency(1e9 + i * 1e6), ReflectionCoefficient(0.5, 0), v)
        for i, v in enumerate(values)
    )
    return SweepResult(points)


def test_find_dip_monotone_curve_returns_endpoint():
    f, v = find_dip(_sweep_from_values([-1, -2, -3, -4]))
    assert v == -4 and f.hertz == 1e9 + 3e6


def test_find_dip_v_curve_returns_vertex():
    f, v = find_dip(_sweep_from_values([-1, -5, -9, -5, -1]))
    assert v == -9 and f.hertz == 1e9 + 2e6


def test_find_dip_ties_break_toward_lower_frequency():
    f, v = find_dip(_sweep_from_values([-3, -9, -2, -9, -1]))
    assert v == -9 and f.hertz == 1e9 + 1e6


def test_network_json_round_trip_bit_exact():
    rng = random.Random(31)
    for _ in range(100):
        elements = tuple(
            LadderElement(
                rng.choice(["inductor", "capacitor", "resistor"]),
                rng.choice(["series", "shunt"]),
                10 ** rng.uniform(-12, 3),
                rng.choice([None, rng.uniform(5, 500)]),
            )
            for _ in range(rng.randint(0, 8))
        )
        net = MatchingNetwork(elements)
        assert network_from_json(network_to_json(net)) == net


def test_network_length_cap():
    with pytest.raises(ValueError):
        MatchingNetwork(tuple(series_l(1e-9) for _ in range(9)))


def test_measured_load_reproduces_file_s11(tmp_path):
    with open("tests/fixtures/antenna.s1p", encoding="utf-8") as fh:
        ds = parse_touchstone(fh.read())
    load = MeasuredLoad(ds)
    for hz, gamma in ds.rows[::7]:
        z = load_impedance(load, Frequency(hz))
        g2 = reflection_coefficient(z, ReferenceImpedance(ds.reference_resistance))
        assert abs(s11_db(g2) - s11_db(gamma)) < 1e-6


def test_measured_load_rejects_out_of_range():
    with open("tests/fixtures/antenna.s1p", encoding="utf-8") as fh:
        load = MeasuredLoad(parse_touchstone(fh.read()))
    with pytest.raises(FrequencyRangeError):
        load_impedance(load, Frequency(100e6))
