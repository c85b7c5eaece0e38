import math
import random

import pytest

from leafmatch.rfcore import (
    COPPER,
    DegenerateValueError,
    Frequency,
    Impedance,
    MaterialSpec,
    ReferenceImpedance,
    ReflectionCoefficient,
    admittance_to_impedance,
    impedance_to_admittance,
    reflection_coefficient,
    s11_db,
    s11_db_floored,
    skin_depth,
)

Z0 = ReferenceImpedance(50.0)


def test_gamma_perfect_match_is_zero():
    g = reflection_coefficient(Impedance(50, 0), Z0)
    assert g.real == 0.0 and g.imag == 0.0


def test_gamma_short_circuit_is_minus_one():
    g = reflection_coefficient(Impedance(0, 0), Z0)
    assert g.real == -1.0 and g.imag == 0.0


def test_gamma_complex_load_oracle_value():
    # (25-10j-50)/(25-10j+50) evaluated by hand with complex arithmetic
    g = reflection_coefficient(Impedance(25, -10), Z0)
    assert math.isclose(g.real, -0.3100436681222708, rel_tol=1e-12)
    assert math.isclose(g.imag, -0.17467248908296945, rel_tol=1e-12)
    assert math.isclose(g.magnitude, 0.3558617071070627, rel_tol=1e-12)


def test_gamma_degenerate_denominator():
    with pytest.raises(DegenerateValueError):
        reflection_coefficient(Impedance(-50, 0), Z0)


def test_s11_db_examples():
    assert s11_db(ReflectionCoefficient(0.1, 0.0)) == pytest.approx(-20.0, abs=1e-12)
    assert s11_db(ReflectionCoefficient(1.0, 0.0)) == 0.0
    # -10 dB acceptability threshold corresponds to |gamma| = 0.3162
    assert s11_db(ReflectionCoefficient(0.3162, 0.0)) == pytest.approx(-10.0, abs=0.01)


def test_s11_db_zero_gamma_sentinel_and_floor():
    g = ReflectionCoefficient(0.0, 0.0)
    assert s11_db(g) == float("-inf")
    assert s11_db_floored(g) == -200.0


def test_s11_matched_is_sentinel_others_finite_nonpositive():
    assert s11_db(reflection_coefficient(Impedance(50, 0), Z0)) == float("-inf")
    rng = random.Random(7)
    for _ in range(200):
        z = Impedance(rng.uniform(1e-3, 1e4), rng.uniform(-1e4, 1e4))
        v = s11_db(reflection_coefficient(z, Z0))
        assert math.isfinite(v) and v <= 0.0


def test_skin_depth_copper_915mhz():
    # direct formula evaluation oracle: sqrt(1.68e-8 / (pi*915e6*mu0))
    delta = skin_depth(COPPER, Frequency(915e6))
    assert math.isclose(delta, 2.1565733072363566e-06, rel_tol=1e-12)
    assert abs(delta - 2.16e-6) / 2.16e-6 < 0.01


def test_skin_depth_scaling_laws():
    f = Frequency(100e6)
    base = skin_depth(COPPER, f)
    assert math.isclose(skin_depth(COPPER, Frequency(4 * f.hertz)), base / 2, rel_tol=1e-12)
    quad_rho = MaterialSpec(4 * COPPER.resistivity, 1.0)
    assert math.isclose(skin_depth(quad_rho, f), base * 2, rel_tol=1e-12)


def test_skin_depth_monotonicity_property():
    rng = random.Random(11)
    for _ in range(1000):
        rho = 10 ** rng.uniform(-9, -5)
        f1, f2 = sorted(rng.uniform(1e3, 1e11) for _ in range(2))
        if f1 == f2:
            continue
        m = MaterialSpec(rho, rng.uniform(0.5, 1000))
        assert skin_depth(m, Frequency(f2)) < skin_depth(m, Frequency(f1))
        rho2 = rho * rng.uniform(1.01, 100)
        assert skin_depth(MaterialSpec(rho2, m.relative_permeability), Frequency(f1)) > skin_depth(m, Frequency(f1))


def test_skin_depth_rejects_bad_inputs():
    with pytest.raises(ValueError):
        MaterialSpec(-1.0, 1.0)
    with pytest.raises(ValueError):
        Frequency(0.0)


def test_conversion_examples():
    y = impedance_to_admittance(Impedance(50, 0))
    assert y.conductance == pytest.approx(0.02, rel=1e-15) and y.susceptance == 0.0
    y = impedance_to_admittance(Impedance(0, 50))
    assert y.conductance == 0.0 and y.susceptance == pytest.approx(-0.02, rel=1e-15)


def test_conversion_round_trip():
    z = Impedance(25, -10)
    z2 = admittance_to_impedance(impedance_to_admittance(z))
    assert math.isclose(z2.resistance, z.resistance, rel_tol=1e-12)
    assert math.isclose(z2.reactance, z.reactance, rel_tol=1e-12)


def test_conversion_zero_magnitude_rejected():
    with pytest.raises(DegenerateValueError):
        impedance_to_admittance(Impedance(0, 0))


def test_conversion_involution_property():
    rng = random.Random(3)
    for _ in range(2000):
        mag = 10 ** rng.uniform(-6, 9)
        angle = rng.uniform(-math.pi, math.pi)
        z = Impedance(mag * math.cos(angle), mag * math.sin(angle))
        if z.to_complex() == 0:
            continue
        z2 = admittance_to_impedance(impedance_to_admittance(z))
        assert abs(z2.to_complex() - z.to_complex()) <= 1e-12 * abs(z.to_complex())


def test_passive_gamma_magnitude_bounded_property():
    rng = random.Random(5)
    for _ in range(10000):
        z = Impedance(rng.uniform(1e-9, 1e4), rng.uniform(-1e4, 1e4))
        assert reflection_coefficient(z, Z0).magnitude <= 1 + 1e-9
