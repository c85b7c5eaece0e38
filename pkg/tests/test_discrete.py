import math
import random

import pytest

from leafmatch.discrete import (
    CandidateCapError,
    SERIES_TABLES,
    neighborhood,
    optimize_discrete,
    snap,
)
from leafmatch.ladder import (
    MatchingNetwork,
    RESONATOR_FIXTURE,
    series_l,
    shunt_l,
)
from leafmatch.rfcore import Frequency, ReferenceImpedance

Z0 = ReferenceImpedance(50.0)
F0 = Frequency(915e6)

# ideal match for the resonator fixture, from the synthesis pipeline
IDEAL = MatchingNetwork((series_l(3.2270911340304774e-09), shunt_l(5.693517361007021e-09)))


def test_series_tables_are_valid():
    for name, table in SERIES_TABLES.items():
        assert len(table) == int(name[1:])
        assert all(b > a for a, b in zip(table, table[1:]))
        assert all(1.0 <= m < 10.0 for m in table)


def test_snap_seven_nanohenry_prefers_6p8():
    # 7.0/6.8 = 1.029 is geometrically closer than 7.5/7.0 = 1.071
    assert snap(7.0e-9, "E24").value == 6.8e-9


def test_snap_exact_catalog_value_is_fixed_point():
    assert snap(4.7e-12, "E24").value == 4.7e-12


def test_snap_decade_anchor():
    assert snap(1.0, "E24").value == 1.0
    assert snap(1.0e-9, "E96").value == 1.0e-9


def test_snap_crosses_decade_upward():
    assert snap(9.5, "E12").value == 10.0


def test_snap_rejects_nonpositive():
    with pytest.raises(ValueError):
        snap(0.0, "E24")
    with pytest.raises(ValueError):
        snap(-3.3e-9, "E24")


def test_snap_idempotent_property():
    rng = random.Random(53)
    for series in SERIES_TABLES:
        for _ in range(500):
            v = 10 ** rng.uniform(-12, 6)
            once = snap(v, series).value
            assert snap(once, series).value == once


def test_snap_scale_equivariance():
    rng = random.Random(59)
    for _ in range(500):
        v = 10 ** rng.uniform(-6, 5)
        a = snap(10 * v, "E24").value
        b = 10 * snap(v, "E24").value
        assert math.isclose(a, b, rel_tol=1e-12)


def test_neighborhood_examples():
    values = [c.value for c in neighborhood(7.0e-9, "E24", 1)]
    assert values == [6.2e-9, 6.8e-9, 7.5e-9]
    assert [c.value for c in neighborhood(7.0e-9, "E24", 0)] == [6.8e-9]
    e12 = [c.value for c in neighborhood(9.5, "E12", 1)]
    assert 10.0 in e12 and e12 == [8.2, 10.0, 12.0]


def test_neighborhood_strictly_increasing_and_contains_snap():
    rng = random.Random(61)
    for _ in range(300):
        v = 10 ** rng.uniform(-12, 3)
        k = rng.randint(0, 30)
        values = [c.value for c in neighborhood(v, "E24", k)]
        assert len(values) == 2 * k + 1
        assert all(b > a for a, b in zip(values, values[1:]))
        assert snap(v, "E24").value in values


def test_optimize_k0_is_exactly_the_snapped_network():
    report = optimize_discrete(IDEAL, RESONATOR_FIXTURE, Z0, F0, "E24", 0)
    assert report.candidates_evaluated == 1
    assert [e.value for e in report.best_network.elements] == [
        snap(e.value, "E24").value for e in IDEAL.elements
    ]


def test_optimize_candidate_count_is_exact_product():
    report = optimize_discrete(IDEAL, RESONATOR_FIXTURE, Z0, F0, "E24", 2)
    assert report.candidates_evaluated == 5 * 5
    assert len(report.runner_ups) == 5
    assert all(report.best_s11_db <= s for _, s in report.runner_ups)


def test_optimize_search_dominates_snapping():
    snapped = optimize_discrete(IDEAL, RESONATOR_FIXTURE, Z0, F0, "E24", 0)
    for k in (1, 2, 3):
        wider = optimize_discrete(IDEAL, RESONATOR_FIXTURE, Z0, F0, "E24", k)
        assert wider.best_s11_db <= snapped.best_s11_db


def test_optimize_growing_k_never_worsens():
    previous = math.inf
    for k in (0, 1, 2, 3):
        report = optimize_discrete(IDEAL, RESONATOR_FIXTURE, Z0, F0, "E24", k)
        assert report.best_s11_db <= previous
        previous = report.best_s11_db


def test_optimize_candidate_cap():
    wide = MatchingNetwork(tuple(series_l(1e-9) for _ in range(4)))
    with pytest.raises(CandidateCapError):
        optimize_discrete(wide, RESONATOR_FIXTURE, Z0, F0, "E24", 16)


def test_optimize_deterministic_tie_break():
    a = optimize_discrete(IDEAL, RESONATOR_FIXTURE, Z0, F0, "E24", 2)
    b = optimize_discrete(IDEAL, RESONATOR_FIXTURE, Z0, F0, "E24", 2)
    assert [e.value for e in a.best_network.elements] == [
        e.value for e in b.best_network.elements
    ]


def test_optimize_monte_carlo_tolerance_is_seeded():
    a = optimize_discrete(
        IDEAL, RESONATOR_FIXTURE, Z0, F0, "E24", 1, tolerance_pct=5.0, seed=99
    )
    b = optimize_discrete(
        IDEAL, RESONATOR_FIXTURE, Z0, F0, "E24", 1, tolerance_pct=5.0, seed=99
    )
    assert a.tolerance_worst_s11_db == b.tolerance_worst_s11_db
    assert a.tolerance_p95_s11_db == b.tolerance_p95_s11_db
    assert a.tolerance_worst_s11_db >= a.tolerance_p95_s11_db
    # scatter cannot beat a perfect match but must stay a sane dB value
    assert math.isfinite(a.tolerance_worst_s11_db) and a.tolerance_worst_s11_db <= 0
