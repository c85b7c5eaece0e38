"""E-series component catalogs, value snapping, and exhaustive search.

Real inductors and capacitors come only in standard per-decade values
(E12/E24/E48/E96). Snapping uses geometric (ratio) distance because the
series themselves are geometric; absolute distance would bias toward the
top of each decade. The optimizer brute-forces the Cartesian product of
per-element catalog neighborhoods and scores each candidate by S11 at f0.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from .ladder import (
    LadderElement,
    LoadProfile,
    MatchingNetwork,
    input_impedance,
    network_to_dict,
)
from .rfcore import (
    Frequency,
    ReferenceImpedance,
    reflection_coefficient,
    s11_db_floored,
)

E12 = (1.0, 1.2, 1.5, 1.8, 2.2, 2.7, 3.3, 3.9, 4.7, 5.6, 6.8, 8.2)
E24 = (
    1.0, 1.1, 1.2, 1.3, 1.5, 1.6, 1.8, 2.0, 2.2, 2.4, 2.7, 3.0,
    3.3, 3.6, 3.9, 4.3, 4.7, 5.1, 5.6, 6.2, 6.8, 7.5, 8.2, 9.1,
)
E48 = (
    1.00, 1.05, 1.10, 1.15, 1.21, 1.27, 1.33, 1.40, 1.47, 1.54, 1.62, 1.69,
    1.78, 1.87, 1.96, 2.05, 2.15, 2.26, 2.37, 2.49, 2.61, 2.74, 2.87, 3.01,
    3.16, 3.32, 3.48, 3.65, 3.83, 4.02, 4.22, 4.42, 4.64, 4.87, 5.11, 5.36,
    5.62, 5.90, 6.19, 6.49, 6.81, 7.15, 7.50, 7.87, 8.25, 8.66, 9.09, 9.53,
)
E96 = (
    1.00, 1.02, 1.05, 1.07, 1.10, 1.13, 1.15, 1.18, 1.21, 1.24, 1.27, 1.30,
    1.33, 1.37, 1.40, 1.43, 1.47, 1.50, 1.54, 1.58, 1.62, 1.65, 1.69, 1.74,
    1.78, 1.82, 1.87, 1.91, 1.96, 2.00, 2.05, 2.10, 2.15, 2.21, 2.26, 2.32,
    2.37, 2.43, 2.49, 2.55, 2.61, 2.67, 2.74, 2.80, 2.87, 2.94, 3.01, 3.09,
    3.16, 3.24, 3.32, 3.40, 3.48, 3.57, 3.65, 3.74, 3.83, 3.92, 4.02, 4.12,
    4.22, 4.32, 4.42, 4.53, 4.64, 4.75, 4.87, 4.99, 5.11, 5.23, 5.36, 5.49,
    5.62, 5.76, 5.90, 6.04, 6.19, 6.34, 6.49, 6.65, 6.81, 6.98, 7.15, 7.32,
    7.50, 7.68, 7.87, 8.06, 8.25, 8.45, 8.66, 8.87, 9.09, 9.31, 9.53, 9.76,
)

SERIES_TABLES = {"E12": E12, "E24": E24, "E48": E48, "E96": E96}
DEFAULT_SERIES = "E24"

CANDIDATE_CAP = 10**6


class CandidateCapError(ValueError):
    """The neighborhood product exceeds the exhaustive-search cap."""

    def __init__(self, count: int):
        super().__init__(f"{count} candidates exceed the {CANDIDATE_CAP} cap")
        self.count = count


@dataclass(frozen=True)
class CatalogValue:
    """A standard value: catalog mantissa times a power of ten."""

    value: float
    series: str


@dataclass(frozen=True)
class SearchReport:
    best_network: MatchingNetwork
    best_s11_db: float
    candidates_evaluated: int
    runner_ups: tuple[tuple[MatchingNetwork, float], ...]
    tolerance_worst_s11_db: float | None = None
    tolerance_p95_s11_db: float | None = None


def _mantissas(series: str) -> tuple[float, ...]:
    try:
        return SERIES_TABLES[series.upper()]
    except KeyError:
        raise ValueError(f"unknown E-series {series!r}") from None


def _pow10(k: int) -> float:
    # float() of the decimal literal is correctly rounded; 10.0**k may be off
    # by an ulp for negative k, which would break snap idempotence
    return float(f"1e{k}")


def _decompose(value: float) -> tuple[float, int]:
    """Split a positive value into (mantissa in [1, 10), decade exponent)."""
    k = math.floor(math.log10(value))
    m = value / _pow10(k)
    if m < 1.0:
        m *= 10.0
        k -= 1
    elif m >= 10.0:
        m /= 10.0
        k += 1
    return m, k


def _snap_index(value: float, series: str) -> tuple[int, int]:
    """Catalog position of the geometrically nearest value: (index, decade)."""
    if not (value > 0 and math.isfinite(value)):
        raise ValueError(f"value must be positive and finite, got {value}")
    table = _mantissas(series)
    m, k = _decompose(value)
    # Candidates: this decade's mantissas plus the next decade's 1.0
    best_i, best_dist = 0, math.inf
    for i, cand in enumerate(list(table) + [10.0]):
        dist = abs(math.log(m / cand))
        # ties break toward the smaller value, i.e. the earlier index
        if dist < best_dist - 1e-15:
            best_i, best_dist = i, dist
    if best_i == len(table):
        return 0, k + 1
    return best_i, k


def _catalog_float(index: int, decade: int, series: str) -> float:
    # parse the decimal literal so 6.8 nH comes out as float('6.8e-9'),
    # the correctly-rounded value, not an accumulated product
    return float(f"{_mantissas(series)[index]!r}e{decade}")


def snap(value: float, series: str = DEFAULT_SERIES) -> CatalogValue:
    """Nearest catalog value by ratio; ties go to the smaller value."""
    i, k = _snap_index(value, series)
    return CatalogValue(_catalog_float(i, k, series), series.upper())


def neighborhood(value: float, series: str = DEFAULT_SERIES, k: int = 1) -> list[CatalogValue]:
    """The snapped value plus k catalog steps either side (2k+1 values)."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    table = _mantissas(series)
    i, decade = _snap_index(value, series)
    out = []
    for step in range(-k, k + 1):
        j = i + step
        d, idx = decade + j // len(table), j % len(table)
        catalog = _catalog_float(idx, d, series)
        if not (catalog > 0 and math.isfinite(catalog)):
            raise ValueError(f"catalog step {step} leaves the representable float range")
        out.append(CatalogValue(catalog, series.upper()))
    return out


def optimize_discrete(
    ideal: MatchingNetwork,
    p: LoadProfile,
    z0: ReferenceImpedance,
    f0: Frequency,
    series: str = DEFAULT_SERIES,
    k: int = 1,
    top_k: int = 5,
    tolerance_pct: float | None = None,
    n_tolerance_samples: int = 256,
    seed: int = 0,
) -> SearchReport:
    """Exhaustively search catalog neighborhoods around an ideal network.

    Every combination of per-element neighborhood values is evaluated at f0
    through the ladder fold; the winner is the lowest S11, ties resolved to
    the lexicographically smallest value tuple (guaranteed by in-order
    iteration with strict improvement). With tolerance_pct set, the winner
    is re-evaluated under uniform +/-tolerance component scatter.
    """
    neighborhoods = [
        [cv.value for cv in neighborhood(e.value, series, k)] for e in ideal.elements
    ]
    count = math.prod(len(n) for n in neighborhoods)
    if count > CANDIDATE_CAP:
        raise CandidateCapError(count)

    def evaluate(network: MatchingNetwork) -> float:
        g = reflection_coefficient(input_impedance(network, p, f0), z0)
        return s11_db_floored(g)

    # note: an empty network still yields one candidate (the empty product)
    scored: list[tuple[float, MatchingNetwork]] = []
    best_s11 = math.inf
    best_network = ideal
    for values in itertools.product(*neighborhoods):
        candidate = MatchingNetwork(
            tuple(
                LadderElement(e.kind, e.placement, v, e.quality_factor)
                for e, v in zip(ideal.elements, values)
            )
        )
        s11 = evaluate(candidate)
        scored.append((s11, candidate))
        if s11 < best_s11:
            best_s11, best_network = s11, candidate

    scored.sort(key=lambda t: t[0])
    runner_ups = tuple((n, s) for s, n in scored[1 : top_k + 1])

    worst = p95 = None
    if tolerance_pct is not None:
        worst, p95 = _tolerance_analysis(
            best_network, p, z0, f0, tolerance_pct, n_tolerance_samples, seed, evaluate
        )
    return SearchReport(best_network, best_s11, count, runner_ups, worst, p95)


def _tolerance_analysis(
    network: MatchingNetwork,
    p: LoadProfile,
    z0: ReferenceImpedance,
    f0: Frequency,
    tolerance_pct: float,
    n_samples: int,
    seed: int,
    evaluate,
) -> tuple[float, float]:
    """Monte-Carlo S11 under uniform component scatter; (worst, 95th pct)."""
    rng = random.Random(seed)
    frac = tolerance_pct / 100.0
    samples = []
    for _ in range(n_samples):
        perturbed = MatchingNetwork(
            tuple(
                LadderElement(
                    e.kind,
                    e.placement,
                    e.value * (1.0 + rng.uniform(-frac, frac)),
                    e.quality_factor,
                )
                for e in network.elements
            )
        )
        samples.append(evaluate(perturbed))
    samples.sort()
    p95_index = min(len(samples) - 1, math.ceil(0.95 * len(samples)) - 1)
    return samples[-1], samples[p95_index]


def report_to_dict(r: SearchReport) -> dict:
    out = {
        "best_network": network_to_dict(r.best_network),
        "best_s11_db": r.best_s11_db,
        "candidates_evaluated": r.candidates_evaluated,
        "runner_ups": [
            {"network": network_to_dict(n), "s11_db": s} for n, s in r.runner_ups
        ],
    }
    if r.tolerance_worst_s11_db is not None:
        out["tolerance_worst_s11_db"] = r.tolerance_worst_s11_db
        out["tolerance_p95_s11_db"] = r.tolerance_p95_s11_db
    return out
