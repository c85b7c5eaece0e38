"""One-port Touchstone (.s1p) reader/writer and reflection interpolation.

Implements the Touchstone v1.0 one-port subset: '!' comments, a '#' option
line (frequency unit, parameter S, format RI/MA/DB, reference resistance),
and three-column data lines. Everything is normalized to complex gamma at
Hz internally; v2.0 keyword files are rejected.

Frequency columns are scaled through decimal arithmetic so that a dataset
written in any unit parses back to bit-identical Hz values.
"""

from __future__ import annotations

import bisect
import cmath
import math
from dataclasses import dataclass
from datetime import datetime, timezone
from decimal import Decimal, localcontext

from .rfcore import Frequency, ReflectionCoefficient

FREQ_UNITS = {"hz": ("Hz", 0), "khz": ("kHz", 3), "mhz": ("MHz", 6), "ghz": ("GHz", 9)}
FORMATS = ("RI", "MA", "DB")

DEFAULT_UNIT = "GHz"
DEFAULT_FORMAT = "MA"
DEFAULT_RESISTANCE = 50.0

# |gamma| = 0 cannot be written as dB; this floor parses back to ~1e-20
DB_MAGNITUDE_FLOOR = -400.0


class TouchstoneError(ValueError):
    """Parse failure with the 1-based line number where it occurred."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class FrequencyRangeError(ValueError):
    """Query frequency outside the dataset's measured range."""


@dataclass(frozen=True)
class TouchstoneDataset:
    """Parsed one-port S-parameter file: (frequency Hz, gamma) rows."""

    frequency_unit: str
    format: str
    reference_resistance: float
    rows: tuple[tuple[float, ReflectionCoefficient], ...]

    def __post_init__(self):
        if self.frequency_unit not in (u for u, _ in FREQ_UNITS.values()):
            raise ValueError(f"unknown frequency unit {self.frequency_unit!r}")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")
        if not self.reference_resistance > 0:
            raise ValueError("reference resistance must be positive")
        if not self.rows:
            raise ValueError("dataset must contain at least one row")
        freqs = [f for f, _ in self.rows]
        if freqs[0] <= 0:
            raise ValueError("row frequencies must be positive")
        if any(b <= a for a, b in zip(freqs, freqs[1:])):
            raise ValueError("row frequencies must be strictly increasing")

    @property
    def f_min(self) -> float:
        return self.rows[0][0]

    @property
    def f_max(self) -> float:
        return self.rows[-1][0]


def _scaled_hz(token: str, exp10: int, line: int) -> float:
    """Parse a frequency token and scale by 10**exp10 with one rounding."""
    try:
        with localcontext() as ctx:
            ctx.prec = 200
            value = Decimal(token).scaleb(exp10)
            hz = float(value)
    except ArithmeticError:
        raise TouchstoneError(line, f"non-numeric frequency token {token!r}") from None
    if not math.isfinite(hz):
        raise TouchstoneError(line, f"non-finite frequency token {token!r}")
    return hz


def _number(token: str, line: int) -> float:
    try:
        x = float(token)
    except ValueError:
        raise TouchstoneError(line, f"non-numeric token {token!r}") from None
    if not math.isfinite(x):
        raise TouchstoneError(line, f"non-finite token {token!r}")
    return x


def _gamma_from_columns(fmt: str, a: float, b: float, line: int) -> ReflectionCoefficient:
    if fmt == "RI":
        return ReflectionCoefficient(a, b)
    if fmt == "MA":
        if a < 0:
            raise TouchstoneError(line, f"negative magnitude {a!r}")
        g = cmath.rect(a, math.radians(b))
    else:  # DB
        g = cmath.rect(10.0 ** (a / 20.0), math.radians(b))
    return ReflectionCoefficient(g.real, g.imag)


def _parse_option_line(stripped: str, line_no: int) -> tuple[str, str, float]:
    unit = fmt = None
    resistance = None
    tokens = stripped[1:].split()
    i = 0
    while i < len(tokens):
        tok = tokens[i].lower()
        if tok in FREQ_UNITS:
            if unit is not None:
                raise TouchstoneError(line_no, "duplicate frequency unit in option line")
            unit = FREQ_UNITS[tok][0]
        elif tok == "s":
            pass  # S-parameters, the only supported kind
        elif tok in ("y", "z", "g", "h"):
            raise TouchstoneError(line_no, f"unsupported parameter type {tokens[i]!r}")
        elif tok.upper() in FORMATS:
            if fmt is not None:
                raise TouchstoneError(line_no, "duplicate format in option line")
            fmt = tok.upper()
        elif tok == "r":
            if i + 1 >= len(tokens):
                raise TouchstoneError(line_no, "option 'R' missing resistance value")
            i += 1
            resistance = _number(tokens[i], line_no)
            if resistance <= 0:
                raise TouchstoneError(line_no, f"reference resistance must be positive, got {resistance}")
        else:
            raise TouchstoneError(line_no, f"unrecognized option token {tokens[i]!r}")
        i += 1
    return (
        unit if unit is not None else DEFAULT_UNIT,
        fmt if fmt is not None else DEFAULT_FORMAT,
        resistance if resistance is not None else DEFAULT_RESISTANCE,
    )


def parse_touchstone(text: str) -> TouchstoneDataset:
    """Parse one-port Touchstone v1 text into a normalized dataset."""
    unit, fmt, resistance = DEFAULT_UNIT, DEFAULT_FORMAT, DEFAULT_RESISTANCE
    saw_option = False
    rows: list[tuple[float, ReflectionCoefficient]] = []
    last_line = 0

    for line_no, raw in enumerate(text.splitlines(), start=1):
        last_line = line_no
        line = raw.split("!", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            raise TouchstoneError(line_no, f"Touchstone v2 keyword {line.split()[0]!r} is not supported")
        if line.startswith("#"):
            if saw_option:
                raise TouchstoneError(line_no, "duplicate option line")
            if rows:
                raise TouchstoneError(line_no, "option line must precede data")
            unit, fmt, resistance = _parse_option_line(line, line_no)
            saw_option = True
            continue
        columns = line.split()
        if len(columns) != 3:
            raise TouchstoneError(line_no, f"expected 3 columns, got {len(columns)}")
        hz = _scaled_hz(columns[0], FREQ_UNITS[unit.lower()][1], line_no)
        if hz <= 0:
            raise TouchstoneError(line_no, f"frequency must be positive, got {hz:g} Hz")
        if rows and hz <= rows[-1][0]:
            raise TouchstoneError(
                line_no, f"frequency {hz:g} Hz is not greater than the previous row"
            )
        gamma = _gamma_from_columns(
            fmt, _number(columns[1], line_no), _number(columns[2], line_no), line_no
        )
        rows.append((hz, gamma))

    if not rows:
        raise TouchstoneError(last_line, "file contains no data rows")
    return TouchstoneDataset(unit, fmt, resistance, tuple(rows))


def _freq_token(hz: float, exp10: int) -> str:
    """Decimal token in the target unit that parses back to exactly hz."""
    if exp10 == 0:
        return repr(hz)
    short = repr(hz / 10.0**exp10)
    if _scaled_hz(short, exp10, 0) == hz:
        return short
    with localcontext() as ctx:
        ctx.prec = 200
        return str(Decimal(hz).scaleb(-exp10))


def _gamma_columns(fmt: str, g: ReflectionCoefficient) -> tuple[str, str]:
    gc = g.to_complex()
    if fmt == "RI":
        return repr(gc.real), repr(gc.imag)
    mag, phase = abs(gc), math.degrees(cmath.phase(gc)) if gc != 0 else 0.0
    if fmt == "MA":
        return repr(mag), repr(phase)
    db = 20.0 * math.log10(mag) if mag > 0 else DB_MAGNITUDE_FLOOR
    return repr(db), repr(phase)


def write_touchstone(
    d: TouchstoneDataset,
    fmt: str | None = None,
    freq_unit: str | None = None,
    *,
    stamp: bool = True,
) -> str:
    """Render a dataset as .s1p text; parse(write(d)) recovers d's rows."""
    fmt = (fmt or d.format).upper()
    freq_unit = freq_unit or d.frequency_unit
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    if freq_unit.lower() not in FREQ_UNITS:
        raise ValueError(f"unknown frequency unit {freq_unit!r}")
    unit_name, exp10 = FREQ_UNITS[freq_unit.lower()]

    lines = []
    if stamp:
        now = datetime.now(timezone.utc).isoformat(timespec="seconds")
        lines.append(f"! leafmatch one-port export {now}")
    lines.append(f"# {unit_name} S {fmt} R {repr(d.reference_resistance)}")
    for hz, gamma in d.rows:
        a, b = _gamma_columns(fmt, gamma)
        lines.append(f"{_freq_token(hz, exp10)} {a} {b}")
    return "\n".join(lines) + "\n"


def interpolate_gamma(d: TouchstoneDataset, f: Frequency) -> ReflectionCoefficient:
    """Linear interpolation of gamma in the real/imaginary plane.

    Exact at grid frequencies; raises FrequencyRangeError outside the
    measured span (no extrapolation).
    """
    hz = f.hertz
    if hz < d.f_min or hz > d.f_max:
        raise FrequencyRangeError(
            f"{hz:g} Hz outside measured range [{d.f_min:g}, {d.f_max:g}] Hz"
        )
    freqs = [row[0] for row in d.rows]
    i = bisect.bisect_left(freqs, hz)
    if i < len(freqs) and freqs[i] == hz:
        return d.rows[i][1]
    lo_f, lo_g = d.rows[i - 1]
    hi_f, hi_g = d.rows[i]
    t = (hz - lo_f) / (hi_f - lo_f)
    g = lo_g.to_complex() + (hi_g.to_complex() - lo_g.to_complex()) * t
    return ReflectionCoefficient(g.real, g.imag)
