"""Unit-suffix grammar for CLI values: 915MHz, 6.8nH, 1.2pF, 50ohm.

Grammar: <float literal><SI prefix?><unit>. Prefixes are case-sensitive
(m is milli, M is mega); a bare number is taken as the SI base unit.
Typing exponents by hand is how values get mangled, hence the suffixes.
"""

from __future__ import annotations

import math
import re
from decimal import Decimal, localcontext

SI_PREFIXES = {
    "f": -15,
    "p": -12,
    "n": -9,
    "u": -6,
    "µ": -6,
    "m": -3,
    "k": 3,
    "M": 6,
    "G": 9,
    "T": 12,
}

UNIT_ALIASES = {
    "Hz": "Hz",
    "H": "H",
    "F": "F",
    "ohm": "ohm",
    "Ohm": "ohm",
    "R": "ohm",
    "V": "V",
    "W": "W",
    "s": "s",
    "m": "m",
}

_NUMBER = re.compile(r"^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)(.*)$")


class QuantityError(ValueError):
    """Unparseable or wrongly-typed quantity literal."""


def parse_quantity(text: str, unit: str) -> float:
    """Parse '<number><prefix?><unit>' into the SI base value.

    unit is the expected base unit symbol ('Hz', 'H', 'F', 'ohm', ...);
    a bare number passes through unchanged.
    """
    text = text.strip()
    m = _NUMBER.match(text)
    if not m:
        raise QuantityError(f"cannot parse quantity {text!r}")
    number_text = m.group(1)
    suffix = m.group(2).strip()
    if suffix == "":
        return float(number_text)

    for alias, canonical in UNIT_ALIASES.items():
        if suffix == alias and canonical == unit:
            return float(number_text)
        if suffix.endswith(alias) and canonical == unit:
            prefix = suffix[: -len(alias)]
            if prefix in SI_PREFIXES:
                # scale in decimal so 4.7uF is exactly float('4.7e-6')
                with localcontext() as ctx:
                    ctx.prec = 60
                    return float(Decimal(number_text).scaleb(SI_PREFIXES[prefix]))
    raise QuantityError(f"expected a value in {unit}, cannot parse {text!r}")


def parse_frequency_hz(text: str) -> float:
    hz = parse_quantity(text, "Hz")
    if not (hz > 0 and math.isfinite(hz)):
        raise QuantityError(f"frequency must be positive, got {text!r}")
    return hz


def parse_complex_ohms(text: str) -> complex:
    """Impedance literal like '25-10j' or '50' (python complex grammar)."""
    try:
        z = complex(text.replace(" ", ""))
    except ValueError:
        raise QuantityError(f"cannot parse impedance literal {text!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise QuantityError(f"impedance must be finite, got {text!r}")
    return z


def format_si(value: float, unit: str) -> str:
    """Human-readable engineering formatting (4 significant digits)."""
    if value == 0:
        return f"0 {unit}"
    thresholds = [
        (1e12, "T"), (1e9, "G"), (1e6, "M"), (1e3, "k"), (1.0, ""),
        (1e-3, "m"), (1e-6, "u"), (1e-9, "n"), (1e-12, "p"), (1e-15, "f"),
    ]
    mag = abs(value)
    for scale, prefix in thresholds:
        if mag >= scale:
            return f"{value / scale:.4g} {prefix}{unit}"
    return f"{value:.4g} {unit}"
