"""atomech - Physical Constants

CODATA 2018 values (SI). Every module imports from here; nothing else in the
package hard-codes a constant.
"""

from __future__ import annotations

import math
import re

HBAR: float = 1.054571817e-34  # J s
SPEED_OF_LIGHT: float = 299792458.0  # m/s
EPSILON_0: float = 8.8541878128e-12  # F/m
BOLTZMANN: float = 1.380649e-23  # J/K
ATOMIC_MASS_UNIT: float = 1.66053906660e-27  # kg
RB87_MASS: float = 86.909180527 * ATOMIC_MASS_UNIT  # kg

TWO_PI: float = 2.0 * math.pi

_UNIT_SCALE = {"": 1.0, "hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9, "thz": 1e12}

# "2pi*15e6", "2π·15 MHz", "2 pi x 1.1 GHz", "15 MHz"
_FREQ_RE = re.compile(
    r"^\s*(?P<twopi>2\s*(?:pi|π)\s*[*·x×]?\s*)?"
    r"(?P<value>[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*"
    r"(?P<unit>[a-zA-Z]*)\s*$"
)


def two_pi_hz(omega: float) -> float:
    """rad/s -> Hz (the X in "2π·X Hz")."""
    return omega / TWO_PI


def rad_per_s(freq_hz: float) -> float:
    """Hz -> rad/s."""
    return TWO_PI * freq_hz


def parse_angular_frequency(value: float | int | str) -> float:
    """Parse a frequency into rad/s.

    Numbers are taken as rad/s. Strings may carry an explicit ``2pi`` prefix
    and/or a Hz unit; any string with a Hz unit is read as 2π·X Hz.

    >>> round(parse_angular_frequency("2pi*15 MHz") / 1e6, 4)
    94.2478
    """
    if isinstance(value, (int, float)):
        return float(value)
    m = _FREQ_RE.match(value)
    if m is None:
        raise ValueError(f"cannot parse angular frequency: {value!r}")
    unit = m.group("unit").lower()
    if unit not in _UNIT_SCALE:
        raise ValueError(f"unknown frequency unit {m.group('unit')!r} in {value!r}")
    number = float(m.group("value")) * _UNIT_SCALE[unit]
    if m.group("twopi") or unit:
        return TWO_PI * number
    return number
