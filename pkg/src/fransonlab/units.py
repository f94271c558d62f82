"""Physical units, wavelength bookkeeping and delay arithmetic.

Everything is stored in SI (metres, seconds, hertz). The string parser accepts
the handful of suffixes used in configuration files (``"773 nm"``, ``"1.2 ns"``,
``"10 us"``, ``"27 km"``, ``"5 kHz"``).
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

C = 299_792_458.0  # m/s

# Gaussian-spectrum time-bandwidth constant: tau_c = K * lambda^2 / (c * dlambda)
GAUSSIAN_COHERENCE_K = 2.0 * math.log(2.0) / math.pi

DEFAULT_GROUP_INDEX = 1.468
DEFAULT_PSW_GROUP_VELOCITY = 2.0e8


class UnitError(ValueError):
    pass


@dataclass(frozen=True)
class Wavelength:
    value: float  # metres

    def __post_init__(self):
        if not self.value > 0:
            raise UnitError(f"wavelength must be positive, got {self.value!r}")

    @classmethod
    def from_nm(cls, nm: float) -> "Wavelength":
        return cls(nm * 1e-9)

    @property
    def nm(self) -> float:
        return self.value * 1e9

    def __str__(self):
        return f"{self.nm:.6g} nm"


@dataclass(frozen=True)
class SpectralFilter:
    """Reflective Bragg filter: reflects ``center +/- fwhm/2`` and transmits the rest."""

    center: Wavelength
    fwhm: float  # metres
    kind: str = "bragg_reflective"

    def __post_init__(self):
        if not 0 < self.fwhm < self.center.value:
            raise UnitError("filter width must satisfy 0 < fwhm < center")

    def reflects(self, wavelength: Wavelength) -> bool:
        return abs(wavelength.value - self.center.value) <= 0.5 * self.fwhm

    def transmits(self, wavelength: Wavelength) -> bool:
        return not self.reflects(wavelength)


@dataclass(frozen=True)
class MediumParams:
    group_index: float = DEFAULT_GROUP_INDEX
    psw_group_velocity: float = DEFAULT_PSW_GROUP_VELOCITY

    def __post_init__(self):
        if self.group_index < 1:
            raise UnitError("group index must be >= 1")
        if not self.psw_group_velocity > 0:
            raise UnitError("PSW group velocity must be positive")


def complementary_wavelength(signal: Wavelength, pump: Wavelength) -> Wavelength:
    """Idler wavelength fixed by energy conservation, 1/ls + 1/li = 1/lp.

    Evaluated in exact rational arithmetic on the stored floats so that the
    degenerate case returns exactly twice the pump wavelength.
    """
    if signal.value <= pump.value:
        raise UnitError(
            f"signal ({signal}) must be longer than the pump ({pump}); no physical idler"
        )
    ls, lp = Fraction(signal.value), Fraction(pump.value)
    return Wavelength(float(ls * lp / (ls - lp)))


def coherence_time(center: Wavelength, fwhm: float) -> float:
    if not fwhm > 0:
        raise UnitError("fwhm must be positive")
    return GAUSSIAN_COHERENCE_K * center.value**2 / (C * fwhm)


def coherence_length_in_medium(tau: float, medium: MediumParams = MediumParams()) -> float:
    if not tau > 0:
        raise UnitError("coherence time must be positive")
    return C * tau / medium.group_index


def one_way_delay(length_m: float, medium: MediumParams = MediumParams()) -> float:
    return length_m * medium.group_index / C


def spool_round_trip_delay(length_km: float, medium: MediumParams = MediumParams()) -> float:
    if length_km < 0:
        raise UnitError("spool length must be non-negative")
    return 2.0 * (length_km * 1000.0 * medium.group_index / C)


def sp_lifetime(psw_length: float, medium: MediumParams = MediumParams()) -> float:
    """Transit time of a surface plasmon across a stripe waveguide of ``psw_length`` metres."""
    if not psw_length > 0:
        raise UnitError("PSW length must be positive")
    return psw_length / medium.psw_group_velocity


def group_index_for_delay_per_km(one_way_s_per_km: float) -> float:
    """Group index reproducing a given one-way fibre delay per kilometre."""
    return one_way_s_per_km * C / 1000.0


# --- string quantities -----------------------------------------------------

_SCALE = {
    "length": {"m": 1.0, "km": 1e3, "cm": 1e-2, "mm": 1e-3, "um": 1e-6, "µm": 1e-6, "nm": 1e-9},
    "time": {"s": 1.0, "ms": 1e-3, "us": 1e-6, "µs": 1e-6, "ns": 1e-9, "ps": 1e-12, "fs": 1e-15},
    "frequency": {"hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9},
}

_QUANTITY = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([A-Za-zµ]*)\s*$")


def parse_quantity(value, kind: str) -> float:
    """Convert ``value`` to SI. Bare numbers are taken to be SI already.

    >>> parse_quantity("773 nm", "length")
    7.73e-07
    >>> parse_quantity("5 kHz", "frequency")
    5000.0
    """
    if isinstance(value, bool):
        raise UnitError(f"expected a {kind}, got a boolean")
    if isinstance(value, (int, float)):
        return float(value)
    if not isinstance(value, str):
        raise UnitError(f"expected a {kind}, got {type(value).__name__}")
    m = _QUANTITY.match(value)
    if m is None:
        raise UnitError(f"cannot parse {kind} {value!r}")
    number, unit = float(m.group(1)), m.group(2)
    table = _SCALE[kind]
    if not unit:
        return number
    key = unit.lower() if kind == "frequency" else unit
    if key not in table:
        raise UnitError(f"unknown {kind} unit {unit!r} in {value!r}")
    return number * table[key]
