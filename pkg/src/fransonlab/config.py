"""Experiment configuration: JSON schema, defaults, unit parsing and hashing.

A configuration file names a ``preset`` and may override any documented key.
Quantities are either bare SI numbers or strings with a unit suffix
(``"1.2 ns"``, ``"773 nm"``, ``"5 kHz"``). The resolved configuration carries
every key explicitly, in SI, and is what gets hashed and echoed.
"""
from __future__ import annotations

import copy
import hashlib
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .detection import DetectorParams
from .units import UnitError, group_index_for_delay_per_km, parse_quantity

SCHEMA = "fransonlab/1"
ENGINES = ("analytic", "montecarlo", "both")
PRESETS = ("franson_plasmon", "temporal_superposition")


class ConfigError(ValueError):
    def __init__(self, message: str, key: str | None = None, line: int | None = None):
        self.key, self.line = key, line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key:
            where.append(f"key '{key}'")
        super().__init__((", ".join(where) + ": " if where else "") + message)


# kind, default ; kinds ending in "?" accept null
_DETECTOR = {
    "efficiency": ("fraction", None),
    "dark_rate": ("frequency?", 0.0),
    "dead_time": ("time", 0.0),
    "mode": ("mode", "passive"),
    "gate_width": ("time", 0.0),
}

_FRANSON = {
    "setup": {
        "pump_wavelength": ("length", 773e-9),
        "signal_wavelength": ("length", 1546e-9),
        "pump_coherence_time": ("time", 1e-6),
        "bragg_fwhm": ("length", 0.8e-9),
        "bragg_reflectivity": ("fraction", 0.95),
        "psw1_length": ("length", 10e-3),
        "psw2_length": ("length", 5e-3),
        "psw1_transmission": ("fraction", 0.5),
        "psw2_transmission": ("fraction", 0.5),
        "collection_a": ("fraction", 0.6),
        "collection_b": ("fraction?", None),
        "imbalance": ("time", 1.2e-9),
        "split": ("fraction", 0.5),
        "phase_a": ("number", 0.0),
        "imbalance_mismatch": ("length", 0.05e-3),
        "path_mismatch": ("length", 0.5e-3),
        "group_index": ("number", 1.468),
        "psw_group_velocity": ("number", 2e8),
        "pair_rate": ("frequency?", None),
    },
    "detectors": {
        "d1": {"efficiency": 0.07, "dark_rate": None, "dead_time": 10e-6, "mode": "passive",
               "gate_width": 0.0},
        "d2": {"efficiency": 0.15, "dark_rate": 1e4, "dead_time": 0.0, "mode": "gated",
               "gate_width": 2.5e-9},
    },
    "calibration": {
        "auto_tune": ("bool", True),
        "d1_singles": ("frequency", 20e3),
        "d1_noise": ("frequency", 5e3),
        "coincidence_rate": ("frequency", 12.0),
    },
    "tac": {
        "bin_width": ("time", 100e-12),
        "range": ("time", 3e-9),
        "window_half_width": ("time", 300e-12),
        "gate_delay": ("signed_time?", None),
    },
    "integration_s": ("time", 45.0),
}

_TEMPORAL = {
    "setup": {
        "wavelength": ("length", 1550e-9),
        "rep_rate": ("frequency", 5e6),
        "pulse_length": ("time", 1.2e-9),
        "mu": ("number?", None),
        "mu_target": ("number", 1.0),
        "coupler_ratio": ("fraction", 0.5),
        "imbalance": ("time", 10e-9),
        "split": ("fraction", 0.5),
        "psw_length": ("length", 1e-2),
        "psw_transmission": ("fraction", 0.5),
        "psw_group_velocity": ("number", 2e8),
        "spool_km": ("number", 27.0),
        "spool_scan_km": ("number_list", [27.0, 124.0]),
        "spool_group_index": ("number", group_index_for_delay_per_km(5e-6)),
        "spool_attenuation_db_per_km": ("number", 0.2),
    },
    "detectors": {
        "d": {"efficiency": 0.10, "dark_rate": 4e3, "dead_time": 0.0, "mode": "gated",
              "gate_width": 2.5e-9},
    },
    "pulses_per_point": ("int", 200_000),
}

_COMMON = {
    "schema": ("schema", SCHEMA),
    "preset": ("preset", None),
    "seed": ("seed?", None),
    "engine": ("engine", "analytic"),
    "shards": ("int", 1),
    "phase_scan": {
        "start": ("number", 0.0),
        "stop": ("number", 4 * math.pi),
        "steps": ("int", 20),
    },
}


def _coerce(value, kind: str, key: str):
    nullable = kind.endswith("?")
    kind = kind.rstrip("?")
    if value is None:
        if nullable:
            return None
        raise ConfigError("may not be null", key)
    try:
        if kind == "signed_time":
            return parse_quantity(value, "time")
        if kind in ("length", "time", "frequency"):
            out = parse_quantity(value, kind)
            if out < 0:
                raise ConfigError("must be non-negative", key)
            return out
        if kind in ("number", "fraction"):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"expected a number, got {value!r}", key)
            out = float(value)
            if not math.isfinite(out):
                raise ConfigError("must be finite", key)
            if kind == "fraction" and not 0.0 <= out <= 1.0:
                raise ConfigError(f"must lie in [0, 1], got {out}", key)
            return out
        if kind == "int":
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"expected an integer, got {value!r}", key)
            return value
        if kind == "seed":
            if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value < 2**64:
                raise ConfigError("seed must be an unsigned 64-bit integer", key)
            return value
        if kind == "bool":
            if not isinstance(value, bool):
                raise ConfigError(f"expected true/false, got {value!r}", key)
            return value
        if kind == "number_list":
            if not isinstance(value, list) or not value:
                raise ConfigError("expected a non-empty list of numbers", key)
            return [_coerce(v, "number", f"{key}[{i}]") for i, v in enumerate(value)]
        if kind == "mode":
            if value not in ("passive", "gated"):
                raise ConfigError(f"mode must be passive or gated, got {value!r}", key)
            return value
        if kind == "engine":
            if value not in ENGINES:
                raise ConfigError(f"engine must be one of {ENGINES}, got {value!r}", key)
            return value
        if kind == "preset":
            if value not in PRESETS:
                raise ConfigError(f"preset must be one of {PRESETS}, got {value!r}", key)
            return value
        if kind == "schema":
            if value != SCHEMA:
                raise ConfigError(f"unsupported schema {value!r} (expected {SCHEMA!r})", key)
            return value
    except UnitError as exc:
        raise ConfigError(str(exc), key) from None
    raise AssertionError(kind)


def _resolve_section(layout: dict, given, prefix: str) -> dict:
    if given is None:
        given = {}
    if not isinstance(given, dict):
        raise ConfigError("expected an object", prefix.rstrip("."))
    unknown = sorted(set(given) - set(layout))
    if unknown:
        raise ConfigError("unknown key", prefix + unknown[0])
    out = {}
    for name, sub in layout.items():
        key = prefix + name
        if isinstance(sub, dict):
            out[name] = _resolve_section(sub, given.get(name), key + ".")
        else:
            kind, default = sub
            out[name] = _coerce(given.get(name, default), kind, key)
    return out


def _resolve_detectors(defaults: dict, given, prefix="detectors.") -> dict:
    given = given or {}
    if not isinstance(given, dict):
        raise ConfigError("expected an object", "detectors")
    unknown = sorted(set(given) - set(defaults))
    if unknown:
        raise ConfigError("unknown detector", prefix + unknown[0])
    out = {}
    for name, dflt in defaults.items():
        layout = {k: (kind, dflt[k]) for k, (kind, _) in _DETECTOR.items()}
        layout["efficiency"] = ("fraction", dflt["efficiency"])
        out[name] = _resolve_section(layout, given.get(name), f"{prefix}{name}.")
    return out


def resolve(raw: dict) -> dict:
    """Fill defaults, parse units and validate; returns the resolved config dict."""
    if not isinstance(raw, dict):
        raise ConfigError("top level must be an object")
    preset = _coerce(raw.get("preset"), "preset", "preset")
    table = _FRANSON if preset == "franson_plasmon" else _TEMPORAL
    layout = {**_COMMON, **{k: v for k, v in table.items() if k != "detectors"}}
    given = {k: v for k, v in raw.items() if k not in ("detectors", "notes")}
    out = _resolve_section(layout, given, "")
    out["detectors"] = _resolve_detectors(table["detectors"], raw.get("detectors"))
    notes = raw.get("notes", {})
    if not isinstance(notes, dict) or not all(isinstance(v, str) for v in notes.values()):
        raise ConfigError("notes must map keys to strings", "notes")
    out["notes"] = dict(notes)
    _check(out)
    return out


def _check(cfg: dict) -> None:
    if cfg["phase_scan"]["steps"] < 2:
        raise ConfigError("need at least 2 phase steps", "phase_scan.steps")
    if cfg["shards"] < 1:
        raise ConfigError("need at least one shard", "shards")
    if cfg["engine"] in ("montecarlo", "both") and cfg["seed"] is None:
        raise ConfigError("a seed is required for the montecarlo engine", "seed")
    for name, d in cfg["detectors"].items():
        if d["mode"] == "gated" and not d["gate_width"] > 0:
            raise ConfigError("gated detector needs gate_width > 0", f"detectors.{name}.gate_width")
    if cfg["preset"] == "franson_plasmon":
        if not cfg["integration_s"] > 0:
            raise ConfigError("integration time must be positive", "integration_s")
        if cfg["detectors"]["d2"]["mode"] != "gated":
            raise ConfigError("the stop detector must be gated (triggered by d1)", "detectors.d2.mode")
        cal = cfg["calibration"]
        if not cal["auto_tune"]:
            if cfg["setup"]["pair_rate"] is None:
                raise ConfigError("pair_rate is required when auto_tune is off", "setup.pair_rate")
            if cfg["setup"]["collection_b"] is None:
                raise ConfigError("collection_b is required when auto_tune is off", "setup.collection_b")
            if cfg["detectors"]["d1"]["dark_rate"] is None:
                raise ConfigError("dark_rate is required when auto_tune is off", "detectors.d1.dark_rate")
        s = cfg["setup"]
        for k in ("pump_wavelength", "signal_wavelength", "bragg_fwhm", "psw1_length", "psw2_length",
                  "imbalance"):
            if not s[k] > 0:
                raise ConfigError("must be positive", f"setup.{k}")
        if s["signal_wavelength"] <= s["pump_wavelength"]:
            raise ConfigError("signal must be longer than the pump", "setup.signal_wavelength")
        if s["group_index"] < 1:
            raise ConfigError("group index must be >= 1", "setup.group_index")
    else:
        if cfg["pulses_per_point"] < 1:
            raise ConfigError("need at least one pulse per point", "pulses_per_point")
        s = cfg["setup"]
        if s["mu"] is not None and not s["mu"] > 0:
            raise ConfigError("mean photon number must be positive", "setup.mu")
        if not s["mu_target"] > 0:
            raise ConfigError("must be positive", "setup.mu_target")
        if cfg["detectors"]["d"]["mode"] != "gated":
            raise ConfigError("the detector must be gated on the interfering slot", "detectors.d.mode")


@dataclass(frozen=True)
class PhaseScan:
    start: float
    stop: float
    steps: int

    def phases(self) -> np.ndarray:
        """``steps`` equally spaced phases on ``[start, stop)``."""
        return np.linspace(self.start, self.stop, self.steps, endpoint=False)


@dataclass(frozen=True)
class ExperimentConfig:
    resolved: dict = field(repr=False)

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        return cls(resolve(raw))

    @classmethod
    def preset(cls, name: str, **overrides) -> "ExperimentConfig":
        raw = load_preset_dict(name)
        raw = _deep_merge(raw, overrides)
        return cls.from_dict(raw)

    def with_overrides(self, **overrides) -> "ExperimentConfig":
        return ExperimentConfig.from_dict(_deep_merge(copy.deepcopy(self.resolved), overrides))

    # convenience accessors
    @property
    def preset_name(self) -> str:
        return self.resolved["preset"]

    @property
    def seed(self):
        return self.resolved["seed"]

    @property
    def engine(self) -> str:
        return self.resolved["engine"]

    @property
    def shards(self) -> int:
        return self.resolved["shards"]

    @property
    def setup(self) -> dict:
        return self.resolved["setup"]

    @property
    def phase_scan(self) -> PhaseScan:
        return PhaseScan(**self.resolved["phase_scan"])

    def detector(self, name: str, **changes) -> DetectorParams:
        d = dict(self.resolved["detectors"][name])
        d.update(changes)
        if d["dark_rate"] is None:
            raise ConfigError("dark rate not resolved (auto-tune pending)", f"detectors.{name}.dark_rate")
        return DetectorParams(**d)

    def to_json(self) -> str:
        return json.dumps(self.resolved, sort_keys=True, indent=2)

    @property
    def hash(self) -> str:
        return config_hash(self.resolved)


def config_hash(resolved: dict) -> str:
    blob = json.dumps(resolved, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _deep_merge(base: dict, extra: dict) -> dict:
    out = copy.deepcopy(base)
    for k, v in extra.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = _deep_merge(out[k], v)
        else:
            out[k] = v
    return out


PRESET_FILES = {"franson_plasmon": "franson.json", "temporal_superposition": "temporal.json"}


def load_preset_dict(name: str) -> dict:
    fname = PRESET_FILES.get(name, name if name.endswith(".json") else f"{name}.json")
    text = resources.files("fransonlab").joinpath("presets", fname).read_text()
    return json.loads(text)


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg} (column {exc.colno})", line=exc.lineno) from None
    return ExperimentConfig.from_dict(raw)
