"""Scenario configuration files.

A scenario is a TOML document with the sections listed in ``SCHEMA``. Every
key is optional and defaults are filled in; unknown sections or keys are
rejected, and each value is checked when the file is loaded.
"""
from dataclasses import dataclass
import hashlib
import json
import math
import sys

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .constants import E_CHARGE
from .errors import ConfigError
from .fields import ChargeState, SolenoidSpec
from .shield import ShieldSpec
from .squid import Hypothesis, Protocol, SquidSpec


def _number(v):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValueError("must be a number")
    v = float(v)
    if not math.isfinite(v):
        raise ValueError("must be finite")
    return v


def _positive(v):
    v = _number(v)
    if not v > 0:
        raise ValueError("must be > 0")
    return v


def _nonnegative(v):
    v = _number(v)
    if v < 0:
        raise ValueError("must be >= 0")
    return v


def _integer(minimum):
    def check(v):
        if isinstance(v, bool) or not isinstance(v, int):
            raise ValueError("must be an integer")
        if v < minimum:
            raise ValueError(f"must be >= {minimum}")
        return v
    return check


def _power_of_two(v):
    v = _integer(64)(v)
    if v & (v - 1):
        raise ValueError("must be a power of two")
    return v


def _boolean(v):
    if not isinstance(v, bool):
        raise ValueError("must be true or false")
    return v


def _vec3(v):
    if not isinstance(v, list) or len(v) != 3:
        raise ValueError("must be a list of 3 numbers")
    return [_number(x) for x in v]


def _nonzero_vec3(v):
    v = _vec3(v)
    if not any(v):
        raise ValueError("must be a nonzero vector")
    return v


def _axis_range(v):
    # [min, max, count]
    if not isinstance(v, list) or len(v) != 3:
        raise ValueError("must be [min, max, count]")
    lo, hi = _number(v[0]), _number(v[1])
    count = _integer(1)(v[2])
    if count > 1 and not hi > lo:
        raise ValueError("needs max > min when count > 1")
    return [lo, hi, count]


def _choice(*options):
    def check(v):
        if v not in options:
            raise ValueError(f"must be one of {', '.join(map(repr, options))}")
        return v
    return check


def _string(v):
    if not isinstance(v, str):
        raise ValueError("must be a string")
    return v


SCHEMA = {
    "solenoid": {
        "radius": (1e-3, _positive),
        "length": (0.2, _positive),
        "turns_per_meter": (1e5, _positive),
        "current": (0.01, _number),
        "center": ([0.0, 0.0, 0.0], _vec3),
        "axis": ([0.0, 0.0, 1.0], _nonzero_vec3),
        "infinite": (True, _boolean),
    },
    "charge": {
        "q": (-E_CHARGE, _number),
        "position": ([3e-3, 0.0, 0.0], _vec3),
        "velocity": ([0.0, 1e5, 0.0], _vec3),
        "relativistic_override": (False, _boolean),
    },
    "shield": {
        "critical_temperature": (9.2, _positive),
        "energy_gap": (3e-3, _positive),
        "penetration_depth": (4e-8, _positive),
        "thickness": (1e-6, _positive),
        "radius": (2e-3, _positive),
        "gap_multiplier": (1.0, _positive),
        "temperature": (4.2, _positive),
        "pulse_samples": (1024, _power_of_two),
    },
    "squid": {
        "i0": (1e-5, _positive),
        "mutual_inductance": (1e-9, _positive),
        "n_quanta": (10, _integer(1)),
        "t_start": (12.0, _positive),
        "t_end": (4.0, _positive),
        "ramp_steps": (2000, _integer(1)),
        "front_steps": (400, _integer(1)),
        "kp": (0.5, _nonnegative),
        "ki": (0.1, _nonnegative),
        "hypothesis": ("ie", _choice("vp", "ie")),
    },
    "quadrature": {
        "tol": (1e-3, _positive),
        "max_depth": (30, _integer(1)),
    },
    "output": {
        "path": ("", _string),
    },
    "grid": {
        "x": ([-3e-3, 3e-3, 7], _axis_range),
        "y": ([-3e-3, 3e-3, 7], _axis_range),
        "z": ([0.0, 0.0, 1], _axis_range),
        "source": ("solenoid", _choice("solenoid", "charge", "both")),
        "potential": (True, _boolean),
    },
    "trajectory": {
        "t_start": (-1e-7, _number),
        "t_end": (1e-7, _number),
        "samples": (41, _integer(3)),
        "turns_total": (1000, _integer(1)),
        "sections": (1, _integer(1)),
    },
    "interference": {
        "flux_quanta": (1.0, _number),
        "gradient": (1e6, _number),
        "screen_min": (-1e-5, _number),
        "screen_max": (1e-5, _number),
        "screen_points": (201, _integer(1)),
        "shielded": (False, _boolean),
    },
    "lc": {
        "inductance": (1e-9, _positive),
        "capacitance": (1e-12, _positive),
        "dim": (16, _integer(4)),
    },
}


@dataclass
class ScenarioConfig:
    values: dict

    def __getitem__(self, section):
        return self.values[section]

    @property
    def hash(self):
        blob = json.dumps(self.values, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()

    def solenoid(self):
        s = self.values["solenoid"]
        return SolenoidSpec(s["radius"], s["length"], s["turns_per_meter"], s["current"],
                            center=s["center"], axis=s["axis"], infinite=s["infinite"])

    def charge(self):
        c = self.values["charge"]
        return ChargeState(c["q"], c["position"], c["velocity"], c["relativistic_override"])

    def shield(self):
        s = self.values["shield"]
        return ShieldSpec(s["critical_temperature"], s["energy_gap"], s["penetration_depth"],
                          s["thickness"], s["radius"], s["gap_multiplier"])

    def squid(self):
        s = self.values["squid"]
        return SquidSpec(s["i0"], s["mutual_inductance"])

    def protocol(self):
        s = self.values["squid"]
        return Protocol(s["n_quanta"], s["t_start"], s["t_end"], s["ramp_steps"],
                        s["kp"], s["ki"], s["front_steps"])

    def hypothesis(self):
        return Hypothesis(self.values["squid"]["hypothesis"])


def default_config():
    return parse_config("")


def parse_config(text):
    """Parse and validate a scenario document."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"syntax error: {exc}") from None
    values = {}
    for section, data in doc.items():
        if section not in SCHEMA:
            raise ConfigError(f"unknown section [{section}]", key=section)
        if not isinstance(data, dict):
            raise ConfigError(f"[{section}] must be a table", key=section)
        for key in data:
            if key not in SCHEMA[section]:
                raise ConfigError(f"unknown key {section}.{key}", key=f"{section}.{key}")
    for section, keys in SCHEMA.items():
        given = doc.get(section, {})
        out = {}
        for key, (default, check) in keys.items():
            raw = given.get(key, default)
            try:
                out[key] = check(raw)
            except ValueError as exc:
                raise ConfigError(f"{section}.{key} {exc} (got {raw!r})",
                                  key=f"{section}.{key}") from None
        values[section] = out
    cfg = ScenarioConfig(values)
    _cross_check(cfg)
    return cfg


def _cross_check(cfg):
    builders = [
        ("solenoid", cfg.solenoid, "solenoid.radius"),
        ("charge", cfg.charge, "charge.velocity"),
        ("shield", cfg.shield, "shield.radius"),
        ("squid", cfg.squid, "squid.i0"),
        ("squid", cfg.protocol, "squid.n_quanta"),
    ]
    for section, build, key in builders:
        try:
            build()
        except ValueError as exc:
            raise ConfigError(f"[{section}] {exc}", key=key) from None
    t = cfg["trajectory"]
    if not t["t_end"] > t["t_start"]:
        raise ConfigError("trajectory.t_end must exceed trajectory.t_start", key="trajectory.t_end")
    i = cfg["interference"]
    if i["gradient"] == 0:
        raise ConfigError("interference.gradient must be nonzero", key="interference.gradient")


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
