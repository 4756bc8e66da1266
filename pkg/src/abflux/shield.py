"""Binary Meissner-shielding model with an energy-gap frequency cutoff.

A superconducting shield either screens a field completely or not at all.
It screens static fields below T_c when its wall is thick (d >= 5 lambda),
and screens the field pulse of a passing charge only if the photon energy at
the pulse's centroid frequency is below the gap.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .constants import E_CHARGE, H_PLANCK
from .errors import DomainError
from .fields import _cylindrical
from .interaction import interaction_energy_integral

THICK_WALL_RATIO = 5.0
PULSE_WINDOW = 20.0  # half-window in units of b / speed
DEFAULT_PULSE_SAMPLES = 1024


@dataclass(frozen=True)
class ShieldSpec:
    critical_temperature: float  # K
    energy_gap: float  # eV
    penetration_depth: float  # m
    thickness: float  # m
    radius: float  # m, geometric radius of the shield cylinder
    gap_multiplier: float = 1.0  # threshold = gap_multiplier * energy_gap

    def __post_init__(self):
        for name in ("critical_temperature", "energy_gap", "penetration_depth",
                     "thickness", "radius", "gap_multiplier"):
            if not getattr(self, name) > 0:
                raise ValueError(f"shield {name} must be > 0")

    @property
    def thick(self):
        return self.thickness >= THICK_WALL_RATIO * self.penetration_depth

    @property
    def threshold_ev(self):
        return self.gap_multiplier * self.energy_gap


@dataclass
class PulseSpectrum:
    frequencies: np.ndarray  # Hz
    amplitudes: np.ndarray  # T/Hz
    centroid_frequency: float  # Hz
    photon_energy: float  # eV, at the centroid


def pulse_spectrum(speed, impact_parameter, samples=DEFAULT_PULSE_SAMPLES, q=E_CHARGE):
    """Amplitude spectrum of the field pulse of a passing charge.

    The field is sampled at a point a perpendicular distance
    ``impact_parameter`` from the straight trajectory, over
    t in [-20 b/v, 20 b/v]. The transverse component (along v x b) is
    Fourier transformed; ``centroid_frequency`` is the amplitude-weighted
    mean frequency.
    """
    if not speed > 0 or not impact_parameter > 0:
        raise ValueError("speed and impact parameter must be > 0")
    samples = int(samples)
    if samples < 64 or samples & (samples - 1):
        raise ValueError("samples must be a power of two >= 64")
    b = impact_parameter
    half = PULSE_WINDOW * b / speed
    dt = 2 * half / samples
    t = (np.arange(samples) - samples / 2 + 0.5) * dt
    # charge on the x axis moving along +x, observer at (0, b, 0)
    rel = np.column_stack([-speed * t, np.full(samples, b), np.zeros(samples)])
    bt = kernels.charge_b(rel, np.zeros(3), np.array([q * speed, 0.0, 0.0]))[:, 2]
    amp = np.abs(np.fft.rfft(bt)) * dt
    freq = np.fft.rfftfreq(samples, dt)
    centroid = float(freq @ amp / amp.sum())
    return PulseSpectrum(freq, amp, centroid, H_PLANCK * centroid / E_CHARGE)


def screened_field(field, shield, s):
    """``field`` with the region inside the shield screened out.

    The shield is a cylinder of radius ``shield.radius`` coaxial with
    solenoid ``s``; inside it the returned field is zero (London gauge for
    potentials).
    """
    def screened(pts):
        pts = np.asarray(pts, dtype=float).reshape(-1, 3)
        rho, _, _, _ = _cylindrical(s, pts)
        out = np.array(field(pts), dtype=float).reshape(-1, 3)
        out[rho < shield.radius] = 0.0
        return out
    return screened


def shields_dc(spec, temperature):
    """Static screening: superconducting and thick-walled."""
    if not temperature > 0:
        raise ValueError("temperature must be > 0")
    return temperature < spec.critical_temperature and spec.thick


def shields_ac(spec, temperature, photon_energy):
    """Screening of a field varying at ``photon_energy`` (eV)."""
    if photon_energy < 0:
        raise ValueError("photon energy must be >= 0")
    return shields_dc(spec, temperature) and photon_energy < spec.threshold_ev


def effective_interaction_energy(c, s, shield, temperature, tol=1e-3,
                                 samples=DEFAULT_PULSE_SAMPLES):
    """Charge-solenoid interaction energy behind a shield.

    Exactly zero when the shield screens the charge's pulse (evaluated at
    the shield radius), otherwise the unshielded overlap integral.
    """
    if shield.radius < s.radius:
        raise DomainError("shield must enclose the solenoid (shield radius >= solenoid radius)")
    rho, _, _, _ = _cylindrical(s, np.asarray(c.position, dtype=float).reshape(1, 3))
    if rho[0] <= shield.radius:
        raise DomainError("charge must be outside the shield")
    spectrum = pulse_spectrum(c.speed, shield.radius, samples) if c.speed > 0 else None
    photon = 0.0 if spectrum is None else spectrum.photon_energy
    if shields_ac(shield, temperature, photon):
        return 0.0
    return interaction_energy_integral(c, s, tol)
