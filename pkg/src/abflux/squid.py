"""dc-SQUID response and the two-solenoid flux-locked-loop experiment.

Solenoid b carries a fixed flux n * Phi0 and is wrapped in a superconducting
cylinder that is cooled through T_c; solenoid a is the feedback coil of the
flux-locked loop. The loop holds the flux the SQUID responds to at the value
it had when the feedback was switched on. Which flux the SQUID responds to
is the hypothesis under test:

* vector potential: Phi_a + Phi_b, whatever the shield does;
* interaction energy: Phi_a + (1 - f) Phi_b, where f is the fraction of the
  cylinder already superconducting.
"""
from dataclasses import dataclass, field, replace
import enum

import numpy as np

from .constants import PHI0
from .errors import InstabilityError
from .shield import shields_dc

DIVERGENCE_STEPS = 100
# growth factor per step that counts as "growing" for divergence detection
_GROWTH = 1.0 + 1e-3


class Hypothesis(enum.Enum):
    VECTOR_POTENTIAL = "vp"
    INTERACTION_ENERGY = "ie"


@dataclass(frozen=True)
class SquidSpec:
    i0: float  # A, maximum critical current
    mutual_inductance: float  # H, solenoid-a current -> SQUID-loop flux
    flux_quantum: float = PHI0
    lock_setpoint: float = 0.0  # Wb; captured by run_experiment

    def __post_init__(self):
        if not self.i0 > 0:
            raise ValueError("SQUID i0 must be > 0")
        if not self.mutual_inductance > 0:
            raise ValueError("SQUID mutual_inductance must be > 0")
        if not self.flux_quantum > 0:
            raise ValueError("flux quantum must be > 0")


@dataclass(frozen=True)
class Protocol:
    n_quanta: int = 10
    t_start: float = 12.0  # K
    t_end: float = 4.0  # K
    ramp_steps: int = 2000
    kp: float = 0.5
    ki: float = 0.1
    front_steps: int = 400

    def __post_init__(self):
        if int(self.n_quanta) != self.n_quanta or self.n_quanta < 1:
            raise ValueError("n_quanta must be an integer >= 1")
        if self.ramp_steps < 1 or self.front_steps < 1:
            raise ValueError("ramp_steps and front_steps must be >= 1")
        if self.kp < 0 or self.ki < 0:
            raise ValueError("controller gains must be >= 0")
        if not self.t_start > 0 or not self.t_end > 0:
            raise ValueError("temperatures must be > 0")


@dataclass
class ExperimentTrace:
    hypothesis: Hypothesis
    lock_setpoint: float
    flux_quantum: float
    step: np.ndarray = field(repr=False)
    temperature: np.ndarray = field(repr=False)
    shielded_fraction: np.ndarray = field(repr=False)
    i_a: np.ndarray = field(repr=False)
    phi_a: np.ndarray = field(repr=False)
    phi_b: np.ndarray = field(repr=False)
    phi_obs: np.ndarray = field(repr=False)
    i_c: np.ndarray = field(repr=False)

    COLUMNS = ("step", "T_K", "f", "I_a_A", "phi_a_wb", "phi_b_wb", "phi_obs_wb", "I_c_A")

    @property
    def total_flux(self):
        return self.phi_a + self.phi_b

    @property
    def final_total_flux_quanta(self):
        return float(self.total_flux[-1] / self.flux_quantum)

    @property
    def lock_error(self):
        return self.phi_obs - self.lock_setpoint

    def rows(self):
        cols = (self.step, self.temperature, self.shielded_fraction, self.i_a,
                self.phi_a, self.phi_b, self.phi_obs, self.i_c)
        return zip(*cols)


def critical_current(spec, flux):
    """I0 |cos(pi Phi / Phi0)|.

    Evaluated as I0 sin(pi (1/2 - |r|)) with r the distance of Phi/Phi0 to
    the nearest integer, which is exactly 0 at half-integers and exactly I0
    at integers.
    """
    x = np.asarray(flux, dtype=float) / spec.flux_quantum
    r = np.abs(x - np.round(x))
    return spec.i0 * np.sin(np.pi * (0.5 - r))


def observable_flux(h, phi_a, phi_b, f):
    """Flux the SQUID responds to under hypothesis ``h``."""
    if not 0.0 <= f <= 1.0:
        raise ValueError("shielded fraction must lie in [0, 1]")
    if h is Hypothesis.VECTOR_POTENTIAL:
        return phi_a + phi_b
    return phi_a + (1.0 - f) * phi_b


def _build_trace(h, setpoint, spec, cols):
    arr = {k: np.array(v, dtype=float) for k, v in cols.items()}
    return ExperimentTrace(h, setpoint, spec.flux_quantum, arr["step"].astype(int),
                           arr["T"], arr["f"], arr["i_a"], arr["phi_a"], arr["phi_b"],
                           arr["phi_obs"], arr["i_c"])


def run_experiment(spec, shield, proto, h, *, require_transition=True):
    """Simulate both steps of the cooling experiment.

    Step 1 (one row): feedback off, I_a = 0, Phi_b = n Phi0. Step 2
    (``ramp_steps`` rows): temperature ramps linearly to ``t_end``; once the
    cylinder is superconducting the front advances one step per row,
    f = completed / front_steps; a discrete PI controller (velocity form)
    drives the observed flux back to the step-1 value.

    ``require_transition=False`` admits ramps that never cross T_c.

    Raises InstabilityError when the lock error grows for 100 consecutive
    steps.
    """
    tc = shield.critical_temperature
    if require_transition and not proto.t_start > tc > proto.t_end:
        raise ValueError(f"protocol must ramp through T_c: need t_start > {tc} > t_end")
    phi0 = spec.flux_quantum
    phi_b = proto.n_quanta * phi0
    i_a = 0.0
    cols = {k: [] for k in ("step", "T", "f", "i_a", "phi_a", "phi_b", "phi_obs", "i_c")}

    def record(k, temp, f, phi_obs):
        cols["step"].append(k)
        cols["T"].append(temp)
        cols["f"].append(f)
        cols["i_a"].append(i_a)
        cols["phi_a"].append(spec.mutual_inductance * i_a)
        cols["phi_b"].append(phi_b)
        cols["phi_obs"].append(phi_obs)
        cols["i_c"].append(float(critical_current(spec, phi_obs)))

    setpoint = observable_flux(h, 0.0, phi_b, 0.0)
    record(0, proto.t_start, 0.0, setpoint)
    spec = replace(spec, lock_setpoint=setpoint)

    temps = np.linspace(proto.t_start, proto.t_end, proto.ramp_steps + 1)[1:]
    front = 0
    prev_err = 0.0
    growing = 0
    for k, temp in enumerate(temps, start=1):
        if front < proto.front_steps and shields_dc(shield, temp):
            front += 1
        f = front / proto.front_steps
        phi_a = spec.mutual_inductance * i_a
        phi_obs = observable_flux(h, phi_a, phi_b, f)
        record(k, float(temp), f, phi_obs)
        err = setpoint - phi_obs
        if abs(err) > _GROWTH * abs(prev_err) and abs(err) > 1e-12 * phi0:
            growing += 1
            if growing >= DIVERGENCE_STEPS:
                raise InstabilityError(
                    f"flux-locked loop diverging at step {k}: lock error {err:.3e} Wb",
                    trace=_build_trace(h, setpoint, spec, cols),
                )
        else:
            growing = 0
        i_a += (proto.kp * (err - prev_err) + proto.ki * err) / spec.mutual_inductance
        prev_err = err
    return _build_trace(h, setpoint, spec, cols)
