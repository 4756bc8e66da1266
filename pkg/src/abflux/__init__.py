"""Numerical models of the Aharonov-Bohm setting: solenoid and moving-charge
fields, their interaction energy, Meissner shielding, a SQUID flux-locked
loop experiment, and truncated LC-circuit commutators."""
from .constants import E_CHARGE, H_PLANCK, HBAR, MU0, PHI0, PHI_AB
from .errors import ConfigError, ConvergenceError, DomainError, InstabilityError, SingularityError
from .fields import (BoxDomain, ChargeState, LoopPath, SolenoidSpec, Vec3, a_from_b_integral,
                     a_moving_charge, a_solenoid, a_solenoid_closed, b_moving_charge, b_solenoid,
                     line_integral)
from .interaction import (EmfTrace, EnergyReport, induced_emf, interaction_energy_closed,
                          interaction_energy_integral, verify_eq2)
from .interference import FluxQuanta, FringePattern, ab_phase, fringe_pattern, parity_distinguishable
from .kernels import BACKEND
from .quantum_lc import OperatorMatrix, build_lc_operators, verify_commutators
from .shield import ShieldSpec, effective_interaction_energy, pulse_spectrum, shields_ac, shields_dc
from .squid import (ExperimentTrace, Hypothesis, Protocol, SquidSpec, critical_current,
                    observable_flux, run_experiment)

__version__ = "0.1.0"
