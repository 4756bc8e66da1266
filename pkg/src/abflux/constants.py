"""Physical constants (CODATA 2018, SI).

Values are pinned here rather than taken from ``scipy.constants`` so results
do not shift when scipy adopts a newer CODATA release.
"""
import math

C_LIGHT = 299_792_458.0  # m/s
H_PLANCK = 6.62607015e-34  # J s
HBAR = H_PLANCK / (2.0 * math.pi)  # J s
E_CHARGE = 1.602176634e-19  # C
MU0 = 1.25663706212e-6  # N/A^2

#: superconducting flux quantum h/2e (Wb)
PHI0 = H_PLANCK / (2.0 * E_CHARGE)
#: flux quantum of the Aharonov-Bohm phase formula, h/e (Wb)
PHI_AB = H_PLANCK / E_CHARGE

MU0_OVER_4PI = MU0 / (4.0 * math.pi)

#: non-relativistic validity limit for ChargeState speeds
NONRELATIVISTIC_SPEED_LIMIT = 0.01 * C_LIGHT
