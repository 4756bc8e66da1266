"""End-to-end acceptance checks.

Each ``check_N`` runs one criterion against an independent oracle and
returns a ``CheckResult``; ``run_all`` runs them in order. The CLI
``verify-all`` subcommand and the acceptance tests both use this module.
"""
from dataclasses import dataclass, replace
import math
import time

import numpy as np

from .constants import E_CHARGE, PHI0
from .fields import (ChargeState, LoopPath, SolenoidSpec, a_solenoid_closed, charge_a_field,
                     charge_b_field, disc_flux, line_integral, solenoid_a_field,
                     solenoid_a_truncation_study)
from .interaction import verify_eq2
from .interference import ab_phase, parity_distinguishable
from .quantum_lc import build_lc_operators, verify_commutators
from .shield import ShieldSpec, pulse_spectrum, screened_field, shields_ac
from .squid import Hypothesis, Protocol, SquidSpec, critical_current, run_experiment

SEED = 20231
NB_SHIELD = ShieldSpec(critical_temperature=9.2, energy_gap=3e-3, penetration_depth=4e-8,
                       thickness=1e-6, radius=2e-3)
OPERATING_TEMPERATURE = 4.2  # K
PAPER_FREQUENCY = 5e13  # Hz
FAST_SPEED = 2e8  # m/s
SLOW_SPEED = 1e5  # m/s
# b = v / (2 pi nu) for the fast electron; frozen before the build
FROZEN_IMPACT_PARAMETER = 6.366197723675814e-07  # m


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    elapsed: float

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:>2}: {self.name} ({self.detail}; {self.elapsed:.2f} s)"


def _timed(number, name, fn):
    t0 = time.perf_counter()
    passed, detail = fn()
    return CheckResult(number, name, bool(passed), detail, time.perf_counter() - t0)


def _energy_configs(count, seed=SEED):
    """Random charges outside a long solenoid, with a sizeable azimuthal velocity."""
    rng = np.random.default_rng(seed)
    radius = 1e-3
    s = SolenoidSpec(radius, 2000 * radius, 1e4, 0.1)
    out = []
    for _ in range(count):
        rho = rng.uniform(1.5, 10.0) * radius
        phi = rng.uniform(0, 2 * np.pi)
        z = rng.uniform(-5, 5) * radius
        rhat = np.array([np.cos(phi), np.sin(phi), 0.0])
        phat = np.array([-np.sin(phi), np.cos(phi), 0.0])
        alpha = rng.uniform(-np.pi / 3, np.pi / 3)
        beta = rng.uniform(0, 2 * np.pi)
        other = np.cos(beta) * rhat + np.sin(beta) * np.array([0.0, 0.0, 1.0])
        v = rng.uniform(1e4, 1e5) * (np.cos(alpha) * phat + np.sin(alpha) * other)
        out.append((ChargeState(-E_CHARGE, rho * rhat + [0, 0, z], v), s))
    return out


def check_1(count=50, tol=1e-3, budget=60.0):
    def run():
        t0 = time.perf_counter()
        worst = worst_gap = 0.0
        for c, s in _energy_configs(count):
            rep = verify_eq2(c, s, tol)
            worst = max(worst, rep.rel_discrepancy)
            worst_gap = max(worst_gap, rep.truncation_gap)
        dt = time.perf_counter() - t0
        ok = worst < 1e-2 and dt < budget
        return ok, f"{count} configs, worst rel {worst:.2e} < 1e-2, truncation gap {worst_gap:.1e}, {dt:.1f} s < {budget:.0f} s"
    return _timed(1, "overlap integral vs A.qv", run)


def probe_points(radius=1e-3):
    exterior = []
    rhos = [1.2, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 1.3, 3.5]
    for k, r in enumerate(rhos * 2):
        phi = 0.7 * k
        z = (-1) ** k * (k % 7) * 1.5 * radius
        exterior.append([r * radius * np.cos(phi), r * radius * np.sin(phi), z])
    interior = []
    for k, r in enumerate([0.2, 0.35, 0.5, 0.7, 0.9]):
        phi = 1.1 * k + 0.3
        interior.append([r * radius * np.cos(phi), r * radius * np.sin(phi), (k - 2) * 2 * radius])
    return np.array(exterior), np.array(interior)


def check_2(tol=1e-3, budget=120.0):
    def run():
        t0 = time.perf_counter()
        radius = 1e-3
        s = SolenoidSpec(radius, 200 * radius, 1e4, 0.1)
        exterior, interior = probe_points(radius)
        worst = {"ext": 0.0, "int": 0.0}
        gap = 0.0
        for kind, pts in (("ext", exterior), ("int", interior)):
            for p in pts:
                study = solenoid_a_truncation_study(s, p, tol)
                ref = a_solenoid_closed(s, p)
                err = np.linalg.norm(study.a_short - ref) / np.linalg.norm(ref)
                worst[kind] = max(worst[kind], float(err))
                gap = max(gap, study.gap)
        dt = time.perf_counter() - t0
        ok = max(worst.values()) < 1e-2 and dt < budget
        return ok, (f"20 exterior worst {worst['ext']:.2e}, 5 interior worst {worst['int']:.2e} < 1e-2, "
                    f"L->2L gap {gap:.1e}, {dt:.1f} s < {budget:.0f} s")
    return _timed(2, "Biot-Savart potential vs closed form", run)


def stokes_loops(radius=1e-3):
    r = radius
    tilted = [0.0, np.sin(np.pi / 6), np.cos(np.pi / 6)]
    square = [[-2.5 * r, -2.5 * r, 0], [2.5 * r, -2.5 * r, 0], [2.5 * r, 2.5 * r, 0],
              [-2.5 * r, 2.5 * r, 0]]
    enclosing = {
        "circle 1.5R": LoopPath.circle([0, 0, 0], [0, 0, 1], 1.5 * r),
        "circle 3R": LoopPath.circle([0, 0, 2 * r], [0, 0, 1], 3 * r),
        "offset circle 4R": LoopPath.circle([1.5 * r, 0, 0], [0, 0, 1], 4 * r),
        "tilted circle 3R": LoopPath.circle([0, 0, 0], tilted, 3 * r),
        "square 5R": LoopPath.polygon(_subdivide(square, 4)),
    }
    outside = [[2 * r, 2 * r, 0], [5 * r, 2 * r, 0], [5 * r, 5 * r, 0], [2 * r, 5 * r, 0]]
    non_enclosing = {
        "circle R at 3R": LoopPath.circle([3 * r, 0, 0], [0, 0, 1], r),
        "circle 0.5R at (2R, R)": LoopPath.circle([2 * r, r, 0], [0, 0, 1], 0.5 * r),
        "square beside": LoopPath.polygon(_subdivide(outside, 4)),
        "vertical circle": LoopPath.circle([4 * r, 0, 0], [0, 1, 0], 2 * r),
    }
    return enclosing, non_enclosing


def _subdivide(vertices, k):
    v = np.asarray(vertices, dtype=float)
    out = []
    for a, b in zip(v, np.roll(v, -1, axis=0)):
        for j in range(k):
            out.append(a + (b - a) * j / k)
    out.append(v[0])
    return np.array(out)


def check_3():
    def run():
        s = SolenoidSpec(1e-3, 0.2, 1e4, 0.1)
        flux = s.flux
        # closed form, and the winding integral of a finite solenoid 20000 R long
        fields = [solenoid_a_field(s), solenoid_a_field(replace(s, length=20.0, infinite=False))]
        enclosing, non_enclosing = stokes_loops(s.radius)
        enc = max(abs(line_integral(f, loop) - flux) / flux
                  for f in fields for loop in enclosing.values())
        non = max(abs(line_integral(f, loop, atol=1e-12 * flux)) / flux
                  for f in fields for loop in non_enclosing.values())
        ok = enc < 1e-3 and non < 1e-6
        return ok, (f"{len(enclosing)} enclosing loops worst rel {enc:.1e} < 1e-3, "
                    f"{len(non_enclosing)} non-enclosing worst {non:.1e} < 1e-6, closed and finite-winding A")
    return _timed(3, "loop integral of A equals enclosed flux", run)


def check_4():
    def run():
        s = SolenoidSpec(1e-3, 0.2, 1e4, 0.1)
        shield = NB_SHIELD
        c = ChargeState(-E_CHARGE, [5e-3, 0.0, 0.0], [0.0, SLOW_SPEED, 0.0])
        photon = pulse_spectrum(c.speed, shield.radius).photon_energy
        screens = shields_ac(shield, OPERATING_TEMPERATURE, photon)
        a1 = screened_field(charge_a_field(c), shield, s)
        b1 = screened_field(charge_b_field(c), shield, s)
        # a gradient added to the screened potential leaves every circulation unchanged
        x0 = np.asarray(c.position)
        k = 1e-7 * abs(c.q) * c.speed

        def gauged(pts):
            d = np.asarray(pts) - x0
            return a1(pts) - k * d / np.linalg.norm(d, axis=1)[:, None] ** 3

        loops = [
            (LoopPath.circle([0, 0, 0], [0, 0, 1], 1.5e-3), [0, 0, 0], [0, 0, 1], 1.5e-3),
            (LoopPath.circle([5e-4, 0, 1e-3], [0, 0, 1], 1e-3), [5e-4, 0, 1e-3], [0, 0, 1], 1e-3),
            (LoopPath.circle([0, 0, 0], [0, 0.5, np.sqrt(0.75)], 1.2e-3), [0, 0, 0],
             [0, 0.5, np.sqrt(0.75)], 1.2e-3),
        ]
        worst = worst_oracle = 0.0
        for loop, center, normal, r in loops:
            worst = max(worst, abs(line_integral(a1, loop)), abs(line_integral(gauged, loop, atol=1e-30)))
            worst_oracle = max(worst_oracle, abs(disc_flux(b1, center, normal, r)))
        # control: without the shield the same circulation is the nonzero disc flux
        loop, center, normal, r = loops[0]
        bare = line_integral(charge_a_field(c), loop)
        bare_flux = disc_flux(charge_b_field(c), center, normal, r, tol=1e-10)
        control = abs(bare - bare_flux) / abs(bare_flux)
        ok = screens and worst < 1e-9 and worst_oracle < 1e-9 and control < 1e-6 and bare_flux != 0
        return ok, (f"shield screens: {screens}, worst |circulation| {worst:.1e} T m^2, disc flux {worst_oracle:.1e}; "
                    f"unshielded control {bare_flux:.3e} Wb, Stokes rel {control:.1e}")
    return _timed(4, "null back-action behind the shield", run)


def check_5():
    def run():
        bad = []
        for n in range(11):
            for m in (2 * n + 1, 2 * n):
                got = ab_phase(m * PHI0)
                want = m * math.pi
                if abs(got - want) > 4 * np.spacing(max(want, 1.0)):
                    bad.append(m)
        table = [
            ((PHI0, 2 * PHI0, False), True),
            ((PHI0, 3 * PHI0, False), False),
            ((PHI0, 2 * PHI0, True), False),
        ]
        for n in range(11):
            table.append((((2 * n + 1) * PHI0, 2 * n * PHI0, False), True))
            table.append((((2 * n + 1) * PHI0, 2 * n * PHI0, True), False))
            table.append((((2 * n + 1) * PHI0, (2 * n + 3) * PHI0, False), False))
            table.append(((2 * n * PHI0, (2 * n + 2) * PHI0, False), False))
        mismatches = sum(parity_distinguishable(*args) != want for args, want in table)
        ok = not bad and mismatches == 0
        return ok, f"phase off at multiples {bad or 'none'}, truth table {len(table) - mismatches}/{len(table)} rows"
    return _timed(5, "AB phase and parity truth table", run)


def check_6():
    def run():
        b = FROZEN_IMPACT_PARAMETER
        fast = pulse_spectrum(FAST_SPEED, b)
        slow = pulse_spectrum(SLOW_SPEED, b)
        ratio = fast.centroid_frequency / PAPER_FREQUENCY
        fast_screens = shields_ac(NB_SHIELD, OPERATING_TEMPERATURE, fast.photon_energy)
        slow_screens = shields_ac(NB_SHIELD, OPERATING_TEMPERATURE, slow.photon_energy)
        ok = (1 / 3 < ratio < 3 and fast.photon_energy > NB_SHIELD.energy_gap
              and not fast_screens and slow_screens)
        return ok, (f"centroid {fast.centroid_frequency:.3e} Hz (x{ratio:.2f}), {fast.photon_energy:.3f} eV, "
                    f"screens fast {fast_screens}, slow {slow_screens} at {slow.photon_energy:.2e} eV")
    return _timed(6, "pulse spectrum against the energy gap", run)


def check_7(budget=5.0):
    def run():
        t0 = time.perf_counter()
        spec = SquidSpec(i0=1e-5, mutual_inductance=1e-9)
        proto = Protocol(n_quanta=10)
        totals = {}
        lock = 0.0
        for h in Hypothesis:
            tr = run_experiment(spec, NB_SHIELD, proto, h)
            totals[h] = tr.final_total_flux_quanta
            tail = tr.lock_error[-max(1, len(tr.lock_error) // 10):]
            lock = max(lock, float(np.abs(tail).max() / PHI0))
        dt = time.perf_counter() - t0
        vp = totals[Hypothesis.VECTOR_POTENTIAL]
        ie = totals[Hypothesis.INTERACTION_ENERGY]
        ok = abs(vp - 10) <= 1e-3 and abs(ie - 20) <= 1e-3 and lock < 1e-3 and dt < budget
        return ok, f"total flux vp {vp:.6f}, ie {ie:.6f} quanta, tail lock error {lock:.1e} Phi0, {dt:.2f} s"
    return _timed(7, "SQUID cooling experiment predictions", run)


def check_8(samples=1000):
    def run():
        spec = SquidSpec(i0=1e-5, mutual_inductance=1e-9)
        exact = (critical_current(spec, 0.0) == spec.i0
                 and critical_current(spec, PHI0 / 2) == 0.0
                 and all(critical_current(spec, n * PHI0) == spec.i0 for n in range(-20, 21)))
        rng = np.random.default_rng(SEED)
        flux = rng.uniform(-10, 10, samples) * PHI0
        diff = np.abs(critical_current(spec, flux + PHI0) - critical_current(spec, flux))
        # one rounding of Phi/Phi0 + 1 moves the argument by at most ulp(|x| + 1)
        allowed = 4 * np.pi * spec.i0 * np.spacing(np.abs(flux / PHI0) + 1)
        periodic = bool(np.all(diff <= allowed))
        ok = exact and periodic
        return ok, f"exact points {exact}, periodicity over {samples} fluxes max diff {diff.max():.1e} A"
    return _timed(8, "SQUID critical current", run)


def check_9():
    def run():
        worst = [0.0, 0.0, 0.0]
        for n in (4, 8, 16, 32):
            rep = verify_commutators(*build_lc_operators(1e-9, 1e-12, n))
            worst[0] = max(worst[0], rep.max_block_deviation, rep.max_offblock_deviation)
            worst[1] = max(worst[1], abs(rep.corner_value - rep.expected_corner))
            worst[2] = max(worst[2], rep.cu_phi_max_diff)
        ok = worst[0] < 1e-10 and worst[1] < 1e-10 and worst[2] < 1e-14
        return ok, f"block {worst[0]:.1e}, corner {worst[1]:.1e}, C[U,Phi] vs [q,Phi] {worst[2]:.1e}"
    return _timed(9, "LC commutators", run)


CHECKS = (check_1, check_2, check_3, check_4, check_5, check_6, check_7, check_8, check_9)


def run_all(report=None):
    results = []
    for check in CHECKS:
        res = check()
        results.append(res)
        if report is not None:
            report(res)
    return results
