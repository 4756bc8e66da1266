"""Interaction energy between a moving charge and a solenoid, and the EMF the
passing charge induces in the winding.

The energy is computed two independent ways: as the field-overlap volume
integral (1/mu0) * integral(B_charge . B_solenoid) over the solenoid
interior, and as A_solenoid(x_e) . q v.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .constants import MU0
from .errors import DomainError
from .fields import _basis, _cylindrical, a_solenoid, b_solenoid, charge_b_field, disc_flux
from .quadrature import cubature

ENERGY_FLOOR = 1e-40  # J


@dataclass
class EnergyReport:
    w_integral: float
    w_closed: float
    rel_discrepancy: float
    quadrature_cells: int
    tol_used: float
    truncation_gap: float = None  # None unless a 2L truncation run was made

    def as_row(self):
        return {
            "w_integral_J": self.w_integral,
            "w_closed_J": self.w_closed,
            "rel_discrepancy": self.rel_discrepancy,
            "quadrature_cells": self.quadrature_cells,
            "tol_used": self.tol_used,
            "truncation_gap": self.truncation_gap,
        }


@dataclass
class EmfTrace:
    times: np.ndarray
    flux_through_solenoid: np.ndarray  # total linkage, Wb
    emf: np.ndarray

    def __post_init__(self):
        n = len(self.times)
        if n < 3 or len(self.flux_through_solenoid) != n or len(self.emf) != n:
            raise ValueError("EmfTrace needs >= 3 samples in equal-length lists")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("EmfTrace times must be strictly increasing")


def _inside_body(s, positions):
    rho, z, _, _ = _cylindrical(s, np.asarray(positions, dtype=float).reshape(-1, 3))
    inside = rho <= s.radius
    if not s.infinite:
        inside &= np.abs(z) <= 0.5 * s.length
    return inside


def _require_outside(c, s):
    if _inside_body(s, np.asarray(c.position))[0]:
        raise DomainError("the charge must lie outside the solenoid body")


def _axial_breaks(z0, scale, half):
    z0 = float(np.clip(z0, -half, half))
    steps = scale * 2.0 ** np.arange(-1, 64)
    steps = steps[steps < 2 * half]
    pts = np.concatenate([[-half, z0, half], z0 - steps, z0 + steps])
    pts = np.unique(pts[(pts >= -half) & (pts <= half)])
    return pts


def interaction_energy_integral(c, s, tol=1e-3, *, length=None, full_output=False):
    """(1/mu0) * integral of B_charge . B_solenoid over the solenoid interior (J).

    Integrated in cylindrical coordinates over rho <= R, |z| <= L/2 (L is
    the truncation length for infinite solenoids, overridable with
    ``length``), with breakpoints graded about the charge's axial position.
    """
    _require_outside(c, s)
    half = 0.5 * (s.length if length is None else length)
    axis, e1, e2 = _basis(np.asarray(s.axis))
    center = np.asarray(s.center)
    xe = np.asarray(c.position)
    qv = c.q * np.asarray(c.velocity)
    d = xe - center
    ze = float(d @ axis)
    radial = d - ze * axis
    rho_e = float(np.linalg.norm(radial))
    phi_e = float(np.arctan2(radial @ e2, radial @ e1))

    def integrand(x):
        r, ph, z = x[:, 0], x[:, 1], x[:, 2]
        pts = center + (r * np.cos(ph))[:, None] * e1 + (r * np.sin(ph))[:, None] * e2 + z[:, None] * axis
        b1 = kernels.charge_b(pts, xe, qv)
        if s.infinite:
            dens = s.turns_per_meter * s.current * (b1 @ axis)
        else:
            dens = np.einsum("ij,ij->i", b1, b_solenoid(s, pts)) / MU0
        return dens * r

    grid = [
        np.array([0.0, 0.5 * s.radius, s.radius]),
        phi_e + np.linspace(-np.pi, np.pi, 9),
        _axial_breaks(ze, max(rho_e, s.radius), half),
    ]
    # absolute floor for configurations where the energy itself vanishes
    a_mag = float(np.linalg.norm(a_solenoid(s, xe)))
    atol = 1e-3 * tol * a_mag * float(np.linalg.norm(qv))
    res = cubature(integrand, grid, tol=tol, atol=atol, max_depth=40)
    w = float(res.value)
    return (w, res) if full_output else w


def interaction_energy_closed(c, s):
    """A_solenoid(x_e) . q v (J)."""
    _require_outside(c, s)
    a = a_solenoid(s, np.asarray(c.position))
    return float(a @ (c.q * np.asarray(c.velocity)))


def verify_eq2(c, s, tol=1e-3, *, truncation_study=True):
    """Run both energy routes and compare them.

    For infinite solenoids a second overlap integral at twice the
    truncation length is run (unless ``truncation_study`` is off) and its
    relative change reported as ``truncation_gap``.
    """
    w_int, res = interaction_energy_integral(c, s, tol, full_output=True)
    w_cl = interaction_energy_closed(c, s)
    rel = abs(w_int - w_cl) / max(abs(w_cl), ENERGY_FLOOR)
    gap = None
    if s.infinite and truncation_study:
        w_long = interaction_energy_integral(c, s, tol, length=2 * s.length)
        gap = abs(w_long - w_int) / max(abs(w_long), ENERGY_FLOOR)
    return EnergyReport(w_int, w_cl, rel, res.cells, tol, gap)


def section_positions(s, sections):
    """Axial offsets of ``sections`` equally spaced cross-sections."""
    if sections == 1:
        return np.array([0.0])
    return ((np.arange(sections) + 0.5) / sections - 0.5) * s.length


def solenoid_linkage(c, s, turns_total, *, sections=1, tol=1e-8):
    """turns_total times the mean flux of the charge's field through
    ``sections`` cross-sections of the solenoid."""
    axis = np.asarray(s.axis)
    center = np.asarray(s.center)
    b1 = charge_b_field(c)
    flux = [disc_flux(b1, center + dz * axis, axis, s.radius, tol) for dz in section_positions(s, sections)]
    return turns_total * float(np.mean(flux))


def induced_emf(trajectory, s, turns_total, *, sections=1, tol=1e-8):
    """EMF induced in the winding by a charge moving along ``trajectory``.

    ``trajectory`` is a sequence of ``(time, ChargeState)``. The linkage is
    ``turns_total`` times the flux through the mid-plane cross-section
    (``sections > 1`` averages several cross-sections instead); the EMF is
    minus its time derivative by central differences, one-sided at the ends.
    """
    if len(trajectory) < 3:
        raise ValueError("need at least 3 trajectory samples")
    times = np.array([t for t, _ in trajectory], dtype=float)
    if np.any(np.diff(times) <= 0):
        raise ValueError("trajectory times must be strictly increasing")
    positions = np.array([np.asarray(st.position) for _, st in trajectory])
    if np.any(_inside_body(s, positions)):
        raise DomainError("trajectory enters the solenoid body")
    linkage = np.array([solenoid_linkage(st, s, turns_total, sections=sections, tol=tol)
                        for _, st in trajectory])
    emf = -np.gradient(linkage, times, edge_order=1)
    return EmfTrace(times, linkage, emf)


def straight_trajectory(c, times):
    """Samples of a charge moving uniformly from its current state."""
    x0 = np.asarray(c.position)
    v = np.asarray(c.velocity)
    return [(float(t), c.moved(x0 + v * t)) for t in times]
