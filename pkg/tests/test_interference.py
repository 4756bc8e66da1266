import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from abflux.constants import PHI0, PHI_AB
from abflux.errors import DomainError
from abflux.interference import (FluxQuanta, ab_phase, fringe_pattern, parity_distinguishable,
                                 phase_distance)


def test_quanta_are_distinct():
    f = FluxQuanta.from_superconducting_quanta(3)
    assert math.isclose(f.n_superconducting_quanta, 3.0, rel_tol=1e-15)
    assert math.isclose(f.n_phase_quanta, 1.5, rel_tol=1e-15)
    assert math.isclose(PHI_AB, 2 * PHI0, rel_tol=1e-15)


def test_phase_values():
    assert ab_phase(0.0) == 0.0
    assert math.isclose(ab_phase(PHI_AB), 2 * math.pi, rel_tol=1e-15)
    assert math.isclose(ab_phase(PHI0), math.pi, rel_tol=1e-15)
    with pytest.raises(ValueError):
        ab_phase(float("inf"))


FLUX = st.one_of(st.just(0.0), st.floats(1e-25, 1e-12), st.floats(-1e-12, -1e-25))


@given(FLUX, st.one_of(st.just(0.0), st.floats(1e-6, 1e3), st.floats(-1e3, -1e-6)))
def test_phase_linear(flux, alpha):
    assert math.isclose(ab_phase(alpha * flux), alpha * ab_phase(flux), rel_tol=1e-14)


def test_central_fringe():
    screen = [0.0, 1e-6]
    assert fringe_pattern(0.0, 1e6, screen).intensities[0] == 1.0
    assert fringe_pattern(math.pi, 1e6, screen).intensities[0] < 1e-30


@given(st.floats(-50, 50), st.integers(-1000, 1000))
def test_pattern_periodic_bitwise(dphi, k):
    screen = np.linspace(-1e-5, 1e-5, 33)
    a = fringe_pattern(dphi, 3.7e5, screen)
    b = fringe_pattern(dphi + 2 * math.pi * k, 3.7e5, screen)
    assert np.array_equal(a.intensities, b.intensities)


def test_pattern_period_matches_gradient():
    g = 2 * math.pi / 1e-6
    x = np.linspace(0, 3e-6, 301)
    p = fringe_pattern(0.3, g, x)
    assert np.allclose(p.intensities[:101], p.intensities[100:201], atol=1e-12)
    assert np.all((p.intensities >= 0) & (p.intensities <= 1))


def test_pattern_errors():
    with pytest.raises(DomainError):
        fringe_pattern(0.0, 1.0, [])
    with pytest.raises(DomainError):
        fringe_pattern(0.0, 0.0, [0.0])


def test_parity_examples():
    assert parity_distinguishable(PHI0, 2 * PHI0, shielded=False)
    assert not parity_distinguishable(PHI0, 3 * PHI0, shielded=False)
    assert not parity_distinguishable(PHI0, 2 * PHI0, shielded=True)


@given(st.floats(-20, 20), st.floats(-20, 20), st.integers(-10, 10))
def test_parity_symmetric_and_periodic(a, b, k):
    fa, fb = a * PHI0, b * PHI0
    assert parity_distinguishable(fa, fb, False) == parity_distinguishable(fb, fa, False)
    assert not parity_distinguishable(fa, fa + k * PHI_AB, False)


def test_phase_distance():
    assert phase_distance(0.1, 0.1 + 4 * math.pi) < 1e-14
    assert math.isclose(phase_distance(0.0, math.pi), math.pi)
