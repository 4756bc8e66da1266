import numpy as np
import pytest
from hypothesis import given, strategies as st

from abflux.constants import PHI0
from abflux.errors import InstabilityError
from abflux.shield import ShieldSpec
from abflux.squid import (ExperimentTrace, Hypothesis, Protocol, SquidSpec, critical_current,
                          observable_flux, run_experiment)

SPEC = SquidSpec(i0=1e-5, mutual_inductance=1e-9)
NB = ShieldSpec(9.2, 3e-3, 4e-8, 1e-6, 2e-3)
VP, IE = Hypothesis.VECTOR_POTENTIAL, Hypothesis.INTERACTION_ENERGY


def test_critical_current_points():
    assert critical_current(SPEC, 0.0) == SPEC.i0
    assert critical_current(SPEC, PHI0 / 2) == 0.0
    assert critical_current(SPEC, -2.5 * PHI0) == 0.0
    assert all(critical_current(SPEC, n * PHI0) == SPEC.i0 for n in range(-5, 6))


@given(st.floats(-100, 100))
def test_critical_current_periodic_and_bounded(x):
    a = critical_current(SPEC, x * PHI0)
    b = critical_current(SPEC, (x + 1) * PHI0)
    assert abs(a - b) <= 8 * np.pi * SPEC.i0 * np.spacing(abs(x) + 1)
    assert 0 <= a <= SPEC.i0
    assert np.isclose(a, SPEC.i0 * abs(np.cos(np.pi * x)), rtol=0, atol=1e-13 * SPEC.i0)


def test_observable_flux():
    assert observable_flux(VP, 1.0, 2.0, 0.0) == observable_flux(IE, 1.0, 2.0, 0.0)
    assert observable_flux(IE, 0.0, 5.0, 1.0) == 0.0
    assert observable_flux(VP, 1.0, 5.0, 1.0) == 6.0
    with pytest.raises(ValueError):
        observable_flux(IE, 0.0, 1.0, 1.5)


@pytest.mark.parametrize("n", [1, 3, 10])
def test_hypotheses_diverge_by_n_quanta(n):
    proto = Protocol(n_quanta=n)
    vp = run_experiment(SPEC, NB, proto, VP)
    ie = run_experiment(SPEC, NB, proto, IE)
    assert abs(vp.final_total_flux_quanta - n) < 1e-3
    assert abs(ie.final_total_flux_quanta - 2 * n) < 1e-3
    assert abs((ie.phi_a[-1] - vp.phi_a[-1]) / PHI0 - n) < 1e-3
    assert np.all(vp.i_a == 0)


def test_trace_shape_and_monotonicity():
    proto = Protocol()
    tr = run_experiment(SPEC, NB, proto, IE)
    assert isinstance(tr, ExperimentTrace)
    assert len(tr.step) == proto.ramp_steps + 1
    assert np.all(np.diff(tr.shielded_fraction) >= 0)
    assert tr.shielded_fraction[-1] == 1.0
    n_phi0 = proto.n_quanta * PHI0
    assert np.all(np.diff(tr.phi_a) >= -1e-12 * n_phi0)
    assert tr.phi_a.max() <= 1.05 * n_phi0
    tail = tr.lock_error[-len(tr.lock_error) // 10:]
    assert np.abs(tail).max() < 1e-3 * PHI0


def test_deterministic():
    a = run_experiment(SPEC, NB, Protocol(), IE)
    b = run_experiment(SPEC, NB, Protocol(), IE)
    assert list(a.rows()) == list(b.rows())


def test_no_transition_identical_traces():
    proto = Protocol(t_start=12.0, t_end=10.0)
    with pytest.raises(ValueError):
        run_experiment(SPEC, NB, proto, IE)
    vp = run_experiment(SPEC, NB, proto, VP, require_transition=False)
    ie = run_experiment(SPEC, NB, proto, IE, require_transition=False)
    assert np.array_equal(vp.phi_obs, ie.phi_obs)
    assert np.array_equal(vp.i_a, ie.i_a)


def test_unstable_gains_raise():
    with pytest.raises(InstabilityError) as info:
        run_experiment(SPEC, NB, Protocol(kp=2.5, ki=0.5), IE)
    assert len(info.value.trace.step) > 100


def test_protocol_validation():
    with pytest.raises(ValueError):
        Protocol(n_quanta=0)
    with pytest.raises(ValueError):
        Protocol(kp=-1.0)
    with pytest.raises(ValueError):
        SquidSpec(i0=0.0, mutual_inductance=1e-9)
