import numpy as np
import pytest

from abflux.constants import HBAR
from abflux.quantum_lc import build_lc_operators, commutator, verify_commutators


@pytest.mark.parametrize("n", [4, 8, 16, 32])
def test_retained_block_and_corner(n):
    rep = verify_commutators(*build_lc_operators(1e-9, 1e-12, n))
    assert rep.max_block_deviation < 1e-10
    assert rep.max_offblock_deviation < 1e-10
    assert abs(rep.corner_value - (1 - n)) < 1e-10
    assert rep.expected_corner == 1 - n
    assert rep.cu_phi_max_diff < 1e-14


def test_explicit_matrix_oracle():
    n = 6
    q, phi, _ = build_lc_operators(2e-9, 5e-12, n)
    want = np.eye(n, dtype=complex)
    want[-1, -1] = 1 - n
    assert np.allclose(commutator(q.matrix, phi.matrix) / (1j * HBAR), want, atol=1e-12)


def test_hermitian_traceless():
    q, phi, u = build_lc_operators(1e-9, 1e-12, 16)
    assert q.is_hermitian() and phi.is_hermitian() and u.is_hermitian()
    assert abs(np.trace(q.matrix)) == 0 and abs(np.trace(phi.matrix)) == 0


def test_ground_state_variance():
    L, C = 1e-9, 1e-12
    q, _, _ = build_lc_operators(L, C, 8)
    omega = 1 / np.sqrt(L * C)
    assert np.isclose((q.matrix @ q.matrix)[0, 0].real, HBAR / (2 * L * omega), rtol=1e-12)


@pytest.mark.parametrize("L", [1e-10, 1e-9, 1e-8])
@pytest.mark.parametrize("C", [1e-13, 1e-12, 1e-11])
def test_scale_invariance(L, C):
    ref = verify_commutators(*build_lc_operators(1e-9, 1e-12, 12))
    rep = verify_commutators(*build_lc_operators(L, C, 12))
    assert abs(rep.corner_value - ref.corner_value) < 1e-10
    assert rep.max_block_deviation < 1e-10


def test_errors():
    with pytest.raises(ValueError):
        build_lc_operators(1e-9, 1e-12, 3)
    with pytest.raises(ValueError):
        build_lc_operators(1e-9, 1e-12, 257)
    a = build_lc_operators(1e-9, 1e-12, 4)
    b = build_lc_operators(1e-9, 1e-12, 5)
    with pytest.raises(ValueError):
        verify_commutators(a[0], b[1], a[2])
