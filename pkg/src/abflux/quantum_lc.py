"""Truncated number-basis operators of a lossless LC circuit.

q and Phi = L dq/dt are built from ladder operators of the oscillator with
omega = 1/sqrt(LC); U = q / C. In an N-dimensional truncation
[a, a+] = I - N |N-1><N-1|, so [q, Phi] equals i hbar times the identity
everywhere except the last diagonal entry, which is i hbar (1 - N).
"""
from dataclasses import dataclass

import numpy as np

from .constants import HBAR

MAX_DIM = 256


@dataclass(frozen=True)
class OperatorMatrix:
    label: str
    matrix: np.ndarray

    @property
    def dim(self):
        return self.matrix.shape[0]

    def is_hermitian(self, atol=1e-12):
        scale = max(float(np.abs(self.matrix).max()), 1e-300)
        return bool(np.allclose(self.matrix, self.matrix.conj().T, rtol=0, atol=atol * scale))


@dataclass
class CommutatorReport:
    dim: int
    max_block_deviation: float  # max |(1/i hbar)[q, Phi] - I| on the retained block
    corner_value: complex  # (1/i hbar)[q, Phi] at (N-1, N-1)
    expected_corner: float  # 1 - N
    max_offblock_deviation: float  # outside the block, excluding the corner entry
    cu_phi_max_diff: float  # max |C[U, Phi] - [q, Phi]| / max |[q, Phi]|


def annihilation(n):
    return np.diag(np.sqrt(np.arange(1, n, dtype=float)), k=1).astype(complex)


def build_lc_operators(inductance, capacitance, n):
    """Charge, flux and voltage operators truncated to ``n`` number states."""
    if not inductance > 0 or not capacitance > 0:
        raise ValueError("L and C must be > 0")
    if int(n) != n or n < 4:
        raise ValueError("dimension must be an integer >= 4")
    if n > MAX_DIM:
        raise ValueError(f"dimension is capped at {MAX_DIM}")
    n = int(n)
    omega = 1.0 / np.sqrt(inductance * capacitance)
    a = annihilation(n)
    ad = a.conj().T
    q = np.sqrt(HBAR / (2 * inductance * omega)) * (a + ad)
    phi = 1j * np.sqrt(HBAR * inductance * omega / 2) * (ad - a)
    u = q / capacitance
    return OperatorMatrix("q", q), OperatorMatrix("Phi", phi), OperatorMatrix("U", u)


def commutator(x, y):
    return x @ y - y @ x


def verify_commutators(q, phi, u, capacitance=None):
    """Check [q, Phi] and C[U, Phi] against i hbar on the truncated space.

    ``capacitance`` defaults to the ratio of q to U.
    """
    if not (q.dim == phi.dim == u.dim):
        raise ValueError("operator dimensions differ")
    n = q.dim
    if capacitance is None:
        capacitance = float(np.abs(q.matrix).max() / np.abs(u.matrix).max())
    qp = commutator(q.matrix, phi.matrix)
    normalized = qp / (1j * HBAR)
    dev = normalized - np.eye(n)
    corner = complex(normalized[n - 1, n - 1])
    outside = dev.copy()
    outside[: n - 1, : n - 1] = 0
    outside[n - 1, n - 1] = 0
    cu = capacitance * commutator(u.matrix, phi.matrix)
    return CommutatorReport(
        dim=n,
        max_block_deviation=float(np.abs(dev[: n - 1, : n - 1]).max()),
        corner_value=corner,
        expected_corner=float(1 - n),
        max_offblock_deviation=float(np.abs(outside).max()),
        cu_phi_max_diff=float(np.abs(cu - qp).max() / np.abs(qp).max()),
    )
