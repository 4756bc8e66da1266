import math

import numpy as np
import pytest

from abflux.errors import ConvergenceError
from abflux.quadrature import cubature, gauss_legendre, grid_cells, tensor_rule


def test_gauss_legendre_exact_for_degree_7():
    x, w = gauss_legendre(4)
    for k in range(8):
        assert np.isclose(w @ x**k, 1.0 / (k + 1), rtol=1e-14)


def test_tensor_rule_weights_sum_to_one():
    nodes, weights = tensor_rule(4, 3)
    assert nodes.shape == (64, 3)
    assert math.isclose(weights.sum(), 1.0, rel_tol=1e-14)


def test_grid_cells_rejects_unsorted():
    with pytest.raises(ValueError):
        grid_cells([[0.0, 1.0], [1.0, 0.5]])


def test_smooth_3d():
    res = cubature(lambda x: np.exp(x.sum(axis=1)), [[0, 1]] * 3, tol=1e-10)
    assert math.isclose(res.value, (math.e - 1) ** 3, rel_tol=1e-10)


def test_vector_integrand():
    res = cubature(lambda x: np.column_stack([x[:, 0], x[:, 1] ** 2]), [[0, 2], [0, 3]], tol=1e-12)
    assert np.allclose(res.value, [2 * 3, 2 * 9], rtol=1e-12)


def test_kink_is_refined():
    res = cubature(lambda x: np.abs(x[:, 0] - 1 / 3), [[0, 1]], tol=1e-9)
    assert math.isclose(res.value, (1 / 9 + 4 / 9) / 2, rel_tol=1e-8)
    assert res.cells > 1


def test_excluded_point_singularity():
    # integral of 1/r over [-1, 1]^3, eight times the unit-cube value
    exact = 8 * (1.5 * math.log(2 + math.sqrt(3)) - math.pi / 4)

    def bound(lo, hi):
        # the cell lies inside the ball of radius max|corner|, where 1/r integrates to 2 pi rad^2
        rad = float(np.linalg.norm(np.maximum(np.abs(lo), np.abs(hi))))
        return 2 * np.pi * rad**2

    res = cubature(lambda x: 1.0 / np.linalg.norm(x, axis=1), [[-1, 0, 1]] * 3, tol=1e-4,
                   exclude=np.zeros(3), exclude_bound=bound)
    assert math.isclose(res.value, exact, rel_tol=2e-4)


def test_exclude_needs_bound():
    with pytest.raises(ValueError):
        cubature(lambda x: x[:, 0], [[0, 1]], exclude=[0.5])


def test_convergence_error_carries_estimates():
    with pytest.raises(ConvergenceError) as info:
        cubature(lambda x: 1.0 / np.abs(x[:, 0] - 0.3), [[0, 1]], tol=1e-12, max_depth=6)
    assert len(info.value.estimates) == 2


def test_deterministic():
    f = lambda x: np.sin(7 * x[:, 0]) * np.exp(-x[:, 1] ** 2)
    a = cubature(f, [[0, 1], [0, 2]], tol=1e-9)
    b = cubature(f, [[0, 1], [0, 2]], tol=1e-9)
    assert a.value == b.value and a.cells == b.cells
