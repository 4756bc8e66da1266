import os
import subprocess
import sys

import numpy as np
import pytest

from abflux import _pykernels, kernels

ck = pytest.importorskip("abflux._ckernels")


@pytest.fixture
def points():
    rng = np.random.default_rng(3)
    return rng.normal(size=(257, 3))


def test_backend_selected():
    forced = os.environ.get("ABFLUX_PURE_PYTHON", "") not in ("", "0")
    assert kernels.BACKEND == ("numpy" if forced else "cython")


def test_charge_kernels_agree(points):
    xe = np.array([0.1, -0.2, 0.3])
    qv = np.array([1e-14, 2e-14, -5e-15])
    for name in ("charge_b", "charge_a"):
        a = getattr(ck, name)(points, xe, qv)
        b = getattr(_pykernels, name)(points, xe, qv)
        assert np.allclose(a, b, rtol=1e-13, atol=0)


def test_biot_kernel_agrees(points):
    bvals = np.random.default_rng(4).normal(size=points.shape)
    x = np.array([3.0, 0.5, -1.0])
    assert np.allclose(ck.biot_kernel(points, bvals, x), _pykernels.biot_kernel(points, bvals, x),
                       rtol=1e-13, atol=0)


def test_cell_sums_agree():
    rng = np.random.default_rng(5)
    values = rng.normal(size=(6 * 64, 3))
    weights = rng.random(64)
    volumes = rng.random(6)
    assert np.allclose(ck.cell_sums(values, weights, volumes),
                       _pykernels.cell_sums(values, weights, volumes), rtol=1e-13)


def test_cyl_coords_agree(points):
    center = np.array([0.1, 0.2, -0.3])
    axis = np.array([1.0, 2.0, 2.0]) / 3
    for a, b in zip(ck.cyl_coords(points, center, axis), _pykernels.cyl_coords(points, center, axis)):
        assert np.allclose(a, b, rtol=1e-13, atol=1e-15)


def test_pure_python_switch():
    env = dict(os.environ, ABFLUX_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import abflux.kernels as k; print(k.BACKEND)"],
                         capture_output=True, text=True, env=env)
    assert out.stdout.strip() == "numpy"
