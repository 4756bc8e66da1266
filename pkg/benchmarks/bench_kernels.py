"""Compare the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--sizes 1000 100000] [--repeat 5]

Part one times each kernel directly on random inputs. Part two runs the same
end-to-end workloads in two subprocesses, one with ABFLUX_PURE_PYTHON=1.
"""
import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from abflux import _pykernels

try:
    from abflux import _ckernels
except ImportError:
    _ckernels = None

WORKLOAD = r"""
import json, time
import numpy as np
from abflux import kernels
from abflux.fields import SolenoidSpec, solenoid_a_truncation_study
from abflux.acceptance import _energy_configs
from abflux.interaction import verify_eq2
out = {"backend": kernels.BACKEND}
t0 = time.perf_counter()
s = SolenoidSpec(1e-3, 0.2, 1e4, 0.1)
for p in ([2e-3, 1e-3, 0.0], [5e-4, 0.0, 0.0]):
    solenoid_a_truncation_study(s, p)
out["potential from field, 2 points"] = time.perf_counter() - t0
t0 = time.perf_counter()
for c, s in _energy_configs(10):
    verify_eq2(c, s)
out["energy overlap, 10 configs"] = time.perf_counter() - t0
print(json.dumps(out))
"""


def inputs(n, rng):
    pts = rng.normal(size=(n, 3))
    return {
        "charge_b": (pts, np.array([0.1, 0.2, 0.3]), np.array([1.0, -2.0, 0.5])),
        "charge_a": (pts, np.array([0.1, 0.2, 0.3]), np.array([1.0, -2.0, 0.5])),
        "biot_kernel": (pts, rng.normal(size=(n, 3)), np.array([3.0, 0.0, 0.0])),
        "cyl_coords": (pts, np.zeros(3), np.array([0.0, 0.6, 0.8])),
        "cell_sums": (rng.normal(size=(n // 64 * 64, 3)), rng.random(64), rng.random(n // 64)),
    }


def bench_kernels(sizes, repeat):
    rng = np.random.default_rng(0)
    rows = []
    for n in sizes:
        for name, args in inputs(n, rng).items():
            py = min(timeit.repeat(lambda: getattr(_pykernels, name)(*args), number=3, repeat=repeat)) / 3
            c = min(timeit.repeat(lambda: getattr(_ckernels, name)(*args), number=3, repeat=repeat)) / 3
            rows.append((name, n, py, c))
    return rows


def bench_workloads():
    results = {}
    for forced in ("0", "1"):
        env = dict(os.environ, ABFLUX_PURE_PYTHON=forced)
        proc = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True,
                              text=True, check=True)
        data = json.loads(proc.stdout)
        results[data.pop("backend")] = data
    return results


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1_000, 100_000])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-workloads", action="store_true")
    args = ap.parse_args()
    if _ckernels is None:
        sys.exit("compiled kernels are not built; reinstall without ABFLUX_NO_EXT")

    print(f"{'kernel':<12} {'n':>8} {'numpy [ms]':>11} {'cython [ms]':>12} {'speedup':>8}")
    for name, n, py, c in bench_kernels(args.sizes, args.repeat):
        print(f"{name:<12} {n:>8} {1e3 * py:>11.3f} {1e3 * c:>12.3f} {py / c:>7.1f}x")

    if not args.skip_workloads:
        res = bench_workloads()
        print()
        print(f"{'workload':<32} {'numpy [s]':>10} {'cython [s]':>11} {'speedup':>8}")
        for key in res["cython"]:
            py, c = res["numpy"][key], res["cython"][key]
            print(f"{key:<32} {py:>10.2f} {c:>11.2f} {py / c:>7.1f}x")


if __name__ == "__main__":
    main()
