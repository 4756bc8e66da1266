"""Adaptive tensor Gauss-Legendre cubature on boxes.

Each cell carries a fixed-order tensor rule. Its error is estimated by
comparing the whole-cell rule against the two half-cell rules along every
axis; a cell that must be refined is split in two along the axis where the
halving changed the estimate most. Refinement is global: the cells holding
half of the total estimated error are split each round, until the total
error estimate falls below ``max(tol * |I|, atol)``.

A point can be excluded (for integrable point singularities). Cells whose
closed box contains it are not sampled; instead a caller-supplied bound on
their contribution stands in as their error, so they keep shrinking until
that bound is small enough.
"""
from dataclasses import dataclass
from functools import lru_cache
import itertools

import numpy as np

from . import kernels
from .errors import ConvergenceError

DEFAULT_ORDER = 4
_CHUNK_POINTS = 400_000


def gauss_legendre(order):
    """Gauss-Legendre nodes and weights mapped to [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (x + 1.0), 0.5 * w


@lru_cache(maxsize=None)
def tensor_rule(order, dim):
    """Tensor-product rule on the unit cube: nodes (order**dim, dim), weights."""
    x, w = gauss_legendre(order)
    nodes = np.array(list(itertools.product(x, repeat=dim)))
    weights = np.array([np.prod(c) for c in itertools.product(w, repeat=dim)])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


@dataclass
class CubatureResult:
    value: np.ndarray
    error: float
    cells: int
    evaluations: int
    iterations: int


def grid_cells(grid):
    """Lower/upper corners of the cells of a tensor grid of breakpoints."""
    edges = [np.asarray(g, dtype=float) for g in grid]
    for e in edges:
        if e.ndim != 1 or e.size < 2 or np.any(np.diff(e) <= 0):
            raise ValueError("grid breakpoints must be strictly increasing, >= 2 per axis")
    los = np.meshgrid(*[e[:-1] for e in edges], indexing="ij")
    his = np.meshgrid(*[e[1:] for e in edges], indexing="ij")
    lo = np.stack([a.ravel() for a in los], axis=1)
    hi = np.stack([a.ravel() for a in his], axis=1)
    return lo, hi


class _CellEvaluator:
    def __init__(self, f, dim, order, exclude, exclude_bound):
        self.f = f
        self.dim = dim
        self.nodes, self.weights = tensor_rule(order, dim)
        self.exclude = None if exclude is None else np.asarray(exclude, dtype=float)
        self.exclude_bound = exclude_bound
        self.evaluations = 0
        self.ncomp = None

    def __call__(self, lo, hi):
        n = lo.shape[0]
        if self.exclude is not None:
            mask = np.all((lo <= self.exclude) & (self.exclude <= hi), axis=1)
        else:
            mask = np.zeros(n, dtype=bool)
        keep = np.flatnonzero(~mask)
        parts = []
        step = max(1, _CHUNK_POINTS // ((1 + 2 * self.dim) * len(self.weights)))
        for s in range(0, keep.size, step):
            idx = keep[s:s + step]
            parts.append(self._evaluate(lo[idx], hi[idx]))
        if self.ncomp is None:
            # every cell excluded on the first call: probe the shape once
            probe = np.asarray(self.f(0.5 * (lo[:1] + hi[:1])), dtype=float)
            self.ncomp = 1 if probe.ndim == 1 else probe.shape[1]
        value = np.zeros((n, self.ncomp))
        err = np.zeros(n)
        axis = np.argmax(hi - lo, axis=1)
        if parts:
            value[keep] = np.concatenate([p[0] for p in parts])
            err[keep] = np.concatenate([p[1] for p in parts])
            axis[keep] = np.concatenate([p[2] for p in parts])
        for i in np.flatnonzero(mask):
            err[i] = float(self.exclude_bound(lo[i], hi[i]))
        return value, err, axis

    def _evaluate(self, lo, hi):
        n, d = lo.shape
        nb = 1 + 2 * d
        blo = np.repeat(lo[:, None, :], nb, axis=1)
        bhi = np.repeat(hi[:, None, :], nb, axis=1)
        mid = 0.5 * (lo + hi)
        for a in range(d):
            bhi[:, 1 + 2 * a, a] = mid[:, a]
            blo[:, 2 + 2 * a, a] = mid[:, a]
        blo = blo.reshape(-1, d)
        width = bhi.reshape(-1, d) - blo
        pts = (blo[:, None, :] + width[:, None, :] * self.nodes[None, :, :]).reshape(-1, d)
        vals = np.asarray(self.f(pts), dtype=float)
        self.evaluations += pts.shape[0]
        if vals.ndim == 1:
            vals = vals[:, None]
        self.ncomp = vals.shape[1]
        sums = kernels.cell_sums(vals, self.weights, np.prod(width, axis=1))
        sums = sums.reshape(n, nb, self.ncomp)
        whole = sums[:, 0]
        halves = sums[:, 1::2] + sums[:, 2::2]
        diffs = np.linalg.norm(halves - whole[:, None, :], axis=2)
        axis = np.argmax(diffs, axis=1)
        return halves[np.arange(n), axis], diffs.sum(axis=1), axis


def cubature(f, grid, *, tol=1e-6, atol=0.0, order=DEFAULT_ORDER, max_depth=40,
             max_cells=500_000, exclude=None, exclude_bound=None):
    """Integrate a vectorized integrand over the box spanned by ``grid``.

    Parameters
    ----------
    f : callable
        Maps points of shape (N, d) to values of shape (N,) or (N, m).
    grid : sequence of 1-D arrays
        Initial breakpoints per axis; the cells of this grid are the
        starting partition.
    max_depth : int
        Maximum number of halvings of a cell along any one axis.
    tol, atol : float
        Stop when the summed error estimate is at most
        ``max(tol * |I|, atol)`` (``|I|`` is the Euclidean norm for vector
        integrands).
    exclude : array_like, optional
        Point at which ``f`` must not be evaluated. ``exclude_bound(lo, hi)``
        must then bound the magnitude of the contribution of a cell that
        contains it.

    Raises
    ------
    ConvergenceError
        When ``max_depth`` or ``max_cells`` would be exceeded; carries the
        last two total estimates.
    """
    if tol < 0 or atol < 0 or (tol == 0 and atol == 0):
        raise ValueError("need tol > 0 or atol > 0")
    if exclude is not None and exclude_bound is None:
        raise ValueError("exclude requires exclude_bound")
    lo, hi = grid_cells(grid)
    evaluator = _CellEvaluator(f, lo.shape[1], order, exclude, exclude_bound)
    value, err, axis = evaluator(lo, hi)
    # splits taken along each axis, per cell
    depth = np.zeros(lo.shape, dtype=int)
    history = []
    iterations = 0
    while True:
        total = value.sum(axis=0)
        err_total = float(err.sum())
        target = max(tol * float(np.linalg.norm(total)), atol)
        history.append(total)
        if err_total <= target:
            out = total[0] if total.shape[0] == 1 else total
            return CubatureResult(out, err_total, lo.shape[0], evaluator.evaluations, iterations)
        iterations += 1
        order_idx = np.argsort(-err, kind="stable")
        cum = np.cumsum(err[order_idx])
        k = int(np.searchsorted(cum, 0.5 * err_total)) + 1
        marked = order_idx[:k]
        if depth[marked, axis[marked]].max() >= max_depth or lo.shape[0] + marked.size > max_cells:
            last = history[-2:] if len(history) > 1 else history * 2
            raise ConvergenceError(
                f"cubature did not converge: error estimate {err_total:.3e} > target "
                f"{target:.3e} with {lo.shape[0]} cells",
                estimates=[x[0] if x.shape[0] == 1 else x for x in last],
            )
        keep = np.ones(lo.shape[0], dtype=bool)
        keep[marked] = False
        mlo, mhi, max_ = lo[marked], hi[marked], axis[marked]
        rows = np.arange(marked.size)
        mid = 0.5 * (mlo[rows, max_] + mhi[rows, max_])
        left_hi = mhi.copy()
        left_hi[rows, max_] = mid
        right_lo = mlo.copy()
        right_lo[rows, max_] = mid
        clo = np.concatenate([mlo, right_lo])
        chi = np.concatenate([left_hi, mhi])
        cdepth = depth[marked].copy()
        cdepth[rows, max_] += 1
        cdepth = np.concatenate([cdepth, cdepth])
        cval, cerr, caxis = evaluator(clo, chi)
        lo = np.concatenate([lo[keep], clo])
        hi = np.concatenate([hi[keep], chi])
        depth = np.concatenate([depth[keep], cdepth])
        value = np.concatenate([value[keep], cval])
        err = np.concatenate([err[keep], cerr])
        axis = np.concatenate([axis[keep], caxis])
