"""Magnetostatic fields and vector potentials of solenoids and moving charges.

Every evaluator accepts a single point (shape ``(3,)``) or a batch
(``(N, 3)``) and returns an array of the same leading shape. A *field
function* is any callable mapping an ``(N, 3)`` array of points to an
``(N, 3)`` array of vectors; the ``*_field`` factories build them.
"""
from dataclasses import dataclass, field, replace
import math

import numpy as np
from scipy.special import ellipe, ellipkm1

from . import kernels
from .constants import MU0, NONRELATIVISTIC_SPEED_LIMIT
from .errors import ConvergenceError, DomainError, SingularityError
from .quadrature import cubature, gauss_legendre

# relative slack for assigning points on the solenoid surface to the interior
_SURFACE_RTOL = 1e-12
_SINGULAR_DISTANCE = 1e-15


@dataclass(frozen=True)
class Vec3:
    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"Vec3.{name} must be finite, got {v}")
            object.__setattr__(self, name, v)

    @classmethod
    def of(cls, v):
        if isinstance(v, Vec3):
            return v
        a = np.asarray(v, dtype=float)
        if a.shape != (3,):
            raise ValueError(f"expected 3 components, got shape {a.shape}")
        return cls(*a)

    def __array__(self, dtype=None, copy=None):
        return np.array([self.x, self.y, self.z], dtype=dtype)

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def norm(self):
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)


def _unit(v, what):
    a = np.asarray(v, dtype=float)
    n = np.linalg.norm(a)
    if n == 0:
        raise ValueError(f"{what} must be nonzero")
    return a / n


@dataclass(frozen=True)
class SolenoidSpec:
    """An ideal solenoid.

    With ``infinite=True`` the closed forms of the infinitely long solenoid
    are used; ``length`` is then only the truncation length for volume
    integrals.
    """

    radius: float
    length: float
    turns_per_meter: float
    current: float
    center: Vec3 = Vec3(0.0, 0.0, 0.0)
    axis: Vec3 = Vec3(0.0, 0.0, 1.0)
    infinite: bool = True

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("solenoid radius must be > 0")
        if not self.length > 0:
            raise ValueError("solenoid length must be > 0")
        if not self.turns_per_meter > 0:
            raise ValueError("solenoid turns_per_meter must be > 0")
        if not math.isfinite(self.current):
            raise ValueError("solenoid current must be finite")
        object.__setattr__(self, "center", Vec3.of(self.center))
        object.__setattr__(self, "axis", Vec3.of(_unit(self.axis, "solenoid axis")))

    @property
    def interior_field(self):
        """mu0 * n * I, the interior field magnitude of the infinite solenoid."""
        return MU0 * self.turns_per_meter * self.current

    @property
    def flux(self):
        """Flux through one cross-section of the infinite solenoid."""
        return self.interior_field * math.pi * self.radius ** 2

    def with_length(self, length):
        return replace(self, length=length)


@dataclass(frozen=True)
class ChargeState:
    """A point charge moving with constant velocity.

    Speeds of 0.01 c and above are rejected unless ``relativistic`` is set;
    the fields stay the non-relativistic ones either way.
    """

    q: float
    position: Vec3
    velocity: Vec3
    relativistic: bool = False

    def __post_init__(self):
        object.__setattr__(self, "position", Vec3.of(self.position))
        object.__setattr__(self, "velocity", Vec3.of(self.velocity))
        if not math.isfinite(self.q):
            raise ValueError("charge must be finite")
        speed = self.velocity.norm()
        if speed >= NONRELATIVISTIC_SPEED_LIMIT and not self.relativistic:
            raise ValueError(
                f"speed {speed:.3e} m/s is not below 0.01 c "
                f"({NONRELATIVISTIC_SPEED_LIMIT:.3e} m/s); the non-relativistic field "
                "model needs the relativistic override flag for such speeds"
            )

    @property
    def speed(self):
        return self.velocity.norm()

    def moved(self, position):
        return replace(self, position=Vec3.of(position))


@dataclass(frozen=True)
class BoxDomain:
    """Axis-aligned integration box with an initial uniform subdivision."""

    lo: Vec3
    hi: Vec3
    divisions: tuple = (2, 2, 2)

    def __post_init__(self):
        object.__setattr__(self, "lo", Vec3.of(self.lo))
        object.__setattr__(self, "hi", Vec3.of(self.hi))
        div = tuple(int(d) for d in self.divisions)
        if len(div) != 3 or min(div) < 2:
            raise ValueError("BoxDomain needs three subdivision counts >= 2")
        object.__setattr__(self, "divisions", div)
        if not np.all(np.asarray(self.hi) > np.asarray(self.lo)):
            raise ValueError("BoxDomain max corner must exceed min corner componentwise")

    def grid(self):
        lo, hi = np.asarray(self.lo), np.asarray(self.hi)
        return [np.linspace(lo[i], hi[i], self.divisions[i] + 1) for i in range(3)]

    def contains(self, p):
        p = np.asarray(p, dtype=float)
        return bool(np.all(np.asarray(self.lo) <= p) and np.all(p <= np.asarray(self.hi)))


def _basis(normal):
    n = _unit(normal, "normal")
    helper = np.eye(3)[np.argmin(np.abs(n))]
    e1 = np.cross(n, helper)
    e1 /= np.linalg.norm(e1)
    return n, e1, np.cross(n, e1)


@dataclass(frozen=True)
class LoopPath:
    """A closed path: a polyline, or a circle integrated along its true arc.

    ``vertices`` always holds the closed list of sample points (first vertex
    repeated last). For circles the segments between them are arcs.
    """

    vertices: np.ndarray
    arc: tuple = field(default=None, compare=False)  # (center, e1, e2, radius) for circles

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 3:
            raise ValueError("loop vertices must be an (n, 3) array")
        if not np.all(np.isfinite(v)):
            raise ValueError("loop vertices must be finite")
        if not np.array_equal(v[0], v[-1]):
            raise ValueError("loop must be closed: first and last vertex identical")
        if v.shape[0] - 1 < 8:
            raise ValueError("loop needs at least 8 segments")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @classmethod
    def polygon(cls, vertices):
        return cls(np.asarray(vertices, dtype=float))

    @classmethod
    def circle(cls, center, normal, radius, samples=64):
        """Counter-clockwise circle about ``normal`` (right-hand rule)."""
        if not radius > 0:
            raise ValueError("circle radius must be > 0")
        n, e1, e2 = _basis(normal)
        c = np.asarray(center, dtype=float)
        theta = 2 * np.pi * np.arange(samples) / samples
        pts = c + radius * (np.cos(theta)[:, None] * e1 + np.sin(theta)[:, None] * e2)
        pts = np.vstack([pts, pts[:1]])
        return cls(pts, arc=(c, e1, e2, float(radius)))

    @property
    def n_segments(self):
        return self.vertices.shape[0] - 1

    def evaluate(self, segment, s):
        """Position and d(position)/ds at parameter ``s`` in [0, 1] of each segment."""
        if self.arc is not None:
            c, e1, e2, r = self.arc
            dtheta = 2 * np.pi / self.n_segments
            theta = (segment + s) * dtheta
            cos, sin = np.cos(theta)[:, None], np.sin(theta)[:, None]
            pos = c + r * (cos * e1 + sin * e2)
            tan = r * dtheta * (-sin * e1 + cos * e2)
            return pos, tan
        a = self.vertices[segment]
        b = self.vertices[segment + 1]
        return a + s[:, None] * (b - a), b - a


def _points(p):
    a = np.asarray(p, dtype=float)
    if a.shape[-1] != 3:
        raise ValueError(f"points must have a trailing dimension of 3, got {a.shape}")
    return a.reshape(-1, 3), a.shape[:-1]


def _cylindrical(spec, pts):
    axis = np.asarray(spec.axis)
    rho, z = kernels.cyl_coords(pts, np.asarray(spec.center), axis)
    radial = pts - np.asarray(spec.center) - z[:, None] * axis
    e_rho = np.zeros_like(radial)
    nz = rho > 0
    e_rho[nz] = radial[nz] / rho[nz, None]
    return rho, z, e_rho, axis


# Near-axis series of the loop-kernel combinations, normalized by pi*m^2/32:
#   ((1 - m/2) K - E)        -> 1 + 3m/4 + 75m^2/128 + ...
#   ((1 - m/2) E - (1 - m) K) -> 3 + 3m/4 + 45m^2/128 + ...
_SERIES_A = (1.0, 3 / 4, 75 / 128, 245 / 512, 6615 / 16384, 22869 / 65536)
_SERIES_G = (3.0, 3 / 4, 45 / 128, 105 / 512, 2205 / 16384, 6237 / 65536)
_SERIES_SWITCH = 1e-2


def _loop_fields(a, rho, zeta):
    """B_rho, B_z, A_phi of a unit-current circular loop of radius ``a``.

    Elliptic-integral closed forms; near the axis the cancelling
    combinations are replaced by their series.
    """
    alpha2 = (a - rho) ** 2 + zeta ** 2
    beta2 = (a + rho) ** 2 + zeta ** 2
    beta = np.sqrt(beta2)
    m = 4.0 * a * rho / beta2
    k_ell = ellipkm1(alpha2 / beta2)
    e_ell = ellipe(m)
    bz = MU0 / (2 * np.pi * alpha2 * beta) * ((a * a - rho * rho - zeta * zeta) * e_ell + alpha2 * k_ell)

    small = m < _SERIES_SWITCH
    f_a = np.polynomial.polynomial.polyval(m, _SERIES_A)
    f_g = np.polynomial.polynomial.polyval(m, _SERIES_G)
    if not np.all(small):
        big = ~small
        norm = np.pi * m[big] ** 2 / 32
        kb, eb, mb = k_ell[big], e_ell[big], m[big]
        f_a[big] = ((1 - mb / 2) * kb - eb) / norm
        f_g[big] = ((1 - mb / 2) * eb - (1 - mb) * kb) / norm
    brho = MU0 * zeta * a * a * rho * f_g / (4 * alpha2 * beta2 * beta)
    aphi = MU0 * a * a * rho * f_a / (4 * beta2 * beta)
    return brho, bz, aphi


_GRADE_LEVELS = 48
_WINDING_ORDER = 8
_WINDING_CHUNK = 2048


def _winding_rule():
    x, w = gauss_legendre(_WINDING_ORDER)
    edges = np.concatenate([[0.0], 2.0 ** -np.arange(_GRADE_LEVELS, -1, -1)])
    lo, width = edges[:-1], np.diff(edges)
    t = (lo[:, None] + width[:, None] * x[None, :]).ravel()
    wt = (width[:, None] * w[None, :]).ravel()
    return t, wt


_WINDING_T, _WINDING_W = _winding_rule()


def _winding_integral(spec, rho, z):
    """Integrate the loop kernels over the winding, z' in [-L/2, L/2].

    Composite Gauss-Legendre on panels graded geometrically toward the
    point's own axial position, which is where the kernels peak when the
    point sits close to the winding.
    """
    half = 0.5 * spec.length
    a = spec.radius
    out = np.zeros((rho.size, 3))
    for s in range(0, rho.size, _WINDING_CHUNK):
        r = rho[s:s + _WINDING_CHUNK, None]
        zz = z[s:s + _WINDING_CHUNK, None]
        anchor = np.clip(zz, -half, half)
        acc = np.zeros((r.shape[0], 3))
        for end in (half, -half):
            span = end - anchor
            zp = anchor + span * _WINDING_T[None, :]
            brho, bz, aphi = _loop_fields(a, r, zz - zp)
            scale = np.abs(span[:, 0])
            acc[:, 0] += scale * (brho @ _WINDING_W)
            acc[:, 1] += scale * (bz @ _WINDING_W)
            acc[:, 2] += scale * (aphi @ _WINDING_W)
        out[s:s + _WINDING_CHUNK] = acc
    return spec.turns_per_meter * spec.current * out


def _finite_rho(spec, rho):
    # on-surface points of a finite solenoid take the interior-side limit
    on_surface = np.abs(rho - spec.radius) <= _SURFACE_RTOL * spec.radius
    return np.where(on_surface, spec.radius * (1 - 1e-9), rho)


def b_solenoid(spec, p):
    """Magnetic field of a solenoid (tesla).

    Infinite solenoids give ``mu0 n I`` along the axis for rho <= R (the
    surface rho = R counts as interior) and exactly zero outside. Finite
    solenoids integrate the circular-loop field over the winding.
    """
    pts, lead = _points(p)
    rho, z, e_rho, axis = _cylindrical(spec, pts)
    if spec.infinite:
        inside = rho <= spec.radius * (1 + _SURFACE_RTOL)
        out = np.where(inside[:, None], spec.interior_field * axis, 0.0)
    else:
        w = _winding_integral(spec, _finite_rho(spec, rho), z)
        out = w[:, 0, None] * e_rho + w[:, 1, None] * axis
    return out.reshape(lead + (3,))


def a_solenoid_closed(spec, p):
    """Vector potential of the infinite solenoid (azimuthal, T m).

    ``mu0 n I rho / 2`` inside, ``mu0 n I R^2 / (2 rho)`` outside; zero on
    the axis.
    """
    if not spec.infinite:
        raise DomainError("a_solenoid_closed needs an infinite solenoid; use a_solenoid")
    pts, lead = _points(p)
    rho, _, e_rho, axis = _cylindrical(spec, pts)
    bint, r = spec.interior_field, spec.radius
    safe = np.where(rho > 0, rho, 1.0)
    mag = np.where(rho <= r, 0.5 * bint * rho, 0.5 * bint * r * r / safe)
    out = mag[:, None] * np.cross(axis, e_rho)
    return out.reshape(lead + (3,))


def a_solenoid(spec, p):
    """Vector potential of any solenoid: closed form if infinite, else the
    winding integral of the loop potential."""
    if spec.infinite:
        return a_solenoid_closed(spec, p)
    pts, lead = _points(p)
    rho, z, e_rho, axis = _cylindrical(spec, pts)
    w = _winding_integral(spec, _finite_rho(spec, rho), z)
    out = w[:, 2, None] * np.cross(axis, e_rho)
    return out.reshape(lead + (3,))


def solenoid_b_field(spec):
    return lambda pts: b_solenoid(spec, pts)


def solenoid_a_field(spec):
    return lambda pts: a_solenoid(spec, pts)


def truncated_solenoid_b_field(spec, length=None):
    """Uniform interior field ``mu0 n I`` confined to the finite cylinder
    |z| <= length/2, rho <= R (the infinite solenoid cut to a finite piece).
    """
    half = 0.5 * (spec.length if length is None else length)

    axis = np.asarray(spec.axis)
    center = np.asarray(spec.center)
    bvec = spec.interior_field * axis

    def b(pts):
        rho, z = kernels.cyl_coords(pts, center, axis)
        inside = (rho <= spec.radius * (1 + _SURFACE_RTOL)) & (np.abs(z) <= half)
        out = np.zeros((rho.size, 3))
        out[inside] = bvec
        return out

    return b


def solenoid_box(spec, divisions=(4, 4, 64), length=None):
    """Axis-aligned box enclosing the solenoid body (or its truncation)."""
    length = spec.length if length is None else length
    u = np.abs(np.asarray(spec.axis))
    half = u * length / 2 + spec.radius * np.sqrt(np.clip(1 - u * u, 0, None))
    c = np.asarray(spec.center)
    return BoxDomain(c - half, c + half, divisions)


def a_from_b_integral(b_field, domain, p, tol=1e-3, *, atol=0.0, max_depth=30,
                      max_cells=2_000_000, full_output=False):
    """Vector potential from its field by direct volume quadrature.

    Integrates ``(1/4pi) B(r) x (p - r) / |p - r|^3`` over ``domain``;
    ``b_field`` must vanish outside it. When ``p`` lies in the domain, the
    cells containing it are left out and shrunk until the bound
    ``max|B| * diag`` on their share of the integral is within tolerance
    (``max|B|`` is sampled on the cell, not rigorous).

    Returns the potential, or ``(potential, CubatureResult)`` with
    ``full_output``.
    """
    x = np.asarray(p, dtype=float).reshape(3)
    inv4pi = 1.0 / (4 * np.pi)

    def integrand(pts):
        return inv4pi * kernels.biot_kernel(pts, b_field(pts), x)

    def bound(lo, hi):
        probe = lo + (hi - lo) * _BOUND_PROBES
        bmax = np.max(np.linalg.norm(b_field(probe), axis=1))
        return bmax * float(np.linalg.norm(hi - lo))

    exclude = x if domain.contains(x) else None
    res = cubature(integrand, domain.grid(), tol=tol, atol=atol, max_depth=max_depth,
                   max_cells=max_cells, exclude=exclude,
                   exclude_bound=bound if exclude is not None else None)
    value = np.asarray(res.value, dtype=float).reshape(3)
    return (value, res) if full_output else value


_BOUND_PROBES = np.array(
    [[i, j, k] for i in (0.0, 0.5, 1.0) for j in (0.0, 0.5, 1.0) for k in (0.0, 0.5, 1.0)]
)


@dataclass
class TruncationStudy:
    """Potential of a truncated infinite solenoid at two truncation lengths."""

    a_short: np.ndarray
    a_long: np.ndarray
    length_short: float
    length_long: float
    gap: float  # |a_long - a_short| / |a_long|
    cells: int


def solenoid_a_truncation_study(spec, p, tol=1e-3, divisions=(4, 4, 64)):
    """``a_from_b_integral`` for the solenoid truncated at L and 2L."""
    results = []
    cells = 0
    for length in (spec.length, 2 * spec.length):
        domain = solenoid_box(spec, divisions, length)
        a, res = a_from_b_integral(truncated_solenoid_b_field(spec, length), domain, p,
                                   tol, full_output=True)
        results.append(a)
        cells += res.cells
    short, long_ = results
    denom = max(np.linalg.norm(long_), 1e-300)
    return TruncationStudy(short, long_, spec.length, 2 * spec.length,
                           float(np.linalg.norm(long_ - short) / denom), cells)


def _check_not_at_charge(c, pts):
    d = np.linalg.norm(pts - np.asarray(c.position), axis=1)
    if np.any(d <= _SINGULAR_DISTANCE):
        raise SingularityError("field of a point charge evaluated at the charge position")


def b_moving_charge(c, p):
    """Non-relativistic field of a moving point charge,
    (mu0/4pi) q v x (p - x_e) / |p - x_e|^3."""
    pts, lead = _points(p)
    _check_not_at_charge(c, pts)
    qv = c.q * np.asarray(c.velocity)
    return kernels.charge_b(pts, np.asarray(c.position), qv).reshape(lead + (3,))


def a_moving_charge(c, p):
    """Coulomb-gauge potential of a moving point charge, (mu0/4pi) q v / |p - x_e|."""
    pts, lead = _points(p)
    _check_not_at_charge(c, pts)
    qv = c.q * np.asarray(c.velocity)
    return kernels.charge_a(pts, np.asarray(c.position), qv).reshape(lead + (3,))


def charge_b_field(c):
    return lambda pts: b_moving_charge(c, pts)


def charge_a_field(c):
    return lambda pts: a_moving_charge(c, pts)


def line_integral(a_field, loop, tol=1e-10, *, atol=0.0, max_level=14):
    """Closed line integral of a field along ``loop``.

    Composite 4-point Gauss-Legendre per segment; the panel count doubles
    and successive Richardson-extrapolated values are compared until they
    agree within ``max(tol * S, atol)``, where S is the integral of
    |A| |dl| (so loops with vanishing circulation still converge).
    """
    x, w = gauss_legendre(4)
    nseg = loop.n_segments
    prev_q = prev_r = None
    last = (None, None)
    for level in range(max_level + 1):
        m = 2 ** level
        s = ((np.arange(m)[:, None] + x[None, :]) / m).ravel()
        ws = np.tile(w / m, m)
        seg = np.repeat(np.arange(nseg), s.size)
        pos, tan = loop.evaluate(seg, np.tile(s, nseg))
        if tan.ndim == 1 or tan.shape[0] != pos.shape[0]:
            tan = np.broadcast_to(tan, pos.shape)
        a = np.asarray(a_field(pos), dtype=float).reshape(-1, 3)
        wt = np.tile(ws, nseg)
        q = float(np.einsum("ij,ij->i", a, tan) @ wt)
        scale = float((np.linalg.norm(a, axis=1) * np.linalg.norm(tan, axis=1)) @ wt)
        if prev_q is not None:
            r = q + (q - prev_q) / 255.0
            if prev_r is not None and abs(r - prev_r) <= max(tol * scale, atol):
                return r
            last = (prev_r, r)
            prev_r = r
        prev_q = q
    raise ConvergenceError("line integral did not converge", estimates=last)


def disc_flux(b_field, center, normal, radius, tol=1e-8, *, atol=0.0, radial_breaks=(),
              angular_divisions=8, full_output=False):
    """Flux of a field through a flat disc, by cubature in polar coordinates.

    ``radial_breaks`` are radii where the field is known to jump or kink.
    """
    n, e1, e2 = _basis(normal)
    c = np.asarray(center, dtype=float)
    radii = sorted({0.0, float(radius), *[float(b) for b in radial_breaks if 0 < b < radius]})
    phi = np.linspace(0.0, 2 * np.pi, angular_divisions + 1)

    def integrand(rp):
        r, ph = rp[:, 0], rp[:, 1]
        pts = c + r[:, None] * (np.cos(ph)[:, None] * e1 + np.sin(ph)[:, None] * e2)
        return (np.asarray(b_field(pts)) @ n) * r

    res = cubature(integrand, [np.array(radii), phi], tol=tol, atol=atol)
    return (float(res.value), res) if full_output else float(res.value)
