"""Collisionless-shock zone: band endpoints, periods, Abel map, theta model.

Everything lives on the genus-1 curve w^2 = (k^2 - a^2)(k^2 - b^2) with cuts
[-b, -a] and [a, b].  Branch conventions (first sheet):

    w(k) = k^2 sqrt(1 - a^2/k^2) sqrt(1 - b^2/k^2)   (principal roots),

so w ~ k^2 at infinity, w > 0 on (b, inf), w = -sqrt((a^2-z^2)(b^2-z^2)) on
the gap, and the upper boundary values on the cuts are +i*sqrt(...) on (a, b)
and -i*sqrt(...) on (-b, -a).  With these choices

    B1 = 6 q * int_{-a}^{a} sqrt((a^2-z^2)(b^2-z^2)) dz      (real > 0),
    A1 = 6 i q * int_a^b  sqrt((z^2-a^2)(b^2-z^2)) dz        (imaginary),
    varkappa = i * K_gap / K_band                            (Im > 0),

which is the unique sign assignment under which the scalar jump relations of
the g- and h-functions hold and the theta series converges.  The off-diagonal
phases of the model matrix are -exp(i*phi) (row 1) and +exp(-i*phi) (row 2);
these are forced by the antidiagonal jump and are cross-checked at runtime by
the expansion-coefficient fit.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass

import numpy as np

from .errors import (
    AdmissibilityError,
    BoundaryAmbiguityError,
    BranchError,
    ConvergenceError,
    ConventionError,
    DomainError,
    PoleOfSolutionError,
    RegionError,
    WindowError,
)
from .numerics import QuadratureSpec, ThetaParams, find_root, jacobi_theta, quad, quad_band
from .phase import RegionConstants, RegionTag, SpaceTimePoint, classify
from .region1 import AsymptoticValue
from .scattering import ScatteringData

__all__ = [
    "ShockParams",
    "ShockGeometry",
    "curvature_at_one",
    "solve_band",
    "periods",
    "abel",
    "delta0",
    "h_eval",
    "g_eval",
    "nr7_matrix",
    "nr7_coeffs",
    "u_region3",
    "geometry_build_count",
    "reset_geometry_counter",
]

_TIGHT = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-13, max_subdivisions=6000)

_counter_lock = threading.Lock()
_geometry_builds = 0


def geometry_build_count() -> int:
    return _geometry_builds


def reset_geometry_counter() -> None:
    global _geometry_builds
    with _counter_lock:
        _geometry_builds = 0


def _count_build():
    global _geometry_builds
    with _counter_lock:
        _geometry_builds += 1


# ----------------------------------------------------------------------
# Shock parameters
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ShockParams:
    p: float
    q: float
    xi: float
    t: float
    C_R: float

    def __post_init__(self):
        if self.p <= 0 or self.q <= 0:
            raise DomainError("p and q must be positive")
        if not self.C_R > 0:
            raise AdmissibilityError("C_R must be positive, got %r" % self.C_R)
        if not self.xi < 2.0:
            raise DomainError("shock parametrization needs xi < 2")

    @property
    def tau(self) -> float:
        return self.t * (2.0 - self.xi) ** 1.5 * math.sqrt(self.q / (48.0 * self.p ** 3))

    @property
    def band_rhs(self) -> float:
        g = 2.0 - self.xi
        return -2.0 * math.sqrt(3.0) * self.p ** 1.5 * math.log(g) \
            / (3.0 * self.q ** 1.5 * g ** 1.5 * self.t)


def curvature_at_one(data: ScatteringData) -> float:
    """Quadratic coefficient of 1 - |r|^2 at z = 1.

    Closed form 2*beta*kappa_r^2 for the builtin family; a centered 5-point
    stencil with step 1e-3 (Richardson-checked against half the step) for
    tabulated data.
    """
    r = data.r
    if r.kind == "family":
        return 2.0 * r.beta * r.kappa_r ** 2

    # |r| peaks at z = 1, where the shape-preserving global interpolant
    # deliberately damps curvature; use an unconstrained C^2 spline on a
    # local window of raw table values instead
    from scipy.interpolate import CubicSpline
    lo = np.searchsorted(r.grid, 1.0) - 25
    sel = slice(max(lo, 0), min(lo + 50, r.grid.size))
    if r.grid[sel].size < 8 or not (r.grid[sel][0] < 0.99 and r.grid[sel][-1] > 1.01):
        raise DomainError("table too sparse around z = 1 for a curvature fit")
    local = CubicSpline(r.grid[sel], 1.0 - np.abs(r.values[sel]) ** 2)

    def second(h):
        f = local
        return (-f(1 + 2 * h) + 16 * f(1 + h) - 30 * f(1.0)
                + 16 * f(1 - h) - f(1 - 2 * h)) / (12.0 * h * h)

    d2, d2h = second(1e-3), second(5e-4)
    # interpolants are only piecewise smooth; allow a loose consistency band
    if abs(d2 - d2h) > 5e-2 * max(abs(d2), 1e-12):
        raise ConvergenceError("stencil for the curvature of 1-|r|^2 did not settle",
                               best=d2h, estimate_error=abs(d2 - d2h))
    return 0.5 * d2h


# ----------------------------------------------------------------------
# Curve primitives
# ----------------------------------------------------------------------

def _w_sheet1(k, a, b):
    k = np.asarray(k, dtype=complex)
    return k * k * np.sqrt(1.0 - a * a / (k * k)) * np.sqrt(1.0 - b * b / (k * k))


def _w_abs(z, a, b):
    return np.sqrt(np.abs(z * z - a * a) * np.abs(z * z - b * b))


def _seg_inv_w(a, b, lo, hi, spec=_TIGHT) -> float:
    """Positive integral of 1/|w| over [lo, hi] avoiding the 1/sqrt endpoints."""
    return float(np.real(quad_band(
        lambda z: np.sqrt((z - lo) * (hi - z)) / _w_abs(z, a, b), lo, hi, spec).value))


def _seg_w(a, b, lo, hi, spec=_TIGHT) -> float:
    """Positive integral of |w| over [lo, hi]."""
    return float(np.real(quad_band(
        lambda z: np.sqrt((z - lo) * (hi - z)) * _w_abs(z, a, b), lo, hi, spec).value))


def _k_band(a, b, spec=_TIGHT):
    return _seg_inv_w(a, b, a, b, spec)

def _k_gap(a, b, spec=_TIGHT):
    return _seg_inv_w(a, b, -a, a, spec)

def _j_band(a, b, spec=_TIGHT):
    return _seg_w(a, b, a, b, spec)

def _j_gap(a, b, spec=_TIGHT):
    return _seg_w(a, b, -a, a, spec)


# ----------------------------------------------------------------------
# Band endpoints
# ----------------------------------------------------------------------

def solve_band(params: ShockParams, spec: QuadratureSpec = _TIGHT) -> tuple[float, float]:
    """Solve a^2 + b^2 = 2p/(3q) together with the band-area equation.

    One-parameter bisection in a; the attainable maximum of the band integral
    is computed by quadrature (not trusted from a closed form) and its
    monotonicity in a is spot-checked.
    """
    p, q = params.p, params.q
    a_max = math.sqrt(p / (3.0 * q))
    radius2 = 2.0 * p / (3.0 * q)

    def b_of(a):
        return math.sqrt(radius2 - a * a)

    def area(a):
        return _j_band(a, b_of(a), spec)

    rhs = params.band_rhs
    attainable = area(1e-9 * a_max)
    samples = [area(f * a_max) for f in (1e-9, 0.25, 0.5, 0.75, 1 - 1e-9)]
    if any(s1 <= s2 for s1, s2 in zip(samples, samples[1:])):
        raise BranchError("band integral is not decreasing in a: %r" % samples)
    if not 0.0 < rhs < attainable:
        raise WindowError(
            "band equation RHS %.6g outside attainable range (0, %.6g); the "
            "point is not in a valid shock regime for this data" % (rhs, attainable))
    a = find_root(lambda x: area(x) - rhs, 1e-9 * a_max, a_max * (1 - 1e-12),
                  tol=1e-15)
    b = b_of(a)
    resid = abs(area(a) - rhs)
    if resid > 1e-12:
        raise ConvergenceError("band residual %.3g above 1e-12" % resid, best=(a, b))
    _count_build()
    return a, b


# ----------------------------------------------------------------------
# Periods and Abel map
# ----------------------------------------------------------------------

def periods(a: float, b: float, q: float,
            spec: QuadratureSpec = _TIGHT) -> tuple[complex, complex, complex]:
    """(B1, A1, varkappa) under the locked branch/orientation conventions."""
    if not 0.0 < a < b:
        raise DomainError("periods need 0 < a < b")
    kb, kg = _k_band(a, b, spec), _k_gap(a, b, spec)
    B1 = 6.0 * q * _j_gap(a, b, spec)
    A1 = 6.0j * q * _j_band(a, b, spec)
    varkappa = 1j * kg / kb
    if not varkappa.imag > 0:
        raise BranchError("period ratio lost positivity: %r" % varkappa)
    return complex(B1), A1, varkappa


@dataclass(frozen=True)
class ShockGeometry:
    """Assembled shock geometry for one space-time point."""

    a: float
    b: float
    B1: complex
    A1: complex
    varkappa: complex
    A_inf: complex
    cA: complex
    Delta0: float
    phi: complex
    tau: float
    C_R: float
    p: float
    q: float
    K_band: float
    K_gap: float
    J_band: float
    J_gap: float

    @property
    def theta_params(self) -> ThetaParams:
        return ThetaParams(varkappa=self.varkappa)

    def w(self, k):
        return _w_sheet1(k, self.a, self.b)


def _path_quad_inv_w(geom_ab, z1, spec=_TIGHT) -> complex:
    """Integral of 1/w from b along the straight segment to z1 (off-axis),
    regularized at b by the quadratic substitution."""
    a, b = geom_ab
    dz = z1 - b

    def f(sig):
        z = b + dz * sig * sig
        return 2.0 * sig * dz / _w_sheet1(z, a, b)

    return complex(quad(f, 0.0, 1.0, spec).value)


def abel(geom: ShockGeometry, k, side: str | None = None,
         spec: QuadratureSpec = _TIGHT) -> complex:
    """Normalized Abel integral A(k) with base point b on the first sheet.

    ``side`` ('+'/'-') selects the boundary value for real k on the cuts;
    such evaluations use exact one-sided segment reductions.  Paths for
    off-axis k are straight segments from b (they meet the axis only at b).
    """
    a, b = geom.a, geom.b
    norm = 2j * geom.K_band
    k = complex(k)
    if k.imag != 0.0:
        return _path_quad_inv_w((a, b), k, spec) / norm
    x = k.real
    if x == b:
        return 0.0 + 0.0j
    if x > b:
        return -1j * _seg_inv_w(a, b, b, x, spec) / (2.0 * geom.K_band)
    if x < -b:
        return (geom.K_gap - _seg_inv_w(a, b, x, -b, spec)) / norm
    if abs(x) < a:
        g0 = _seg_inv_w(a, b, x, a, spec)
        val = 0.5 - 1j * g0 / (2.0 * geom.K_band)
        if side == "-":
            return val - 1.0
        return val
    # on a cut: a one-sided value is required
    if side not in ("+", "-"):
        raise BoundaryAmbiguityError(
            "A(k) on a cut needs side='+' or side='-', got %r" % side)
    sgn = 1.0 if side == "+" else -1.0
    if x >= a:   # [a, b]
        frac = _seg_inv_w(a, b, min(x, b), b, spec) / (2.0 * geom.K_band)
        return sgn * frac
    # [-b, -a]
    pfrac = _seg_inv_w(a, b, x, -a, spec) / (2.0 * geom.K_band)
    return sgn * 0.5 - geom.varkappa / 2.0 - sgn * pfrac


def _abel_infinity(a, b, kb, spec=_TIGHT) -> complex:
    R = 1e5 * max(b, 1.0)

    def f(u):
        z = b + u * u
        return 2.0 * u / _w_abs(z, a, b)

    body = float(np.real(quad(f, 0.0, math.sqrt(R - b), spec).value))
    tail = 1.0 / R + (a * a + b * b) / (6.0 * R ** 3)
    return -1j * (body + tail) / (2.0 * kb)


def delta0(a: float, b: float, C_R: float, K_band: float | None = None,
           spec: QuadratureSpec = _TIGHT) -> float:
    """Gap-average of log(C_R z^2), normalized by the full band period.

    This is the unique constant for which the auxiliary scalar h decays at
    infinity; the endpoint log singularity at 0 is integrable.
    """
    if C_R <= 0:
        raise AdmissibilityError("C_R must be positive")
    if not 0.0 < a < b:
        raise DomainError("delta0 needs 0 < a < b")
    kb = K_band if K_band is not None else _k_band(a, b, spec)

    def f(th):
        z = a * math.sin(th)
        lg = math.log(C_R) + 2.0 * math.log(max(z, 1e-300))
        return lg / math.sqrt(b * b - z * z)

    L = float(np.real(quad(np.vectorize(f), 0.0, 0.5 * math.pi, spec).value))
    return -L / kb


def _gap_log_moment(a, b, C_R, power, spec=_TIGHT) -> float:
    """int_0^a z^power * log(C_R z^2) / sqrt((a^2-z^2)(b^2-z^2)) dz."""

    def f(th):
        z = a * math.sin(th)
        lg = math.log(C_R) + 2.0 * math.log(max(z, 1e-300))
        return z ** power * lg / math.sqrt(b * b - z * z)

    return float(np.real(quad(np.vectorize(f), 0.0, 0.5 * math.pi, spec).value))


def build_geometry(params: ShockParams, spec: QuadratureSpec = _TIGHT,
                   validate: bool = True) -> ShockGeometry:
    """Solve the band equations and assemble all derived constants."""
    a, b = solve_band(params, spec)
    kb, kg = _k_band(a, b, spec), _k_gap(a, b, spec)
    jb, jg = _j_band(a, b, spec), _j_gap(a, b, spec)
    B1 = 6.0 * params.q * jg
    A1 = 6.0j * params.q * jb
    varkappa = 1j * kg / kb
    A_inf = _abel_infinity(a, b, kb, spec)
    if abs(A_inf - (-varkappa / 4.0)) > 1e-9:
        raise BranchError("A(inf) disagrees with -varkappa/4: %r vs %r"
                          % (A_inf, -varkappa / 4.0))
    d0 = delta0(a, b, params.C_R, kb, spec)
    tau = params.tau
    phi = tau * B1 / 2.0 - 1j * d0
    geom = ShockGeometry(a=a, b=b, B1=complex(B1), A1=A1, varkappa=varkappa,
                         A_inf=A_inf, cA=1j / (2.0 * kb), Delta0=d0, phi=phi,
                         tau=tau, C_R=params.C_R, p=params.p, q=params.q,
                         K_band=kb, K_gap=kg, J_band=jb, J_gap=jg)
    if validate:
        ident = (2.0 - params.xi) * cmath.exp(-1j * tau * A1)
        if abs(ident - 1.0) > 1e-10:
            raise BranchError("(2-xi)*exp(-i*tau*A1) = %r, expected 1" % ident)
        nr7_coeffs(geom, spec)   # hard gate on the expansion conventions
    return geom


# ----------------------------------------------------------------------
# Scalar g- and h-functions
# ----------------------------------------------------------------------

def _sided(k: complex, geom: ShockGeometry, side: str, f) -> complex:
    # three-point Richardson continuation onto the cut from the chosen side
    d = 1e-3 * (geom.b - geom.a) * (1.0 if side == "+" else -1.0)
    f1, f2, f3 = f(k + 1j * d), f(k + 0.5j * d), f(k + 0.25j * d)
    return (8.0 * f3 - 6.0 * f2 + f1) / 3.0


def g_eval(geom: ShockGeometry, k, side: str | None = None,
           spec: QuadratureSpec = _TIGHT) -> complex:
    """g(k) = -3q * int_b^k w + B1/4 on the first sheet.

    Real k in [-b, b] lies on the jump contour and needs ``side``; those
    boundary values come from exact one-sided segment reductions.
    """
    a, b, q = geom.a, geom.b, geom.q
    k = complex(k)
    x, y = k.real, k.imag
    if y != 0.0:
        dz = k - b

        def f(sig):
            z = b + dz * sig * sig
            return 2.0 * sig * dz * _w_sheet1(z, a, b)

        body = complex(quad(f, 0.0, 1.0, spec).value)
        return -3.0 * q * body + geom.B1 / 4.0
    if x >= b:
        return -3.0 * q * _seg_w(a, b, b, x, spec) + geom.B1 / 4.0
    if x <= -b:
        # upper crossing: the two band legs contribute -+ i*J_band and cancel
        body = geom.J_gap - _seg_w(a, b, x, -b, spec)
        return -3.0 * q * body + geom.B1 / 4.0
    if side not in ("+", "-"):
        raise BoundaryAmbiguityError("g on [-b, b] needs side='+'/'-'")
    sgn = 1.0 if side == "+" else -1.0
    if x >= a:          # on (a, b)
        return sgn * 3j * q * _seg_w(a, b, x, b, spec) + geom.B1 / 4.0
    if x > -a:          # on the gap: values differ by the full band period
        body = -sgn * 1j * geom.J_band + _seg_w(a, b, x, a, spec)
        return -3.0 * q * body + geom.B1 / 4.0
    # on (-b, -a)
    body = -sgn * 1j * geom.J_band + geom.J_gap \
        + sgn * 1j * _seg_w(a, b, x, -a, spec)
    return -3.0 * q * body + geom.B1 / 4.0


def theta_hat(params_or_geom, k) -> complex:
    """Cubic model phase p*k - q*k^3."""
    p, q = params_or_geom.p, params_or_geom.q
    k = complex(k)
    return p * k - q * k ** 3


def h_eval(geom: ShockGeometry, k, side: str | None = None,
           spec: QuadratureSpec = _TIGHT) -> complex:
    """Auxiliary scalar h(k); O(1/k) at infinity, log-singular at 0.

    The whole segment [-b, b] is a jump contour of h, so real k there needs
    ``side``; the boundary value is obtained by short Richardson continuation
    from the requested half plane.
    """
    a, b, d0, C_R = geom.a, geom.b, geom.Delta0, geom.C_R
    k = complex(k)
    if k.imag == 0.0 and abs(k.real) <= b:
        if side not in ("+", "-"):
            raise BoundaryAmbiguityError("h on [-b, b] needs side='+'/'-'")
        return _sided(k, geom, side, lambda z: h_eval(geom, z, None, spec))

    def f_band_right(z):
        return 1.0 / ((z - k) * np.sqrt((z + a) * (z + b)))

    def f_band_left(z):
        return 1.0 / ((z - k) * np.sqrt((a - z) * (b - z)))

    i_right = -1j * d0 * quad_band(f_band_right, a, b, spec).value
    i_left = -1j * d0 * quad_band(f_band_left, -b, -a, spec).value

    def f_gap(th):
        z = a * math.sin(th)
        lg = math.log(C_R) + 2.0 * math.log(max(abs(z), 1e-300))
        return lg / ((z - k) * math.sqrt(b * b - z * z))

    fv = np.vectorize(f_gap)
    # split at the log singularity so it is never a quadrature node
    i_gap = -1j * (complex(quad(fv, -0.5 * math.pi, 0.0, spec).value)
                   + complex(quad(fv, 0.0, 0.5 * math.pi, spec).value))
    return geom.w(k) / (2j * math.pi) * (i_right + i_left + i_gap)


def h1_limit(geom: ShockGeometry, spec: QuadratureSpec = _TIGHT) -> float:
    """lim k*h(k): (Delta0 * int_band z^2/w + int_gap z^2 log(C_R z^2)/|w|) / pi."""
    a, b = geom.a, geom.b
    k2 = float(np.real(quad_band(
        lambda z: z * z * np.sqrt((z - a) * (b - z)) / _w_abs(z, a, b), a, b, spec).value))
    l2 = _gap_log_moment(a, b, geom.C_R, 2, spec)
    return (geom.Delta0 * k2 + l2) / math.pi


def g0_limit(geom: ShockGeometry) -> float:
    """lim k*(g(k) - theta_hat(k)) = -3q (b^2 - a^2)^2 / 8."""
    return -3.0 * geom.q * (geom.b ** 2 - geom.a ** 2) ** 2 / 8.0


# ----------------------------------------------------------------------
# Theta-function model matrix
# ----------------------------------------------------------------------

def _nu(geom: ShockGeometry, k: complex, side: str | None) -> complex:
    a, b = geom.a, geom.b
    if side in ("+", "-") and np.imag(k) == 0.0 and a <= abs(np.real(k)) <= b:
        x = float(np.real(k))
        ratio = abs((x - a) * (x + b) / ((x + a) * (x - b)))
        phase = cmath.exp(-1j * math.pi / 4.0) if side == "+" else cmath.exp(1j * math.pi / 4.0)
        return ratio ** 0.25 * phase
    return complex(((k - a) * (k + b) / ((k + a) * (k - b))) ** 0.25)


def _theta_factory(geom: ShockGeometry):
    params = geom.theta_params
    t0 = abs(jacobi_theta(0.0, params))

    def T(s, order=0):
        val = jacobi_theta(s, params, order=order)
        if order == 0 and abs(val) < 1e-12 * t0:
            raise PoleOfSolutionError("theta denominator vanished", point=s)
        return val

    return T


def nr7_matrix(geom: ShockGeometry, k, side: str | None = None,
               spec: QuadratureSpec = _TIGHT) -> np.ndarray:
    """Explicit theta-function solution of the constant-jump model problem."""
    kap, phi = geom.varkappa, geom.phi
    Ainf = geom.A_inf
    Ak = abel(geom, k, side, spec)
    T = _theta_factory(geom)
    nu = _nu(geom, complex(k), side)
    p1 = 0.5 * (nu + 1.0 / nu)
    p2 = (nu - 1.0 / nu) / 2j
    shift = phi / math.pi
    n11 = p1 * T(Ak - kap / 4 + shift) * T(Ainf - kap / 4) \
        / (T(Ak - kap / 4) * T(Ainf - kap / 4 + shift))
    n12 = -cmath.exp(1j * phi) * p2 * T(-Ak - kap / 4 + shift) * T(Ainf - kap / 4) \
        / (T(-Ak - kap / 4) * T(Ainf - kap / 4 + shift))
    n21 = cmath.exp(-1j * phi) * p2 * T(Ak + kap / 4 + shift) * T(-Ainf + kap / 4) \
        / (T(Ak + kap / 4) * T(-Ainf + kap / 4 + shift))
    n22 = p1 * T(-Ak + kap / 4 + shift) * T(-Ainf + kap / 4) \
        / (T(-Ak + kap / 4) * T(-Ainf + kap / 4 + shift))
    return np.array([[n11, n12], [n21, n22]])


def _expansion_terms(geom: ShockGeometry):
    kap, phi = geom.varkappa, geom.phi
    Ainf = geom.A_inf
    T = _theta_factory(geom)
    shift = phi / math.pi
    g_inf = T(Ainf - kap / 4) * T(-Ainf - kap / 4 + shift) \
        / (T(-Ainf - kap / 4) * T(Ainf - kap / 4 + shift))
    c_inf = T(Ainf - kap / 4) / T(Ainf - kap / 4 + shift)

    def ratio_dds(s):
        num, den = T(s - kap / 4 + shift), T(s - kap / 4)
        dnum = T(s - kap / 4 + shift, order=1)
        dden = T(s - kap / 4, order=1)
        return (dnum * den - num * dden) / (den * den)

    # d/d(1/k) at infinity of the ratio evaluated along -A(k)
    f1 = -geom.cA * ratio_dds(-Ainf)
    x_tilde = c_inf * f1
    return g_inf, x_tilde


def nr7_coeffs(geom: ShockGeometry,
               spec: QuadratureSpec = _TIGHT) -> tuple[complex, complex]:
    """Closed-form 1/k and 1/k^2 coefficients of the (1,2) entry.

    Validated against a Laurent fit of ``nr7_matrix`` samples; disagreement
    beyond 1e-5 signals a broken derivative-at-infinity convention and is a
    hard failure.
    """
    g_inf, x_tilde = _expansion_terms(geom)
    pref = -cmath.exp(1j * geom.phi) * (geom.b - geom.a) / 2j
    n1_12 = pref * g_inf
    n2_12 = pref * x_tilde
    ks = np.array([1e2, 2e2, 3e2, 5e2, 1e3, 2e3, 5e3, 1e4])
    vals = np.array([nr7_matrix(geom, kk, None, spec)[0, 1] for kk in ks])
    design = np.vstack([np.ones_like(ks), 1.0 / ks, 1.0 / ks ** 2, 1.0 / ks ** 3]).T
    coef, *_ = np.linalg.lstsq(design, vals * ks, rcond=None)
    scale = max(1.0, abs(n1_12))
    if abs(coef[0] - n1_12) > 1e-5 * scale or abs(coef[1] - n2_12) > 1e-5 * max(1.0, abs(n2_12)):
        raise ConventionError(
            "Laurent fit %r, %r disagrees with closed forms %r, %r"
            % (coef[0], coef[1], n1_12, n2_12))
    return complex(n1_12), complex(n2_12)


# ----------------------------------------------------------------------
# Wave form
# ----------------------------------------------------------------------

def u_region3(point: SpaceTimePoint, data: ScatteringData,
              p: float = 1.0, q: float = 1.0,
              constants: RegionConstants = RegionConstants(),
              spec: QuadratureSpec = _TIGHT,
              validate: bool = True) -> AsymptoticValue:
    """Theta-modulated wave form in the collisionless-shock zone.

    Assembled from the two expansion coefficients of the model matrix and the
    tail limits of the scalar g and h; this combination is exactly real and
    independent of the choice of (p, q).
    """
    if classify(point, constants) is not RegionTag.R_III:
        raise RegionError("point (x=%g, t=%g) is not in the shock zone"
                          % (point.x, point.t))
    m1, mm1 = abs(data.r(1.0)), abs(data.r(-1.0))
    if abs(m1 - 1.0) > 1e-10 or abs(mm1 - 1.0) > 1e-10:
        raise AdmissibilityError(
            "shock asymptotics need the generic case |r(+-1)| = 1; got %r, %r"
            % (m1, mm1))
    curv = curvature_at_one(data)
    params = ShockParams(p=p, q=q, xi=point.xi, t=point.t,
                         C_R=(q / (12.0 * p)) * curv)
    geom = build_geometry(params, spec, validate=validate)
    g_inf, x_tilde = _expansion_terms(geom)
    z1 = cmath.exp(1j * geom.phi) * g_inf
    z2 = cmath.exp(1j * geom.phi) * x_tilde
    h1 = h1_limit(geom, spec)
    g0 = g0_limit(geom)
    pref = (2.0 - point.xi) * (geom.b - geom.a) * q / (12.0 * p)
    u = 1.0 - pref * (2.0 * (h1 + geom.tau * g0) * z1.real - z2.imag)
    diag = {"a": geom.a, "b": geom.b, "tau": geom.tau, "varkappa": geom.varkappa,
            "Delta0": geom.Delta0, "phi": geom.phi, "B1": geom.B1, "A1": geom.A1,
            "C_R": geom.C_R, "h1": h1, "g0": g0, "Z1": z1, "Z2": z2,
            "A_inf": geom.A_inf}
    return AsymptoticValue(float(u), RegionTag.R_III, None, diag)
