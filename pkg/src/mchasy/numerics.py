"""Shared numerical kernels.

Airy Ai/Ai' (series + asymptotic hybrid), the Jacobi theta series, adaptive
Gauss-Kronrod quadrature with principal-value and inverse-square-root band
variants, truncated real-line integrals, and a safeguarded root finder.
All quadratures accept complex-valued integrands.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import (
    BracketError,
    ConvergenceError,
    DivergentSeriesError,
    DomainError,
    RangeError,
)

__all__ = [
    "QuadratureSpec",
    "ThetaParams",
    "QuadResult",
    "airy",
    "jacobi_theta",
    "quad",
    "quad_pv",
    "quad_band",
    "quad_real_line",
    "find_root",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and truncation policy shared by all integral evaluations."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_subdivisions: int = 4000
    tail_cutoff: float = 1e-17

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")

    def tighter(self, factor):
        return QuadratureSpec(self.abs_tol * factor, self.rel_tol * factor,
                              self.max_subdivisions, self.tail_cutoff)


@dataclass(frozen=True)
class ThetaParams:
    """Period ratio and truncation order for the theta series."""

    varkappa: complex = 1j
    truncation: int = 32
    abs_tol: float = 1e-15

    def __post_init__(self):
        if not np.imag(self.varkappa) > 0:
            raise DivergentSeriesError(
                "theta series needs Im(varkappa) > 0, got %r" % (self.varkappa,))
        if self.truncation < 1:
            raise DomainError("truncation must be >= 1")


class QuadResult(NamedTuple):
    value: complex
    error: float

    def __complex__(self):
        return complex(self.value)

    def __float__(self):
        return float(np.real(self.value))


# ----------------------------------------------------------------------
# Airy functions
# ----------------------------------------------------------------------

_AI0 = np.longdouble("0.3550280538878172392600631860")    # 3^(-2/3)/Gamma(2/3)
_AIP0 = np.longdouble("-0.2588194037928067984051835601")  # -3^(-1/3)/Gamma(1/3)
# Overlap-validated switch points.  The positive side leaves the series early:
# c1*f and c2*g both grow like exp(zeta) there while Ai decays, so the series
# loses ~zeta/ln(10) digits to cancellation.
_SERIES_SWITCH_POS = 6.0
_SERIES_SWITCH_NEG = -9.0
_AIRY_RANGE = 30.0


def _airy_series(s: float):
    # Maclaurin solutions of y'' = s*y: f(0)=1,f'(0)=0 and g(0)=0,g'(0)=1.
    # Extended precision: partial sums reach ~3e6 at |s|=9 while the result
    # is O(1), so double alone cannot hold 1e-12 absolute.
    x = np.longdouble(s)
    x3 = x * x * x
    f_term = np.longdouble(1.0)
    g_term = x
    f_sum, g_sum = f_term, g_term
    fp_sum = np.longdouble(0.0)
    gp_sum = np.longdouble(1.0)
    for k in range(80):
        f_term = f_term * x3 / ((3 * k + 2) * (3 * k + 3))
        g_term = g_term * x3 / ((3 * k + 3) * (3 * k + 4))
        f_sum += f_term
        g_sum += g_term
        if x != 0.0:
            fp_sum += (3 * (k + 1)) * f_term / x
            gp_sum += (3 * (k + 1) + 1) * g_term / x
        if abs(f_term) < 1e-26 * abs(f_sum) and abs(g_term) < 1e-26 * (abs(g_sum) + 1):
            break
    ai = _AI0 * f_sum + _AIP0 * g_sum
    aip = _AI0 * fp_sum + _AIP0 * gp_sum
    return float(ai), float(aip)


def _uv_coeffs(nmax=40):
    u = [1.0]
    v = [1.0]
    for k in range(1, nmax):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 1) / (72.0 * k))
        v.append(u[-1] * (6 * k + 1) / (1.0 - 6 * k))
    return np.array(u), np.array(v)


_U_COEF, _V_COEF = _uv_coeffs()


def _asym_sum(coef, zeta, alternate):
    # optimal truncation: stop before terms grow
    total = 0.0
    prev = math.inf
    for k, c in enumerate(coef):
        term = c / zeta ** k
        if abs(term) > prev:
            break
        total += (-1.0) ** k * term if alternate else term
        prev = abs(term)
    return total


def _airy_asymptotic_pos(s: float):
    zeta = (2.0 / 3.0) * s ** 1.5
    pre = math.exp(-zeta) / (2.0 * math.sqrt(math.pi) * s ** 0.25)
    ai = pre * _asym_sum(_U_COEF, zeta, alternate=True)
    aip = -(s ** 0.25) * math.exp(-zeta) / (2.0 * math.sqrt(math.pi)) \
        * _asym_sum(_V_COEF, zeta, alternate=True)
    return ai, aip


def _airy_asymptotic_neg(s: float):
    x = -s
    zeta = (2.0 / 3.0) * x ** 1.5
    w = zeta - math.pi / 4.0
    even_u = _asym_sum(_U_COEF[0::2], zeta * zeta, alternate=True)
    odd_u = _asym_sum(_U_COEF[1::2], zeta * zeta, alternate=True) / zeta
    even_v = _asym_sum(_V_COEF[0::2], zeta * zeta, alternate=True)
    odd_v = _asym_sum(_V_COEF[1::2], zeta * zeta, alternate=True) / zeta
    ai = (math.cos(w) * even_u + math.sin(w) * odd_u) / (math.sqrt(math.pi) * x ** 0.25)
    aip = (x ** 0.25 / math.sqrt(math.pi)) * (math.sin(w) * even_v - math.cos(w) * odd_v)
    return ai, aip


def airy(s: float):
    """Return (Ai(s), Ai'(s)) to 1e-12 absolute accuracy for |s| <= 30."""
    s = float(s)
    if not math.isfinite(s) or abs(s) > _AIRY_RANGE:
        raise RangeError("airy accuracy range is |s| <= %g, got %r" % (_AIRY_RANGE, s))
    if _SERIES_SWITCH_NEG <= s <= _SERIES_SWITCH_POS:
        return _airy_series(s)
    if s > 0:
        return _airy_asymptotic_pos(s)
    return _airy_asymptotic_neg(s)


# ----------------------------------------------------------------------
# Jacobi theta series
# ----------------------------------------------------------------------

def _theta_truncation(s: complex, params: ThetaParams) -> int:
    y0 = float(np.imag(params.varkappa))
    im = abs(float(np.imag(s)))
    # beyond n*, exp(-pi*y0*n^2 + 2*pi*n*|Im s|) < abs_tol
    budget = -math.log(max(params.abs_tol, 1e-300)) / math.pi
    n_star = (im + math.sqrt(im * im + y0 * budget)) / y0
    return max(params.truncation, int(math.ceil(n_star)) + 4)


def jacobi_theta(s: complex, params: ThetaParams, order: int = 0) -> complex:
    """Theta series sum(exp(2*pi*i*n*s + pi*i*varkappa*n^2), n in Z).

    Truncated symmetric sum over |n| <= N with N auto-enlarged so that the
    dropped tail is below ``params.abs_tol``; for real s the tail obeys
    |tail| < 3*|nome|**(N**2) / (1 - |nome|) with nome = exp(pi*i*varkappa).
    ``order=1`` evaluates the derivative d/ds.
    """
    if not np.imag(params.varkappa) > 0:
        raise DivergentSeriesError("Im(varkappa) must be positive")
    if order not in (0, 1):
        raise DomainError("order must be 0 or 1")
    trunc = _theta_truncation(s, params)
    n = np.arange(-trunc, trunc + 1, dtype=np.clongdouble)
    # extended precision: the quasi-periodicity identities are checked to
    # 1e-12 absolute on values of size O(10)
    pi_l = np.longdouble("3.14159265358979323846264338328")
    arg = 2j * pi_l * n * np.clongdouble(s) + 1j * pi_l * np.clongdouble(params.varkappa) * n * n
    terms = np.exp(arg)
    if order == 1:
        terms = terms * (2j * pi_l * n)
    return complex(terms.sum())


# ----------------------------------------------------------------------
# Adaptive Gauss-Kronrod quadrature
# ----------------------------------------------------------------------

_GK_ABSC = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
]
_GK_WK = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
]
_GK_WG = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
]
_GK_X = np.array([-x for x in _GK_ABSC[:-1]] + [0.0] + _GK_ABSC[-2::-1])
_K15_W = np.array(_GK_WK[:-1] + [_GK_WK[-1]] + _GK_WK[-2::-1])
_G7_W = np.zeros(15)
_G7_W[1:14:2] = _GK_WG[:-1] + [_GK_WG[-1]] + _GK_WG[-2::-1]


def _eval_nodes(f, x):
    try:
        fx = np.asarray(f(x))
        if fx.shape != x.shape:
            raise ValueError
        return fx
    except Exception:
        return np.array([f(xi) for xi in x])


def _gk_panel(f, a, b):
    half = 0.5 * (b - a)
    x = 0.5 * (a + b) + half * _GK_X
    fx = _eval_nodes(f, x)
    k15 = half * np.sum(_K15_W * fx)
    g7 = half * np.sum(_G7_W * fx)
    diff = abs(k15 - g7)
    err = min(diff, (200.0 * diff) ** 1.5) if diff > 0 else 0.0
    return k15, err


def quad(f: Callable, a: float, b: float, spec: QuadratureSpec = QuadratureSpec()) -> QuadResult:
    """Adaptive Gauss7-Kronrod15 integral of ``f`` over [a, b].

    Returns the value together with an error estimate; raises
    ``ConvergenceError`` (carrying the best estimate) when the subdivision
    budget is exhausted before the tolerances are met.
    """
    if a == b:
        return QuadResult(0.0, 0.0)
    val, err = _gk_panel(f, a, b)
    heap = [(-err, a, b, val, err)]
    total_val, total_err = val, err
    n = 1
    while total_err > max(spec.abs_tol, spec.rel_tol * abs(total_val)):
        if n >= spec.max_subdivisions:
            raise ConvergenceError(
                "quadrature did not converge in %d panels (err=%.3g)"
                % (n, total_err), best=total_val, estimate_error=total_err)
        _, pa, pb, pval, perr = heapq.heappop(heap)
        mid = 0.5 * (pa + pb)
        v1, e1 = _gk_panel(f, pa, mid)
        v2, e2 = _gk_panel(f, mid, pb)
        total_val += v1 + v2 - pval
        total_err += e1 + e2 - perr
        heapq.heappush(heap, (-e1, pa, mid, v1, e1))
        heapq.heappush(heap, (-e2, mid, pb, v2, e2))
        n += 1
    return QuadResult(total_val, total_err)


def quad_band(f: Callable, a: float, b: float,
              spec: QuadratureSpec = QuadratureSpec()) -> QuadResult:
    """Integral of f(z)/sqrt((z-a)(b-z)) over (a, b).

    Uses z = a + (b-a)*sin(phi)^2, which removes both inverse-square-root
    endpoints (the Chebyshev weight turns into the constant 2).
    """
    if not a < b:
        raise DomainError("quad_band requires a < b, got (%r, %r)" % (a, b))
    span = b - a

    def g(phi):
        z = a + span * np.sin(phi) ** 2
        return 2.0 * f(z)

    return quad(g, 0.0, 0.5 * np.pi, spec)


def _truncation_point(f, start, cutoff, sign):
    x = start
    for _ in range(60):
        probe = np.abs(_eval_nodes(f, sign * x * np.array([1.0, 1.37, 1.73])))
        if probe.max() < cutoff:
            return sign * x * 1.73
        x *= 2.0
    raise ConvergenceError("integrand does not fall below tail cutoff %g" % cutoff)


def quad_real_line(f: Callable, spec: QuadratureSpec = QuadratureSpec(),
                   tail: Callable | None = None, start: float = 8.0) -> QuadResult:
    """Truncated integral of ``f`` over the whole real line.

    The domain is cut where |f| falls below ``spec.tail_cutoff``; ``tail``,
    when given, is called as ``tail(lo, hi)`` and must return an analytic
    estimate of the dropped mass, which is added to the result.
    """
    hi = _truncation_point(f, start, spec.tail_cutoff, +1)
    lo = _truncation_point(f, start, spec.tail_cutoff, -1)
    left = quad(f, lo, 0.0, spec)
    right = quad(f, 0.0, hi, spec)
    value = left.value + right.value
    err = left.error + right.error
    if tail is not None:
        value += tail(lo, hi)
    return QuadResult(value, err)


def quad_pv(f: Callable, c: float, spec: QuadratureSpec = QuadratureSpec(),
            lo: float | None = None, hi: float | None = None,
            tail: Callable | None = None) -> QuadResult:
    """Cauchy principal value of integral f(z)/(z-c) dz over the real line.

    Subtracts f(c) on a symmetric window around ``c`` (the regularized
    quotient (f(z)-f(c))/(z-c) is integrated there), integrates the plain
    quotient outside, and adds the exact log term f(c)*log((hi-c)/(c-lo))
    for the truncated, generally asymmetric, domain.
    """
    fc = f(c)
    h = 1e-6 * (1.0 + abs(c))
    dfc = (f(c + h) - f(c - h)) / (2.0 * h)
    if hi is None:
        hi = _truncation_point(lambda x: f(x) / (x - c), max(8.0, 2 * abs(c) + 2),
                               spec.tail_cutoff, +1)
    if lo is None:
        lo = _truncation_point(lambda x: f(x) / (x - c), max(8.0, 2 * abs(c) + 2),
                               spec.tail_cutoff, -1)
    w = max(1.0, 0.1 * (1.0 + abs(c)))
    w_hi = min(w, 0.5 * (hi - c))
    w_lo = min(w, 0.5 * (c - lo))
    if w_hi <= 0 or w_lo <= 0:
        raise DomainError("pv pole %r too close to the truncated boundary" % c)

    def reg(x):
        x = np.asarray(x, dtype=float)
        num = _eval_nodes(f, x) - fc
        out = np.where(np.abs(x - c) < 1e-12 * (1 + abs(c)), dfc,
                       num / np.where(x == c, 1.0, x - c))
        return out

    inner = quad(reg, c - w_lo, c + w_hi, spec)
    outer_l = quad(lambda x: f(x) / (x - c), lo, c - w_lo, spec)
    outer_r = quad(lambda x: f(x) / (x - c), c + w_hi, hi, spec)
    # exact kernel term on the (possibly clipped, hence asymmetric) window
    value = inner.value + outer_l.value + outer_r.value + fc * math.log(w_hi / w_lo)
    if tail is not None:
        value += tail(lo, hi)
    err = inner.error + outer_l.error + outer_r.error
    return QuadResult(value, err)


# ----------------------------------------------------------------------
# Root finding
# ----------------------------------------------------------------------

def find_root(g: Callable, lo: float, hi: float, tol: float = 1e-13,
              max_iter: int = 200) -> float:
    """Safeguarded secant/bisection root of ``g`` on [lo, hi].

    Requires a sign change; stops when |g(root)| <= tol or the bracket
    width falls below tol (absolute).
    """
    glo, ghi = g(lo), g(hi)
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if glo * ghi > 0:
        raise BracketError("no sign change on [%r, %r]" % (lo, hi))
    a, b, ga, gb = lo, hi, glo, ghi
    x, gx = a, ga
    for _ in range(max_iter):
        if gb != ga:
            x_sec = b - gb * (b - a) / (gb - ga)
        else:
            x_sec = 0.5 * (a + b)
        mid = 0.5 * (a + b)
        # accept the secant step only if it lands safely inside the bracket
        x = x_sec if (a + 0.01 * (b - a)) < x_sec < (b - 0.01 * (b - a)) else mid
        gx = g(x)
        if abs(gx) <= tol or (b - a) <= tol:
            return x
        if ga * gx <= 0:
            b, gb = x, gx
        else:
            a, ga = x, gx
    if abs(gx) <= 100 * tol or (b - a) <= 100 * tol:
        return x
    raise ConvergenceError("find_root exhausted %d iterations" % max_iter, best=x)
