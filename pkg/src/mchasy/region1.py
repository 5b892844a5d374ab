"""Leading-order wave form in the first Painleve zone (xi near 2)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import RealityError, RegionError
from .painleve2 import SolutionCache, eval_pii
from .phase import RegionConstants, RegionTag, SpaceTimePoint, classify, scaled_s
from .scattering import ScatteringData, eval_r, log_T_i

__all__ = ["AsymptoticValue", "u_region1", "x_minus_y_region1"]

_AMPL = (81.0 / 2.0) ** (1.0 / 3.0)      # prefactor of t^{-2/3} v'(s)
_ERROR_ORDER = -37.0 / 48.0              # min{1-4d, 1/3+9d} at d = 7/144


@dataclass
class AsymptoticValue:
    u: float
    region: RegionTag
    error_order: float | None
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if not math.isfinite(self.u):
            raise RealityError("non-finite asymptotic value")
        if self.error_order is not None and not self.error_order < 0:
            raise RealityError("error order must be negative when quantified")


def _airy_multiplier(data: ScatteringData) -> float:
    k = eval_r(data, 1.0)
    if abs(k.imag) > 1e-12:
        raise RealityError("r(1) must be real, got %r" % k)
    return k.real


def u_region1(point: SpaceTimePoint, data: ScatteringData,
              sol_cache: SolutionCache | None = None,
              constants: RegionConstants = RegionConstants(),
              tol: float = 1e-10) -> AsymptoticValue:
    """u = 1 - (81/2)^(1/3) t^(-2/3) v'(s) with v the Painleve II
    transcendent matched to r(1)*Ai."""
    if classify(point, constants) is not RegionTag.R_I:
        raise RegionError("point (x=%g, t=%g) is not in the first zone"
                          % (point.x, point.t))
    cache = sol_cache if sol_cache is not None else SolutionCache()
    k = _airy_multiplier(data)
    s = scaled_s(point, RegionTag.R_I)
    s_min = -10.0 if s >= -10.0 else max(-12.0, s - 0.5)
    sol = cache.get(k, s_min=s_min, tol=tol)
    v, vp, q = eval_pii(sol, s)
    u = 1.0 - _AMPL * point.t ** (-2.0 / 3.0) * vp
    return AsymptoticValue(u, RegionTag.R_I, _ERROR_ORDER,
                           {"s": s, "k": k, "v": v, "v_prime": vp, "Q": q})


def x_minus_y_region1(point: SpaceTimePoint, data: ScatteringData,
                      sol_cache: SolutionCache | None = None,
                      constants: RegionConstants = RegionConstants(),
                      tol: float = 1e-10) -> float:
    """Diagnostic offset between the physical and spectral space variables.

    Equals -2 log T(i) - t^(-1/3) 36^(-1/3) (v(s) + Q(s)); the similarity
    variable of the spectral frame is replaced by s, which preserves the
    reported error order.
    """
    if classify(point, constants) is not RegionTag.R_I:
        raise RegionError("point (x=%g, t=%g) is not in the first zone"
                          % (point.x, point.t))
    cache = sol_cache if sol_cache is not None else SolutionCache()
    k = _airy_multiplier(data)
    s = scaled_s(point, RegionTag.R_I)
    sol = cache.get(k, s_min=-10.0 if s >= -10.0 else max(-12.0, s - 0.5), tol=tol)
    v, _vp, q = eval_pii(sol, s)
    return -2.0 * log_T_i(data, "no-integral") \
        - point.t ** (-1.0 / 3.0) * 36.0 ** (-1.0 / 3.0) * (v + q)
