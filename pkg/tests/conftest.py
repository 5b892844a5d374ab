import cmath
import math

import numpy as np
import pytest

from mchasy import (DiscreteSpectrum, ReflectionCoefficient, ScatteringData,
                    SolutionCache)


def agm(x, y):
    for _ in range(80):
        x, y = 0.5 * (x + y), math.sqrt(x * y)
        if abs(x - y) < 1e-17 * max(x, 1e-300):
            break
    return 0.5 * (x + y)


def ellipk(k):
    """Complete elliptic integral of the first kind, modulus k, via AGM."""
    return math.pi / (2.0 * agm(1.0, math.sqrt(1.0 - k * k)))


def richardson_derivative(f, x, h=1e-3):
    """First derivative with O(h^4) Richardson-extrapolated central stencils."""
    d1 = (f(x + h) - f(x - h)) / (2 * h)
    d2 = (f(x + h / 2) - f(x - h / 2)) / h
    return (4 * d2 - d1) / 3


def richardson_limit(f, d):
    """Extrapolate f(d), f(d/2), f(d/4) to d -> 0 assuming f = f0 + c1 d + c2 d^2."""
    f1, f2, f3 = f(d), f(d / 2), f(d / 4)
    return (8 * f3 - 6 * f2 + f1) / 3


_PI_L = np.longdouble("3.14159265358979323846264338328")


def theta_qp_residual(theta_fn, s, vk, params):
    """|Theta(s + vk) - exp(-2 pi i s - pi i vk) Theta(s)| with the factor
    and product formed in extended precision, so the residual measures the
    series evaluations rather than harness round-off (values reach O(1e3))."""
    lhs = np.clongdouble(theta_fn(s + vk, params))
    fac = np.exp(-2j * _PI_L * np.clongdouble(s) - 1j * _PI_L * np.clongdouble(vk))
    rhs = fac * np.clongdouble(theta_fn(s, params))
    return float(abs(lhs - rhs))


@pytest.fixture(scope="session")
def cache():
    return SolutionCache()


@pytest.fixture(scope="session")
def family_half():
    """Non-generic data: kappa_r = 0.5, no chirp, unit width."""
    return ScatteringData(ReflectionCoefficient.family(0.5, 0.0, 1.0))


@pytest.fixture(scope="session")
def family_wide():
    """Non-generic, slowly decaying in log z (used for the second zone)."""
    return ScatteringData(ReflectionCoefficient.family(0.5, 0.0, 0.05))


@pytest.fixture(scope="session")
def family_generic():
    """Generic data |r(+-1)| = 1 with positive curvature of 1 - |r|^2."""
    return ScatteringData(ReflectionCoefficient.family(-1.0, 0.0, 0.5))


@pytest.fixture(scope="session")
def one_pair_spectrum():
    return DiscreteSpectrum([cmath.exp(-1j * math.pi / 3)])


@pytest.fixture(scope="session")
def reflectionless(one_pair_spectrum):
    return ScatteringData(ReflectionCoefficient.family(0.0, 0.0, 1.0),
                          one_pair_spectrum)
