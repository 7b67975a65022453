"""Closed-form approximate spectral singularities for large size parameter.

To leading order in ``1/x`` and in ``kappa`` the singularity condition
reduces to ``x eta = pi (m + (nu+1)/2)`` and
``x kappa = -ln((eta+1)/(eta-1)) / 2`` for an integer mode number ``m``.
"""
import cmath
import math
from dataclasses import dataclass

from .scattering import RefractiveIndex
from .specfun import NU_DEFAULT, coeff_A

# below this size parameter the large-x seeds are not trusted
MIN_TRUSTED_X = 100.0


@dataclass(frozen=True)
class ModeSeed:
    m: int
    eta: float
    kappa: float
    x: float

    def __post_init__(self):
        if not self.kappa < 0:
            raise ValueError("a spectral singularity needs gain (kappa < 0)")

    @property
    def trusted(self):
        return self.x > MIN_TRUSTED_X

    @property
    def index(self):
        return RefractiveIndex(self.eta, self.kappa)


def _log_ratio(eta):
    if not eta > 1:
        raise ValueError(f"eta must exceed 1, got {eta}")
    return math.log((eta + 1) / (eta - 1))


def kappa_of_eta_m(eta, m, nu=NU_DEFAULT):
    """Imaginary index on the ``m``-th singularity curve in the complex-index plane."""
    if m < 1:
        raise ValueError("mode number m must be >= 1")
    return -eta * _log_ratio(eta) / (math.pi * (2 * m + nu + 1))


def x_of_eta_kappa(eta, kappa):
    """Size parameter ``ka`` of the singularity at index ``eta + i kappa``."""
    if not kappa < 0:
        raise ValueError(f"kappa must be negative, got {kappa}")
    return -_log_ratio(eta) / (2 * kappa)


def mode_seed(eta, m, nu=NU_DEFAULT):
    kappa = kappa_of_eta_m(eta, m, nu)
    return ModeSeed(m, eta, kappa, x_of_eta_kappa(eta, kappa))


def tan_condition_residual(n, x, nu=NU_DEFAULT):
    """``tan(n x - pi nu/2) - [-i n + (n^2 - 1) A_1 / (n x)]``.

    The intermediate large-x condition before the arctan/log step; used only
    as a diagnostic of seed quality.
    """
    if not x > MIN_TRUSTED_X:
        raise ValueError(f"large-x condition requires x > {MIN_TRUSTED_X}, got {x}")
    n = complex(n)
    arg = n * x - math.pi * nu / 2
    c = cmath.cos(arg)
    if abs(c) <= 1e-300 * abs(cmath.sin(arg)) or c == 0:
        raise ZeroDivisionError("tan pole: cos(n x - pi nu/2) vanishes")
    a1 = coeff_A(1, nu)
    return cmath.sin(arg) / c - (-1j * n + (n * n - 1) * a1 / (n * x))
