"""Reflection amplitude of a homogeneous complex-index sphere and the
spectral-singularity residual.

Outside the sphere the field is ``A1 h1(kr) + A2 h2(kr)`` (reflected plus
incident spherical waves), inside it is ``B1 j(n k r)``.  Matching the field
and its radial derivative (plus the ``1/r`` term from the curl) at ``r = a``
fixes ``A1/A2``.  Its poles on the real ``k`` axis are spectral
singularities.

All functions accept scalar or numpy-array wavelengths and, for the exact
refinement, mpmath scalars.
"""
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import LogDerivativePoleError, SingularDenominatorError
from .specfun import NU_DEFAULT, sph_family


@dataclass(frozen=True)
class SphereGeometry:
    """Sphere radius (nm) and the Bessel order of the radial solutions."""

    radius: float
    nu: float = NU_DEFAULT

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        if not self.nu > 0:
            raise ValueError(f"Bessel order must be positive, got {self.nu}")


@dataclass(frozen=True)
class RefractiveIndex:
    eta: float
    kappa: float

    def __complex__(self):
        return complex(self.eta, self.kappa)

    @classmethod
    def from_complex(cls, n):
        n = complex(n)
        return cls(n.real, n.imag)


@dataclass(frozen=True)
class WaveInput:
    wavelength: float
    k: float
    x: float


def wave_input(lam, geom):
    k = 2 * math.pi / lam
    return WaveInput(lam, k, k * geom.radius)


def _index(n):
    if isinstance(n, RefractiveIndex):
        return complex(n)
    return n


def size_parameter(lam, geom):
    pi = mpmath.pi if isinstance(lam, (mpmath.mpf, mpmath.mpc)) else math.pi
    return 2 * pi * geom.radius / lam


def _arguments(n, geom, lam):
    x = size_parameter(lam, geom)
    if isinstance(x, np.ndarray):
        x = x.astype(complex)
    return x, _index(n) * x


def _amplitude_terms(n, geom, lam):
    """Numerator and denominator of ``A1/A2``, each multiplied by ``a``."""
    x, nx = _arguments(n, geom, lam)
    j = sph_family("J", geom.nu, nx)
    jx = sph_family("J", geom.nu, x)
    h1 = sph_family("H1", geom.nu, x)
    # h2 = 2 j - h1 on the real-k side, in both evaluation branches
    h2 = 2 * jx.center - h1.center
    dh2 = 2 * jx.derivative - h1.derivative
    bracket_j = j.center + nx * j.derivative
    bracket_h1 = h1.center + x * h1.derivative
    bracket_h2 = h2 + x * dh2
    num = h2 * bracket_j - j.center * bracket_h2
    den = j.center * bracket_h1 - h1.center * bracket_j
    return num, den


def _is_singular(num, den):
    tiny = np.finfo(float).tiny
    return (den == 0) | (abs(den) <= tiny * abs(num))


def reflection_amplitude(n, geom, lam):
    """Reflection amplitude ``A1/A2`` of the sphere at vacuum wavelength ``lam`` (nm).

    Parameters
    ----------
    n : complex, RefractiveIndex or array
        Refractive index inside the sphere (may vary with ``lam``).
    geom : SphereGeometry
    lam : float, ndarray or mpmath number
        Wavelength in nm.

    Raises
    ------
    SingularDenominatorError
        If the denominator vanishes relative to the numerator, i.e. ``lam``
        sits on a spectral singularity to working precision.
    """
    num, den = _amplitude_terms(n, geom, lam)
    if isinstance(den, np.ndarray):
        bad = _is_singular(num, den)
        if bad.any():
            raise SingularDenominatorError(f"singular denominator at indices {np.nonzero(bad)[0].tolist()}")
    elif _is_singular(num, den):
        raise SingularDenominatorError(f"singular denominator at lambda={lam}")
    return num / den


def reflection_coefficient(n, geom, lam):
    """``R = |A1/A2|^2``."""
    return abs(reflection_amplitude(n, geom, lam)) ** 2


def singularity_residual(n, geom, lam):
    """Mismatch of radial logarithmic derivatives at the sphere surface.

    Returns ``a * (d/dr ln h1(kr) - d/dr ln j(nkr))`` at ``r = a``, i.e. the
    residual in units of ``1/a``.  Derivatives come from the three-term
    recursion, so this is ``x h1'(x)/h1(x) - n x j'(nx)/j(nx)`` with
    ``x = ka``.  It vanishes exactly at a spectral singularity.
    """
    x, nx = _arguments(n, geom, lam)
    j = sph_family("J", geom.nu, nx)
    h1 = sph_family("H1", geom.nu, x)
    if np.any(h1.center == 0) or np.any(j.center == 0):
        raise LogDerivativePoleError(f"log-derivative pole at lambda={lam}")
    return x * h1.log_derivative - nx * j.log_derivative
