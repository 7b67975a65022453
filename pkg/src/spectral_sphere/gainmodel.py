"""Two-level gain-medium dispersion, mode wavelengths and threshold gains.

Wavelengths and radii are in nm, gain coefficients in cm^-1 (see
:mod:`spectral_sphere.units`).  ``kappa0`` is the imaginary part of the
refractive index at the resonance wavelength; it is negative for gain.
"""
import cmath
import math
from dataclasses import dataclass
from pathlib import Path

import mpmath
import numpy as np
from scipy import optimize

from .errors import CatalogError, DispersionBranchError
from .scattering import RefractiveIndex
from .specfun import NU_DEFAULT
from .units import per_cm_to_per_nm, per_nm_to_per_cm

DISPERSION_MODES = ("full", "linearized")


@dataclass(frozen=True)
class GainMediumSpec:
    """Host index, resonance wavelength (nm), normalized damping and gain cap (cm^-1)."""

    name: str
    n0: float
    lambda0: float
    gamma_hat: float
    g0_max: float

    def __post_init__(self):
        if not self.n0 > 1:
            raise ValueError(f"{self.name}: host index n0 must exceed 1")
        if not self.lambda0 > 0:
            raise ValueError(f"{self.name}: lambda0 must be positive")
        if not 0 < self.gamma_hat < 1:
            raise ValueError(f"{self.name}: gamma_hat must lie in (0, 1)")
        if not self.g0_max > 0:
            raise ValueError(f"{self.name}: g0_max must be positive")

    @property
    def log_ratio(self):
        """``ln((n0+1)/(n0-1))``, the gain-length product at resonance."""
        return math.log((self.n0 + 1) / (self.n0 - 1))


PRESETS = {
    "diode": GainMediumSpec("diode", n0=3.4, lambda0=1500.0, gamma_hat=0.02, g0_max=1000.0),
    "rose-bengal-dmso": GainMediumSpec(
        "rose-bengal-dmso", n0=1.479, lambda0=549.0, gamma_hat=0.062, g0_max=5.0
    ),
}


@dataclass(frozen=True)
class GainState:
    g0: float
    lambda0: float

    def __post_init__(self):
        if self.g0 < 0:
            raise ValueError("gain coefficient must be non-negative")

    @property
    def kappa0(self):
        return kappa0_from_gain(self.g0, self.lambda0)


def kappa0_from_gain(g0, lambda0):
    """``kappa0 = -g0 lambda0 / (4 pi)`` with ``g0`` in cm^-1 and ``lambda0`` in nm."""
    return -per_cm_to_per_nm(g0) * lambda0 / (4 * math.pi)


def gain_from_kappa0(kappa0, lambda0):
    return per_nm_to_per_cm(-4 * math.pi * kappa0 / lambda0)


def f1(gamma_hat, w):
    return gamma_hat * (1 - w * w) / ((1 - w * w) ** 2 + gamma_hat**2 * w * w)


def f2(gamma_hat, w):
    return gamma_hat**2 * w / ((1 - w * w) ** 2 + gamma_hat**2 * w * w)


def detuning(lam, lambda0):
    """``((lam^2 - lambda0^2) / (lambda0 lam))^2``."""
    return ((lam * lam - lambda0 * lambda0) / (lambda0 * lam)) ** 2


def _sqrt(z):
    if isinstance(z, np.ndarray):
        return np.sqrt(z)
    if isinstance(z, (mpmath.mpf, mpmath.mpc)):
        return mpmath.sqrt(z)
    return cmath.sqrt(z)


def complex_index(lam, medium, kappa0, mode="full"):
    """Complex refractive index ``eta + i kappa`` at wavelength ``lam`` (nm).

    ``mode="full"`` takes the principal square root of
    ``n0^2 - wp^2 / (w^2 - 1 + i gamma w)`` with ``w = lambda0/lam`` and
    ``wp^2 = 2 n0 gamma kappa0``; ``mode="linearized"`` keeps only the terms
    linear in ``kappa0``.  Works elementwise on arrays and on mpmath scalars.
    """
    w = medium.lambda0 / lam
    g = medium.gamma_hat
    if mode == "full":
        wp2 = 2 * medium.n0 * g * kappa0
        arg = medium.n0**2 - wp2 / (w * w - 1 + 1j * g * w)
        if np.any(np.real(arg) <= 0):
            raise DispersionBranchError("square-root argument crossed the negative real axis")
        return _sqrt(arg)
    if mode == "linearized":
        return medium.n0 + kappa0 * f1(g, w) + 1j * kappa0 * f2(g, w)
    raise ValueError(f"unknown dispersion mode {mode!r}; expected one of {DISPERSION_MODES}")


def dispersion_index(lam, medium, kappa0, mode="full"):
    return RefractiveIndex.from_complex(complex_index(lam, medium, kappa0, mode))


def mode_wavelength(m, medium, a, nu=NU_DEFAULT):
    """Small-``kappa0`` wavelength (nm) of mode ``m`` for a sphere of radius ``a`` (nm)."""
    if m < 1:
        raise ValueError("mode number m must be >= 1")
    return 4 * medium.n0 * a / (2 * m + nu + 1)


def gain_at_wavelength(lam, medium, a):
    """Threshold gain (cm^-1) for a singularity at ``lam`` in a sphere of radius ``a``."""
    per_nm = medium.log_ratio / a * (1 + detuning(lam, medium.lambda0) / medium.gamma_hat**2)
    return per_nm_to_per_cm(per_nm)


def gain_for_mode(m, medium, a, nu=NU_DEFAULT):
    """Threshold gain (cm^-1) of mode ``m``; ``m`` may be non-integer for relaxations."""
    return gain_at_wavelength(mode_wavelength(m, medium, a, nu), medium, a)


def nearest_resonant_mode(medium, a, nu=NU_DEFAULT):
    """Real-valued mode number whose wavelength equals ``lambda0``."""
    return (4 * medium.n0 * a / medium.lambda0 - nu - 1) / 2


@dataclass(frozen=True)
class MinRadius:
    radius: float
    m: int
    wavelength: float
    envelope: float


def min_radius(medium, nu=NU_DEFAULT, g0_max=None):
    """Smallest sphere radius (nm) for which some integer mode reaches threshold.

    The relaxation ``ln((n0+1)/(n0-1)) / g0_max`` (lasing exactly at
    ``lambda0``) is a lower bound.  For each integer mode near it the left
    end of its feasible radius interval is found by root bracketing, and the
    smallest one wins.
    """
    g_cap = medium.g0_max if g0_max is None else g0_max
    if not g_cap > 0:
        raise ValueError("gain cap must be positive")
    envelope = medium.log_ratio / per_cm_to_per_nm(g_cap)
    m_center = nearest_resonant_mode(medium, envelope, nu)

    best = None
    for m in range(max(1, math.floor(m_center) - 3), math.ceil(m_center) + 4):
        def excess(a, m=m):
            return gain_for_mode(m, medium, a, nu) - g_cap

        # the bracket must reach the radius where mode m sits on lambda0
        a_res = medium.lambda0 * (2 * m + nu + 1) / (4 * medium.n0)
        lo, hi = 0.9 * envelope, max(1.2 * envelope, 1.5 * a_res)
        res = optimize.minimize_scalar(excess, bounds=(envelope, hi), method="bounded",
                                       options={"xatol": 1e-9 * min(envelope, a_res)})
        if res.fun > 0:
            continue
        a_left = optimize.brentq(excess, lo, res.x, xtol=1e-12 * envelope, rtol=4 * np.finfo(float).eps)
        if best is None or a_left < best.radius:
            best = MinRadius(a_left, m, mode_wavelength(m, medium, a_left, nu), envelope)
    if best is None:
        raise RuntimeError("no feasible mode found near the continuous optimum")
    return best


# ---------------------------------------------------------------------------
# Media catalog
# ---------------------------------------------------------------------------

_CATALOG_KEYS = {
    "name": ("name", str),
    "n0": ("n0", float),
    "lambda0_nm": ("lambda0", float),
    "gamma_hat": ("gamma_hat", float),
    "g0_max_per_cm": ("g0_max", float),
}


def parse_catalog(text):
    """Parse a media catalog.

    One medium per block, blocks separated by blank lines, one ``key = value``
    (or ``key: value``) pair per line; ``#`` starts a comment.  Required keys:
    ``name``, ``n0``, ``lambda0_nm``, ``gamma_hat``, ``g0_max_per_cm``.
    """
    media = {}
    block, start = {}, None

    def flush():
        if not block:
            return
        missing = [k for k in _CATALOG_KEYS if _CATALOG_KEYS[k][0] not in block]
        if missing:
            raise CatalogError(f"medium block missing keys: {', '.join(missing)}", start)
        try:
            spec = GainMediumSpec(**block)
        except ValueError as exc:
            raise CatalogError(str(exc), start) from None
        if spec.name in media:
            raise CatalogError(f"duplicate medium name {spec.name!r}", start)
        media[spec.name] = spec

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            flush()
            block, start = {}, None
            continue
        sep = "=" if "=" in line else ":"
        if sep not in line:
            raise CatalogError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, value = (s.strip() for s in line.split(sep, 1))
        if key not in _CATALOG_KEYS:
            raise CatalogError(f"unknown key {key!r}", lineno)
        field, conv = _CATALOG_KEYS[key]
        if field in block:
            raise CatalogError(f"duplicate key {key!r}", lineno)
        try:
            block[field] = conv(value)
        except ValueError:
            raise CatalogError(f"bad value {value!r} for {key}", lineno) from None
        if start is None:
            start = lineno
    flush()
    return media


def load_catalog(path):
    return parse_catalog(Path(path).read_text())


def format_catalog(media):
    """Serialize media in the catalog format accepted by :func:`parse_catalog`."""
    blocks = []
    for spec in media:
        blocks.append(
            "\n".join([
                f"name = {spec.name}",
                f"n0 = {spec.n0!r}",
                f"lambda0_nm = {spec.lambda0!r}",
                f"gamma_hat = {spec.gamma_hat!r}",
                f"g0_max_per_cm = {spec.g0_max!r}",
            ])
        )
    return "\n\n".join(blocks) + "\n"


def get_medium(name, catalog=None):
    """Look ``name`` up in ``catalog`` (if given) and then in the presets."""
    if catalog and name in catalog:
        return catalog[name]
    try:
        return PRESETS[name]
    except KeyError:
        known = sorted(set(PRESETS) | set(catalog or ()))
        raise KeyError(f"unknown medium {name!r}; known: {', '.join(known)}") from None

