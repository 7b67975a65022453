"""Spherical Bessel and Hankel functions of real order and complex argument.

Two evaluation routes are provided:

* an ascending power series summed in extended precision with mpmath,
  used for ``|z| < ASYM_CUTOFF`` and accepted up to ``SERIES_CUTOFF``;
* the large-argument Hankel expansion with optimal truncation, used for
  ``|z| >= ASYM_CUTOFF``.

The window ``[ASYM_CUTOFF, SERIES_CUTOFF]`` is where both routes are valid
and is used to cross-check them.

Arguments may be python scalars, numpy arrays or mpmath numbers.  mpmath
inputs are evaluated at the ambient mpmath precision; the exact mode
refinement relies on this.
"""
import cmath
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import AccuracyLossError, ConvergenceError

NU_DEFAULT = math.sqrt(5.0) / 2.0

ASYM_CUTOFF = 30.0
SERIES_CUTOFF = 45.0

KINDS = ("J", "Y", "H1", "H2")

SERIES_MAX_TERMS = 500
SERIES_REL_TOL = 1e-17
ASYM_MAX_TERMS = 200
ASYM_LOSS_TOL = 1e-12

_DOUBLE_EPS = np.finfo(float).eps


def _is_mp(z):
    return isinstance(z, (mpmath.mpf, mpmath.mpc))


def _check_kind(kind):
    if kind not in KINDS:
        raise ValueError(f"unknown function kind {kind!r}; expected one of {KINDS}")


def coeff_A(k, nu):
    """Hankel-expansion coefficient ``A_k(nu)``.

    Evaluated as the finite product ``prod_{l=0}^{2k-1} (nu + k - l) / (2^k k!)``,
    which equals ``Gamma(nu+k+1) / (2^k k! Gamma(nu-k+1))`` but never touches
    the Gamma poles.  ``nu`` may be a float or an mpmath number.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    prod = nu * 0 + 1
    for ell in range(2 * k):
        prod *= nu + (k - ell)
    return prod / (2**k * math.factorial(k))


def _half_pi_phase(nu):
    """Return ``(cos(pi nu / 2), sin(pi nu / 2))`` exactly for integer ``nu``."""
    if _is_mp(nu):
        return mpmath.cospi(nu / 2), mpmath.sinpi(nu / 2)
    r = math.fmod(float(nu), 4.0)
    if r < 0:
        r += 4.0
    exact = {0.0: (1.0, 0.0), 1.0: (0.0, 1.0), 2.0: (-1.0, 0.0), 3.0: (0.0, -1.0)}
    if r in exact:
        return exact[r]
    return math.cos(0.5 * math.pi * r), math.sin(0.5 * math.pi * r)


# ---------------------------------------------------------------------------
# Ascending series (extended precision)
# ---------------------------------------------------------------------------

def _series_dps(z, base):
    # terms peak near e^|z| while the result is ~e^|Im z| / |z|
    loss = (abs(complex(z)) - abs(complex(z).imag)) / math.log(10) + math.log10(abs(complex(z)) + 1)
    return base + 10 + int(max(loss, 0.0))


def _j_series_mp(nu, z):
    w = -(z * z) / 4
    term = mpmath.rgamma(nu + mpmath.mpf(1.5))
    if term == 0:
        raise ValueError(f"series undefined for order {nu}")
    total = term
    zabs = abs(w)
    for k in range(1, SERIES_MAX_TERMS + 1):
        term *= w / (k * (k + nu + mpmath.mpf(0.5)))
        total += term
        shrinking = zabs < k * abs(k + nu + mpmath.mpf(0.5))
        if shrinking and abs(term) <= SERIES_REL_TOL * abs(total):
            return mpmath.sqrt(mpmath.pi) / mpmath.power(2, nu + 1) * mpmath.power(z, nu) * total
    raise ConvergenceError(f"j_{nu}({z}) series did not converge in {SERIES_MAX_TERMS} terms")


def _run_series(fn, nu, z):
    if z == 0:
        raise ValueError("z must be non-zero")
    if abs(complex(z)) > SERIES_CUTOFF:
        raise ValueError(f"|z| = {abs(complex(z)):.6g} exceeds the series cutoff {SERIES_CUTOFF}")
    mp_in = _is_mp(z) or _is_mp(nu)
    base = mpmath.mp.dps if mp_in else 17
    with mpmath.workdps(_series_dps(z, base)):
        val = fn(mpmath.mpf(nu), mpmath.mpmathify(z))
    return +val if mp_in else complex(val)


def sph_bessel_series(nu, z):
    """Spherical Bessel function ``j_nu(z)`` from its ascending power series.

    Uses ``j_nu(z) = sqrt(pi/(2z)) J_{nu+1/2}(z)`` with the principal branch,
    summed with enough guard digits that cancellation is harmless for
    ``|z| <= SERIES_CUTOFF``.
    """
    return _run_series(_j_series_mp, nu, z)


def _y_series_mp(nu, z):
    c = mpmath.cospi(nu + mpmath.mpf(0.5))
    s = mpmath.sinpi(nu + mpmath.mpf(0.5))
    if s == 0:
        raise ValueError(f"y_nu via reflection is undefined for half-integer order {nu}")
    return (_j_series_mp(nu, z) * c - _j_series_mp(-nu - 1, z)) / s


def sph_neumann_series(nu, z):
    """``y_nu(z)`` via ``(j_nu cos((nu+1/2)pi) - j_{-nu-1}) / sin((nu+1/2)pi)``."""
    return _run_series(_y_series_mp, nu, z)


def _series_kind(kind, nu, z):
    if kind == "J":
        return sph_bessel_series(nu, z)
    y = sph_neumann_series(nu, z)
    if kind == "Y":
        return y
    j = sph_bessel_series(nu, z)
    return j + 1j * y if kind == "H1" else j - 1j * y


# ---------------------------------------------------------------------------
# Large-argument expansion
# ---------------------------------------------------------------------------

def _asym_pq_scalar(nu, z, max_terms, eps):
    p = 1 + 0 * z
    q = 0 * z
    t = 1 + 0 * z
    prev = 1.0
    smallest = 0.0
    for k in range(1, max_terms + 1):
        t = t * ((nu + k) * (nu - k + 1) / (2 * k)) / z
        mag = abs(t)
        if mag == 0:
            return p, q
        if mag >= prev:
            smallest = prev
            break
        sign = -1 if (k // 2) % 2 else 1
        if k % 2 == 0:
            p += sign * t
        else:
            q += sign * t
        prev = mag
        if mag <= eps * (abs(p) + abs(q)):
            return p, q
    else:
        smallest = prev
    scale = abs(p) + abs(q)
    if smallest > ASYM_LOSS_TOL * scale:
        raise AccuracyLossError(
            f"asymptotic sum for order {nu} at z={z} stalls at relative term {smallest / scale:.3g}"
        )
    return p, q


def _asym_pq_array(nu, z, max_terms, eps):
    p = np.ones_like(z)
    q = np.zeros_like(z)
    t = np.ones_like(z)
    prev = np.ones(z.shape)
    active = np.ones(z.shape, dtype=bool)
    stalled = np.zeros(z.shape, dtype=bool)
    for k in range(1, max_terms + 1):
        t = t * ((nu + k) * (nu - k + 1) / (2 * k)) / z
        mag = np.abs(t)
        grow = active & (mag >= prev) & (mag > 0)
        stalled |= grow
        add = active & (mag < prev) & (mag > 0)
        sign = -1 if (k // 2) % 2 else 1
        if k % 2 == 0:
            p = np.where(add, p + sign * t, p)
        else:
            q = np.where(add, q + sign * t, q)
        prev = np.where(add, mag, prev)
        done = add & (mag <= eps * (np.abs(p) + np.abs(q)))
        active &= add & ~done
        if not active.any():
            break
    stalled |= active
    if stalled.any():
        rel = prev[stalled] / (np.abs(p[stalled]) + np.abs(q[stalled]))
        if np.any(rel > ASYM_LOSS_TOL):
            raise AccuracyLossError(
                f"asymptotic sum for order {nu} stalls at relative term {rel.max():.3g}"
            )
    return p, q


def sph_bessel_asym(kind, nu, z, max_terms=ASYM_MAX_TERMS):
    """Large-argument expansion of ``j_nu`` or ``h^(1)_nu`` (and derived kinds).

    The sums over ``A_k(nu)/z^k`` are cut at their smallest term.  ``H2`` is
    formed as ``2J - H1`` and ``Y`` as ``-i (H1 - J)``.  Raises
    ``AccuracyLossError`` if the smallest retained term is larger than
    ``1e-12`` of the partial sum.
    """
    _check_kind(kind)
    mp_in = _is_mp(z)
    if isinstance(z, np.ndarray):
        z = z.astype(complex)
        if np.any(np.abs(z) < ASYM_CUTOFF):
            raise ValueError(f"asymptotic branch requires |z| >= {ASYM_CUTOFF}")
        p, q = _asym_pq_array(float(nu), z, max_terms, _DOUBLE_EPS / 2)
        sin, cos, exp = np.sin, np.cos, np.exp
    else:
        if abs(z) < ASYM_CUTOFF:
            raise ValueError(f"asymptotic branch requires |z| >= {ASYM_CUTOFF}")
        if mp_in:
            nu = mpmath.mpf(nu)
            eps = mpmath.mp.eps
            sin, cos, exp = mpmath.sin, mpmath.cos, mpmath.exp
        else:
            z = complex(z)
            eps = _DOUBLE_EPS / 2
            sin, cos, exp = cmath.sin, cmath.cos, cmath.exp
        p, q = _asym_pq_scalar(nu, z, max_terms, eps)

    c, s = _half_pi_phase(nu)
    sz, cz = sin(z), cos(z)
    # phase shift applied after the trig calls to avoid rounding z - pi nu / 2
    j = ((sz * c - cz * s) * p + (cz * c + sz * s) * q) / z
    if kind == "J":
        return _scalar_out(j, mp_in)
    h1 = exp(1j * z) * (c - 1j * s) * (-1j * p + q) / z
    if kind == "H1":
        out = h1
    elif kind == "H2":
        out = 2 * j - h1
    else:
        out = -1j * (h1 - j)
    return _scalar_out(out, mp_in)


def _scalar_out(val, mp_in):
    if mp_in or isinstance(val, np.ndarray):
        return val
    return complex(val)


# ---------------------------------------------------------------------------
# Dispatcher, families, derivatives
# ---------------------------------------------------------------------------

def sph_eval(kind, nu, z):
    """Evaluate ``kind`` (``"J"``, ``"Y"``, ``"H1"`` or ``"H2"``) of order ``nu`` at ``z``.

    Routes to the series when ``|z| < ASYM_CUTOFF`` and to the asymptotic
    expansion otherwise; arrays are split elementwise.
    """
    _check_kind(kind)
    if isinstance(z, (np.ndarray, list, tuple)):
        z = np.asarray(z, dtype=complex)
        if np.any(z == 0):
            raise ValueError("z must be non-zero")
        out = np.empty(z.shape, dtype=complex)
        small = np.abs(z) < ASYM_CUTOFF
        if (~small).any():
            out[~small] = sph_bessel_asym(kind, nu, z[~small])
        for idx in zip(*np.nonzero(small)):
            out[idx] = _series_kind(kind, nu, complex(z[idx]))
        return out
    if z == 0:
        raise ValueError("z must be non-zero")
    if abs(z) < ASYM_CUTOFF:
        return _series_kind(kind, nu, z)
    return sph_bessel_asym(kind, nu, z)


@dataclass(frozen=True)
class FunctionFamily:
    """One kind of spherical function at orders ``nu-1``, ``nu`` and ``nu+1``."""

    kind: str
    nu: float
    z: object
    lower: object
    center: object
    upper: object

    @property
    def derivative(self):
        """``d/dz u_nu`` from the three-term recursion."""
        nu = self.nu
        return (nu * self.lower - (nu + 1) * self.upper) / (2 * nu + 1)

    @property
    def log_derivative(self):
        """``u_nu'(z) / u_nu(z)``."""
        return self.derivative / self.center


def sph_family(kind, nu, z):
    _check_kind(kind)
    return FunctionFamily(
        kind, nu, z, sph_eval(kind, nu - 1, z), sph_eval(kind, nu, z), sph_eval(kind, nu + 1, z)
    )


def sph_derivative(kind, nu, z):
    """``d/dz`` of the spherical function via ``[nu u_{nu-1} - (nu+1) u_{nu+1}] / (2nu+1)``."""
    _check_kind(kind)
    return (nu * sph_eval(kind, nu - 1, z) - (nu + 1) * sph_eval(kind, nu + 1, z)) / (2 * nu + 1)
