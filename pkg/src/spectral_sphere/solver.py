"""Enumeration, exact refinement and reflection spectra of spectral singularities.

Perturbative seeds come from the closed-form mode wavelength and threshold
gain.  Each seed is refined to a root of the complex singularity residual in
the two real unknowns ``(lambda, g0)``, by a damped Newton iteration with a
central-difference Jacobian.  The iteration runs in mpmath extended
precision: near ``x = ka ~ 4e4`` a single ulp of a double-precision
wavelength already moves the residual by ~1e-7 (in units of ``1/a``), so
the ``1e-10`` target is out of reach in plain floats.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from dataclasses import asdict, dataclass, replace

import mpmath
import numpy as np
from scipy import optimize, signal

from .errors import ModeJumpError, NoConvergenceError, SpectralSphereError
from .gainmodel import (
    complex_index,
    gain_for_mode,
    kappa0_from_gain,
    mode_wavelength,
    nearest_resonant_mode,
)
from .scattering import SphereGeometry, _amplitude_terms, singularity_residual, size_parameter
from .specfun import NU_DEFAULT

log = logging.getLogger(__name__)

DEFAULT_DISPERSION = "linearized"
EXACT_TOL = 1e-10
STEP_TOL = 1e-9
MAX_NEWTON = 50
MAX_HALVINGS = 20
FD_STEP_NM = 1e-6
FD_STEP_GAIN = 1e-8
WORKING_DPS = 30
# largest Newton step in lambda, as a fraction of the local mode spacing
MAX_STEP_FRACTION = 0.25

PEAK_THRESHOLD = 1e14
PEAK_RESOLUTION_NM = 1e-9
PEAK_MIN_PROMINENCE = 1.0
SCAN_CHUNK = 512


@dataclass(frozen=True)
class ModeSolution:
    """One spectral singularity.

    ``residual_mag`` is the modulus of the singularity residual in units of
    ``1/a`` at ``(lam, g0)``; for exact solutions it is evaluated at the
    extended-precision root before rounding to floats.
    """

    m: int
    lam: float
    g0: float
    kappa0: float
    x: float
    residual_mag: float
    method: str
    lam_pert: float = math.nan
    g0_pert: float = math.nan
    status: str = "ok"

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


@dataclass(frozen=True)
class ReflectionSample:
    lam: float
    amplitude: complex
    R: float


@dataclass(frozen=True)
class Peak:
    lam: float
    R: float
    classification: str


@dataclass(frozen=True)
class ScanResult:
    samples: list
    peaks: list

    @property
    def wavelengths(self):
        return np.array([s.lam for s in self.samples])

    @property
    def R(self):
        return np.array([s.R for s in self.samples])

    @property
    def candidates(self):
        return [p for p in self.peaks if p.classification == "singularity-candidate"]


def _residual(lam, g0, medium, geom, dispersion):
    n = complex_index(lam, medium, kappa0_from_gain(g0, medium.lambda0), dispersion)
    return singularity_residual(n, geom, lam)


def seed_modes(medium, a, nu=NU_DEFAULT, *, g0_cap=None, dispersion=DEFAULT_DISPERSION):
    """Perturbative solutions for every mode whose threshold gain is under the cap.

    Modes are scanned outward from the one resonant with ``lambda0``; the gain
    grows monotonically with detuning, so each side stops at the first mode
    over the cap.  Returned sorted by ``g0``.
    """
    cap = medium.g0_max if g0_cap is None else g0_cap
    geom = SphereGeometry(a, nu)
    m_star = nearest_resonant_mode(medium, a, nu)
    found = []
    for start, step in ((max(1, math.floor(m_star)), -1), (max(1, math.floor(m_star)) + 1, 1)):
        m = start
        while m >= 1:
            g0 = gain_for_mode(m, medium, a, nu)
            if g0 > cap:
                break
            lam = mode_wavelength(m, medium, a, nu)
            kappa0 = kappa0_from_gain(g0, medium.lambda0)
            try:
                res = abs(_residual(lam, g0, medium, geom, dispersion))
            except SpectralSphereError:
                res = math.inf
            found.append(ModeSolution(
                m, lam, g0, kappa0, size_parameter(lam, geom), float(res), "perturbative",
                lam_pert=lam, g0_pert=g0,
            ))
            m += step
    found.sort(key=lambda s: s.g0)
    return found


def _solve2(j11, j12, j21, j22, r1, r2):
    det = j11 * j22 - j12 * j21
    return (r1 * j22 - j12 * r2) / det, (j11 * r2 - r1 * j21) / det


def refine_mode(seed, medium, a, nu=NU_DEFAULT, *, dispersion=DEFAULT_DISPERSION,
                tol=EXACT_TOL, max_iter=MAX_NEWTON, dps=WORKING_DPS, history=None):
    """Refine a perturbative seed to an exact singularity in ``(lambda, g0)``.

    Damped Newton on ``Re F = Im F = 0``: the wavelength step is capped at a
    quarter of the local mode spacing, then halved up to 20 times until
    ``|F|`` decreases.  Converged once ``|F| <= tol`` (units of
    ``1/a``) and the relative step is below 1e-9.  ``history``, if given, is
    extended with ``|F|`` after every accepted step.

    Raises
    ------
    NoConvergenceError
        After ``max_iter`` iterations or when no damped step decreases ``|F|``;
        ``exc.best`` holds the best iterate as a ModeSolution.
    ModeJumpError
        If the root is closer to a neighbouring mode's seed wavelength.
    """
    if not seed.x > 100:
        raise ValueError(f"seed size parameter {seed.x} too small for the large-x seeds")
    geom = SphereGeometry(a, nu)

    with mpmath.workdps(dps):
        lam = mpmath.mpf(seed.lam)
        g0 = mpmath.mpf(seed.g0)
        hl = mpmath.mpf(FD_STEP_NM)
        hg = mpmath.mpf(FD_STEP_GAIN)
        max_step = MAX_STEP_FRACTION * 2 * lam / (2 * seed.m + nu + 1)

        def F(lam, g0):
            return _residual(lam, g0, medium, geom, dispersion)

        def pack(status):
            return ModeSolution(
                seed.m, float(lam), float(g0), float(kappa0_from_gain(g0, medium.lambda0)),
                float(size_parameter(lam, geom)), float(r), "exact",
                lam_pert=seed.lam_pert if not math.isnan(seed.lam_pert) else seed.lam,
                g0_pert=seed.g0_pert if not math.isnan(seed.g0_pert) else seed.g0,
                status=status,
            )

        f = F(lam, g0)
        r = abs(f)
        converged = False
        for it in range(max_iter):
            dl = (F(lam + hl, g0) - F(lam - hl, g0)) / (2 * hl)
            dg = (F(lam, g0 + hg) - F(lam, g0 - hg)) / (2 * hg)
            step_l, step_g = _solve2(dl.real, dg.real, dl.imag, dg.imag, -f.real, -f.imag)
            # trust region: never leap across to a neighbouring mode
            t = min(mpmath.mpf(1), max_step / abs(step_l)) if step_l else mpmath.mpf(1)
            for _ in range(MAX_HALVINGS + 1):
                trial_l, trial_g = lam + t * step_l, g0 + t * step_g
                f_new = F(trial_l, trial_g)
                if abs(f_new) < r:
                    break
                t /= 2
            else:
                if r <= tol:
                    converged = True  # already at the precision floor
                    break
                raise NoConvergenceError(
                    f"mode {seed.m}: no damped step reduces |F| (={float(r):.3g})",
                    best=pack("no-convergence"),
                )
            rel_step = max(abs(t * step_l) / abs(lam), abs(t * step_g) / abs(g0))
            lam, g0, f, r = trial_l, trial_g, f_new, abs(f_new)
            if history is not None:
                history.append(float(r))
            log.debug("mode %d iter %d |F|=%.3e step=%.3e", seed.m, it, float(r), float(rel_step))
            if r <= tol and rel_step < STEP_TOL:
                converged = True
                break
        if not converged:
            raise NoConvergenceError(
                f"mode {seed.m}: {max_iter} iterations, |F|={float(r):.3g}", best=pack("no-convergence")
            )
        sol = pack("ok")

    own = abs(sol.lam - mode_wavelength(seed.m, medium, a, nu))
    neighbours = [abs(sol.lam - mode_wavelength(m, medium, a, nu)) for m in (seed.m - 1, seed.m + 1) if m >= 1]
    if any(d < own for d in neighbours):
        raise ModeJumpError(f"mode {seed.m} refined onto a neighbouring mode", replace(sol, status="mode-jump"))
    return sol


def _map(fn, items, workers):
    """Order-preserving map, in worker processes when ``workers > 1``.

    Processes rather than threads: mpmath keeps its working precision in
    process-global state, which concurrent ``workdps`` blocks would race on.
    """
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(min(workers, len(items))) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _refine_or_flag(seed, medium, a, nu, dispersion):
    try:
        return refine_mode(seed, medium, a, nu, dispersion=dispersion)
    except NoConvergenceError as exc:
        log.warning("%s", exc)
        return exc.best
    except ModeJumpError as exc:
        log.warning("%s", exc)
        return exc.solution


def enumerate_singularities(medium, a, nu=NU_DEFAULT, refine=True, *, g0_cap=None,
                            dispersion=DEFAULT_DISPERSION, workers=1):
    """All singularities under the gain cap, sorted by threshold gain.

    Index ``l`` of the result is the ``l``-th critical gain value reached as
    pumping increases.  Failed refinements are kept with a non-``"ok"``
    ``status`` instead of aborting the batch.
    """
    seeds = seed_modes(medium, a, nu, g0_cap=g0_cap, dispersion=dispersion)
    if not refine:
        return seeds
    run = partial(_refine_or_flag, medium=medium, a=a, nu=nu, dispersion=dispersion)
    sols = _map(run, seeds, workers)
    sols.sort(key=lambda s: s.g0)
    return sols


def _scan_chunk(lam, medium, geom, kappa0, dispersion):
    n = complex_index(lam, medium, kappa0, dispersion)
    num, den = _amplitude_terms(n, geom, lam)
    with np.errstate(divide="ignore", invalid="ignore"):
        amp = num / den
    return amp


def reflection_scan(medium, a, g0, window, grid=10_000, refine_peaks=True, *, nu=NU_DEFAULT,
                    dispersion=DEFAULT_DISPERSION, threshold=PEAK_THRESHOLD,
                    resolution=PEAK_RESOLUTION_NM, min_prominence=PEAK_MIN_PROMINENCE, workers=1):
    """Reflection coefficient on a uniform wavelength grid, with peak detection.

    Interior local maxima of ``R`` standing at least ``min_prominence``
    decades above their surroundings are reported.  With
    ``refine_peaks`` each one is re-bracketed by golden-section search down
    to ``resolution`` (nm).  Peaks whose refined height exceeds ``threshold``
    are ``"singularity-candidate"`` and are refined further, to the limit of
    double precision; the rest are ``"resonance"``.  Without refinement every
    peak is reported at its grid point and classified by the same threshold.

    Grid chunks have a fixed size, so results do not depend on ``workers``.
    """
    lo, hi = window
    if not 0 < lo < hi:
        raise ValueError("window must be positive and ordered")
    if grid < 2:
        raise ValueError("grid must have at least two points")
    geom = SphereGeometry(a, nu)
    kappa0 = kappa0_from_gain(g0, medium.lambda0)
    lam = np.linspace(lo, hi, grid)
    chunks = [lam[i:i + SCAN_CHUNK] for i in range(0, grid, SCAN_CHUNK)]
    run = partial(_scan_chunk, medium=medium, geom=geom, kappa0=kappa0, dispersion=dispersion)
    amps = _map(run, chunks, workers)
    amp = np.concatenate(amps)
    R = np.abs(amp) ** 2
    ok = np.isfinite(R)
    lam, amp, R = lam[ok], amp[ok], R[ok]
    samples = [ReflectionSample(float(l), complex(c), float(r)) for l, c, r in zip(lam, amp, R)]

    def R_at(x):
        n = complex_index(x, medium, kappa0, dispersion)
        num, den = _amplitude_terms(n, geom, x)
        return abs(num / den) ** 2 if den != 0 else math.inf

    peaks = []
    if len(R) >= 3:
        interior, _ = signal.find_peaks(np.log10(R), prominence=min_prominence)
    else:
        interior = []
    for i in interior:
        if not refine_peaks:
            cls = "singularity-candidate" if R[i] > threshold else "resonance"
            peaks.append(Peak(float(lam[i]), float(R[i]), cls))
            continue
        bracket = (float(lam[i - 1]), float(lam[i]), float(lam[i + 1]))
        peak_lam = _golden_max(R_at, bracket, resolution)
        peak_R = R_at(peak_lam)
        if peak_R > threshold:
            # keep refining to double-precision resolution; a true singularity keeps growing
            fine_lam = _golden_max(R_at, bracket, 0.0)
            fine_R = R_at(fine_lam)
            if fine_R > peak_R:
                peak_lam, peak_R = fine_lam, fine_R
            peaks.append(Peak(peak_lam, float(peak_R), "singularity-candidate"))
        else:
            peaks.append(Peak(peak_lam, float(peak_R), "resonance"))
    return ScanResult(samples, peaks)


def _golden_max(fn, bracket, xtol):
    """Golden-section search for the maximum of ``fn`` inside ``bracket``."""
    a, b, c = bracket

    def neg_log(x):
        v = fn(x)
        return -math.log(v) if v > 0 else math.inf

    try:
        res = optimize.minimize_scalar(
            neg_log, bracket=(a, b, c), method="golden",
            options={"xtol": max(xtol / abs(b), 4 * np.finfo(float).eps)},
        )
    except ValueError:
        # flat top at double precision: the grid point is as good as it gets
        return b
    return float(min(max(res.x, a), c))


def first_critical_gain(medium, a, nu=NU_DEFAULT, *, dispersion=DEFAULT_DISPERSION):
    """Exact gain and wavelength of the lowest-threshold singularity, or None."""
    seeds = seed_modes(medium, a, nu, dispersion=dispersion)
    if not seeds:
        return None
    return refine_mode(seeds[0], medium, a, nu, dispersion=dispersion)
