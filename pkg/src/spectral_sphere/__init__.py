"""Spectral singularities of a spherical gain medium.

Spherical Bessel/Hankel functions of non-integer order, the reflection
amplitude of a complex-index sphere, perturbative and exact threshold
modes, and reflection spectra.
"""
from .errors import (
    AccuracyLossError,
    CatalogError,
    ConvergenceError,
    DispersionBranchError,
    LogDerivativePoleError,
    ModeJumpError,
    NoConvergenceError,
    SingularDenominatorError,
    SpectralSphereError,
)
from .gainmodel import (
    PRESETS,
    GainMediumSpec,
    GainState,
    complex_index,
    dispersion_index,
    gain_for_mode,
    kappa0_from_gain,
    min_radius,
    mode_wavelength,
)
from .perturbation import ModeSeed, kappa_of_eta_m, mode_seed, tan_condition_residual, x_of_eta_kappa
from .scattering import (
    RefractiveIndex,
    SphereGeometry,
    reflection_amplitude,
    reflection_coefficient,
    singularity_residual,
)
from .solver import (
    ModeSolution,
    ScanResult,
    enumerate_singularities,
    first_critical_gain,
    reflection_scan,
    refine_mode,
    seed_modes,
)
from .specfun import NU_DEFAULT, coeff_A, sph_bessel_asym, sph_bessel_series, sph_derivative, sph_eval
from .units import parse_length

__version__ = "0.1.0"
