"""
Spherical Bessel functions of order sqrt(5)/2
=============================================

Two evaluation branches cover the whole argument range: a power series
for small arguments and a large-argument expansion beyond ``|z| = 30``.
This script compares them where both are valid and checks the Wronskian
far out, where only the expansion is usable.
"""
# %%
import numpy as np

from spectral_sphere.specfun import (
    NU_DEFAULT,
    sph_bessel_asym,
    sph_bessel_series,
    sph_family,
)

nu = NU_DEFAULT
print(f"order nu = {nu:.12f}")

# %%
# Both branches on the overlap window, including complex arguments.
for z in (30.5, 37.0 + 1.5j, 44.0 - 2.0j):
    s = sph_bessel_series(nu, z)
    a = sph_bessel_asym("J", nu, z)
    print(f"z = {z!s:>12}  series {s:.15f}  asym {a:.15f}  rel diff {abs(a - s) / abs(s):.1e}")

# %%
# Wronskian j y' - j' y = 1/z^2, derivatives from the three-term recursion.
for z in np.geomspace(0.5, 1e5, 8) - 0.8j:
    j, y = sph_family("J", nu, z), sph_family("Y", nu, z)
    w = (j.center * y.derivative - j.derivative * y.center) * z**2
    print(f"|z| = {abs(z):10.3f}  z^2 W = {w.real:+.15f}{w.imag:+.1e}j")
