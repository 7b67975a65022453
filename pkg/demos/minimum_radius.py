"""
Smallest sphere that can reach threshold
========================================

A sphere lases only if some integer mode fits close enough to the gain
line for its threshold to stay under the gain cap.  Letting the mode sit
exactly on the line gives a closed-form lower bound; the integer search
then finds the actual minimum.
"""
# %%
from spectral_sphere import PRESETS, min_radius
from spectral_sphere.units import NM_PER_MM, NM_PER_UM

for name, unit, scale in (("rose-bengal-dmso", "mm", NM_PER_MM), ("diode", "um", NM_PER_UM)):
    medium = PRESETS[name]
    res = min_radius(medium)
    print(f"{name}: a_min = {res.radius / scale:.7f} {unit} (mode {res.m}, {res.wavelength:.4f} nm), "
          f"bound {res.envelope / scale:.7f} {unit}")

# %%
# Threshold gain scales as 1/a, so doubling the cap roughly halves a_min.
dye = PRESETS["rose-bengal-dmso"]
for cap in (5, 10, 20, 40):
    print(f"g0_max = {cap:>2} /cm  ->  a_min = {min_radius(dye, g0_max=cap).radius / NM_PER_MM:.6f} mm")
