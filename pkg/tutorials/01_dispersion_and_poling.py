"""
Dispersion, poling period and ridge angle
=========================================

A 30 mm PPKTP crystal pumped near 792 nm with a y-polarized signal and a
z-polarized idler. We look at the refractive indices, the group indices
and the poling period that makes 1584 nm degenerate.
"""

import numpy as np

from purephoton.dispersion import (
    default_crystal,
    group_index,
    refractive_index,
    tilt_angle,
)

crystal = default_crystal()

# %%
# Indices at the pump and at the degenerate wavelength (micrometres in).
for name, coeffs, lam in (
    ("pump  (y)", crystal.pump, 0.792),
    ("signal(y)", crystal.signal, 1.584),
    ("idler (z)", crystal.idler, 1.584),
):
    print(f"{name} n = {refractive_index(coeffs, lam):.6f}  n_g = {group_index(coeffs, lam):.6f}")

# %%
# The pump group index sits between signal and idler: that is what lets
# the phase-matching ridge tilt to roughly 45 degrees.
print(f"poling period at 1584 nm: {crystal.period_um:.3f} um")
print(f"ridge angle at 1584 nm:   {tilt_angle(crystal, 1584.0):.2f} deg")

# %%
# Re-solving the period across the band. It is stationary where the
# group-velocity condition 2 k'_p = k'_s + k'_i is met.
for lam in np.arange(1460.0, 1680.0, 30.0):
    c = crystal.matched(lam)
    print(f"{lam:6.0f} nm  period {c.period_um:8.4f} um  angle {tilt_angle(c, lam):6.2f} deg")
