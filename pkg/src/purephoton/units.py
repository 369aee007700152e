"""Unit conventions and wavelength/frequency conversions.

Internally wavelengths are in micrometres (dispersion) or nanometres
(grids), angular frequencies in rad/ps, lengths in micrometres.
"""

import numpy as np

#: Speed of light in vacuum, exact, in um/ps.
C_UM_PER_PS = 299.792458
#: Speed of light in vacuum, exact, in nm/ps.
C_NM_PER_PS = 299792.458


def nm_to_omega(wavelength_nm):
    """Vacuum wavelength (nm) to angular frequency (rad/ps)."""
    return 2.0 * np.pi * C_NM_PER_PS / np.asarray(wavelength_nm, dtype=float)


def omega_to_nm(omega):
    """Angular frequency (rad/ps) to vacuum wavelength (nm)."""
    return 2.0 * np.pi * C_NM_PER_PS / np.asarray(omega, dtype=float)


def omega_to_um(omega):
    """Angular frequency (rad/ps) to vacuum wavelength (um)."""
    return 2.0 * np.pi * C_UM_PER_PS / np.asarray(omega, dtype=float)


def dnm_per_domega(wavelength_nm):
    """|d lambda / d omega| in nm per (rad/ps) at the given wavelength."""
    lam = np.asarray(wavelength_nm, dtype=float)
    return lam**2 / (2.0 * np.pi * C_NM_PER_PS)
