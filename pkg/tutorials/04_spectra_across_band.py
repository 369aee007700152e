"""
Joint spectra at four wavelengths
=================================

As the pump is tuned away from 1584 nm the ridge tilt drifts slowly and
the joint spectrum stays a single, nearly round lobe.
"""

from pathlib import Path

from purephoton.dispersion import default_crystal, tilt_angle
from purephoton.instrument import fwhm, marginal
from purephoton.jsa import PumpSpec, build_jsi, default_grid
from purephoton.scan import optimize_pump_bandwidth
from purephoton.schmidt import decompose
from purephoton.svg import heatmap_svg

crystal = default_crystal()
crystal = crystal.with_poling_period(crystal.period_um)
sigma = optimize_pump_bandwidth(crystal, 1584.0, "p_jsi").bandwidth

for lam in (1500.0, 1550.0, 1600.0, 1650.0):
    pump = PumpSpec(lam / 2, sigma)
    grid = default_grid(crystal, pump)
    jsi = build_jsi(crystal, pump, grid)
    p = decompose(build_jsi(crystal, pump, grid.to_frequency())).purity
    fs, fi = fwhm(marginal(jsi, "signal")), fwhm(marginal(jsi, "idler"))
    print(f"{lam:6.0f} nm  angle {tilt_angle(crystal, lam):5.2f} deg  "
          f"P_JSI {p:.4f}  FWHM {fs:.3f} / {fi:.3f} nm")
    Path(f"jsi_{lam:.0f}.svg").write_text(
        heatmap_svg(jsi.values, grid.signal, grid.idler, f"JSI at {lam:.0f} nm")
    )
