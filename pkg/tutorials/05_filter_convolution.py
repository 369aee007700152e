"""
What scanned filters do to the measured spectrum
================================================

A JSI measured by scanning two 0.56 nm bandpass filters is the true JSI
blurred along each axis. The blur makes the spectrum rounder, so the
apparent purity goes up, and widens the marginals roughly in quadrature.
"""

from purephoton.dispersion import default_crystal
from purephoton.instrument import (
    FilterSpec,
    comparison_report,
    convolve_jsi,
    fwhm,
    marginal,
    quadrature_fwhm,
)
from purephoton.jsa import PumpSpec, build_jsi, default_grid
from purephoton.scan import optimize_pump_bandwidth
from purephoton.schmidt import decompose

crystal = default_crystal()
crystal = crystal.with_poling_period(crystal.period_um)
sigma = optimize_pump_bandwidth(crystal, 1584.0, "p_jsi").bandwidth

purity_rows, width_rows = [], []
for lam in (1565.0, 1584.0, 1615.0):
    pump = PumpSpec(lam / 2, sigma)
    jsi = build_jsi(crystal, pump, default_grid(crystal, pump))
    cs, ci = jsi.grid.center
    conv = convolve_jsi(jsi, FilterSpec(cs, 0.56), FilterSpec(ci, 0.56))
    purity_rows.append({
        "label": f"{lam:g} nm",
        "theoretical": decompose(jsi).purity,
        "convolved": decompose(conv).purity,
    })
    for axis in ("signal", "idler"):
        the = fwhm(marginal(jsi, axis))
        width_rows.append({
            "label": f"{lam:g} nm {axis}",
            "theoretical": the,
            "quadrature": quadrature_fwhm(the, 0.56),
            "convolved": fwhm(marginal(conv, axis)),
        })

# %%
for row in comparison_report(purity_rows)["rows"]:
    print(f"{row['label']:>8}  P_JSI {row['theoretical']:.4f} -> {row['convolved']:.4f}")

# %%
for row in width_rows:
    print(f"{row['label']:>15}  {row['theoretical']:.3f} nm  "
          f"quadrature {row['quadrature']:.3f}  2-D {row['convolved']:.3f}")
