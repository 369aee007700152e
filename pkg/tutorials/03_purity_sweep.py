"""
Purity across the telecom band
==============================

One crystal, period fixed at its 1584 nm value, pump wavelength tuned so
that signal and idler stay degenerate. The pump bandwidths are fixed at
their 1584 nm optima, one per purity measure.
"""

from pathlib import Path

from purephoton.dispersion import default_crystal
from purephoton.io import sweep_to_csv
from purephoton.scan import optimize_pump_bandwidth, wavelength_sweep
from purephoton.svg import line_chart_svg

crystal = default_crystal()
crystal = crystal.with_poling_period(crystal.period_um)

s_jsi = optimize_pump_bandwidth(crystal, 1584.0, "p_jsi").bandwidth
s_jsa = optimize_pump_bandwidth(crystal, 1584.0, "p_jsa").bandwidth
rows = wavelength_sweep(crystal, 1460.0, 1675.0, 5.0, s_jsi, s_jsa, workers=4)

# %%
for r in rows[::6]:
    print(f"{r.lambda_nm:6.0f} nm  P_JSI {r.p_jsi:.4f}  P_JSA {r.p_jsa:.4f}  "
          f"angle {r.tilt_deg:5.2f} deg")

print(f"P_JSI range: {min(r.p_jsi for r in rows):.4f} .. {max(r.p_jsi for r in rows):.4f}")
print(f"P_JSA range: {min(r.p_jsa for r in rows):.4f} .. {max(r.p_jsa for r in rows):.4f}")

# %%
# The same sweep with the period re-solved at each wavelength.
ideal = wavelength_sweep(crystal, 1460.0, 1675.0, 25.0, s_jsi, s_jsa, resolve_poling=True)
for r in ideal:
    print(f"{r.lambda_nm:6.0f} nm  period {r.poling_um:.3f} um  P_JSI {r.p_jsi:.4f}")

# %%
Path("sweep.csv").write_text(sweep_to_csv(rows))
Path("sweep.svg").write_text(line_chart_svg(
    [r.lambda_nm for r in rows],
    {"P_JSI": [r.p_jsi for r in rows], "P_JSA": [r.p_jsa for r in rows]},
    "purity vs wavelength", ylabel="purity",
))
