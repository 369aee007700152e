"""Pump-bandwidth optimization and wavelength tunability sweeps."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .dispersion import CrystalConfig, tilt_angle
from .errors import ConfigError, OptimizationError
from .instrument import fwhm, marginal
from .jsa import PumpSpec, build_jsa, default_grid, matched_bandwidth
from .schmidt import decompose

__all__ = [
    "OBJECTIVES",
    "OptimizationResult",
    "SweepRow",
    "golden_section_maximize",
    "optimize_pump_bandwidth",
    "point_row",
    "wavelength_sweep",
    "sweep_wavelengths",
]

OBJECTIVES = ("p_jsi", "p_jsa")
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_maximize(f, lo, hi, tol=1e-6, max_iter=500):
    """Maximize a unimodal function on [lo, hi] to an interval width ``tol``.

    Returns ``(x, f(x), evaluations)``.
    """
    a, b = float(lo), float(hi)
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    n = 2
    while abs(b - a) > tol and n < max_iter:
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = f(x2)
        n += 1
    if f1 >= f2:
        return x1, f1, n
    return x2, f2, n


@dataclass(frozen=True)
class OptimizationResult:
    bandwidth: float
    purity: float
    objective: str
    bracket: tuple[float, float]
    evaluations: int


def _check_objective(objective):
    if objective not in OBJECTIVES:
        raise ConfigError(f"objective must be one of {OBJECTIVES}, got {objective!r}")


def _crystal_for(config: CrystalConfig, wavelength_nm: float) -> CrystalConfig:
    if config.poling_period_um is None:
        return config.matched(wavelength_nm)
    return config


def optimize_pump_bandwidth(
    config: CrystalConfig,
    wavelength_nm: float,
    objective: str = "p_jsi",
    points: int = 256,
    span_widths: float = 8.0,
    rtol: float = 1e-4,
    max_expansions: int = 6,
) -> OptimizationResult:
    """Pump sigma_p maximizing P_JSI or P_JSA at a degenerate wavelength.

    The grid is fixed for the whole search. A coarse log-spaced scan
    brackets the maximum (expanding outward if it sits on an end), then
    golden-section search refines it to relative tolerance ``rtol``.

    Raises:
        OptimizationError: no interior maximum after ``max_expansions``.
    """
    _check_objective(objective)
    crystal = _crystal_for(config, wavelength_nm)
    guess = matched_bandwidth(crystal, wavelength_nm)
    pump = PumpSpec(wavelength_nm / 2.0, guess)
    grid = default_grid(crystal, pump, points, span_widths).to_frequency()

    evaluations = 0

    def score(log_sigma):
        nonlocal evaluations
        evaluations += 1
        spec = build_jsa(crystal, pump.with_bandwidth(math.exp(log_sigma)), grid)
        if objective == "p_jsi":
            spec = spec.intensity()
        return decompose(spec).purity

    lo, hi = math.log(guess / 3.0), math.log(guess * 3.0)
    for _ in range(max_expansions + 1):
        xs = np.linspace(lo, hi, 9)
        ys = [score(x) for x in xs]
        k = int(np.argmax(ys))
        if 0 < k < len(xs) - 1:
            break
        width = hi - lo
        if k == 0:
            lo, hi = lo - width, xs[1]
        else:
            lo, hi = xs[-2], hi + width
    else:
        raise OptimizationError(
            f"no interior maximum of {objective} in sigma_p bracket "
            f"[{math.exp(lo):.4g}, {math.exp(hi):.4g}] rad/ps at {wavelength_nm} nm "
            f"after {max_expansions} expansions"
        )
    bracket = (xs[k - 1], xs[k + 1])
    x, best, _ = golden_section_maximize(score, *bracket, tol=rtol)
    return OptimizationResult(
        bandwidth=math.exp(x),
        purity=float(best),
        objective=objective,
        bracket=(math.exp(bracket[0]), math.exp(bracket[1])),
        evaluations=evaluations,
    )


@dataclass(frozen=True)
class SweepRow:
    lambda_nm: float
    poling_um: float
    tilt_deg: float
    p_jsi: float
    p_jsa: float
    fwhm_s_nm: float
    fwhm_i_nm: float

    def as_dict(self) -> dict:
        return asdict(self)


def point_row(
    crystal: CrystalConfig,
    wavelength_nm: float,
    bandwidth_jsi: float,
    bandwidth_jsa: float,
    points: int = 256,
    span_widths: float = 8.0,
) -> SweepRow:
    """Purities and marginal widths for one degenerate wavelength.

    The pump sits at half ``wavelength_nm``; the grid is centred on the
    phase-matched point of ``crystal`` (exactly degenerate only when the
    poling period was solved at this wavelength).
    """
    pump_jsi = PumpSpec(wavelength_nm / 2.0, bandwidth_jsi)
    grid = default_grid(crystal, pump_jsi, points, span_widths)
    fgrid = grid.to_frequency()
    p_jsi = decompose(build_jsa(crystal, pump_jsi, fgrid).intensity()).purity
    p_jsa = decompose(build_jsa(crystal, pump_jsi.with_bandwidth(bandwidth_jsa), fgrid)).purity
    jsi = build_jsa(crystal, pump_jsi, grid).intensity()
    return SweepRow(
        lambda_nm=float(wavelength_nm),
        poling_um=float(crystal.period_um),
        tilt_deg=tilt_angle(crystal, wavelength_nm),
        p_jsi=p_jsi,
        p_jsa=p_jsa,
        fwhm_s_nm=fwhm(marginal(jsi, "signal")),
        fwhm_i_nm=fwhm(marginal(jsi, "idler")),
    )


def sweep_wavelengths(start_nm: float, stop_nm: float, step_nm: float) -> np.ndarray:
    """Inclusive, evenly stepped wavelength list."""
    if not step_nm > 0 or stop_nm < start_nm:
        raise ConfigError(f"invalid sweep range {start_nm}..{stop_nm} step {step_nm}")
    count = int(math.floor((stop_nm - start_nm) / step_nm + 1e-9)) + 1
    return start_nm + step_nm * np.arange(count)


def wavelength_sweep(
    config: CrystalConfig,
    start_nm: float,
    stop_nm: float,
    step_nm: float,
    bandwidth_jsi: float,
    bandwidth_jsa: float,
    resolve_poling: bool = False,
    points: int = 256,
    span_widths: float = 8.0,
    workers: int = 1,
) -> list[SweepRow]:
    """Purity and bandwidth versus degenerate wavelength.

    By default one crystal is used throughout (period fixed, solved at
    ``config.degenerate_wavelength_nm`` if unset) and only the pump is
    tuned; ``resolve_poling`` re-solves the period at every wavelength.
    Rows come back in wavelength order regardless of ``workers``.
    """
    fixed = config.with_poling_period(config.period_um)
    lams = sweep_wavelengths(start_nm, stop_nm, step_nm)

    def row(lam):
        crystal = config.matched(lam) if resolve_poling else fixed
        return point_row(crystal, float(lam), bandwidth_jsi, bandwidth_jsa, points, span_widths)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(row, lams))
    return [row(lam) for lam in lams]
