"""Measurement-chain model: scanned bandpass filters and coincidence grids.

A JSI measured by scanning two narrowband filters is the true JSI
convolved with each filter's transmission along its own axis. Filters are
Gaussian in wavelength.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError, DegenerateInputError, ResolutionError, SpanError
from .jsa import JointSpectrum, SpectralGrid
from .schmidt import SchmidtResult, decompose

__all__ = [
    "FilterSpec",
    "Distribution",
    "MeasuredGrid",
    "MeasuredReport",
    "convolve_jsi",
    "marginal",
    "fwhm",
    "quadrature_fwhm",
    "analyze_measured",
    "synthetic_measurement",
    "comparison_report",
]

FWHM_PER_SIGMA = 2.0 * math.sqrt(2.0 * math.log(2.0))


@dataclass(frozen=True)
class FilterSpec:
    """Gaussian bandpass filter; the centre is the scan origin."""

    center_nm: float
    fwhm_nm: float
    shape: str = "gaussian"

    def __post_init__(self):
        if not self.fwhm_nm > 0:
            raise ContractError(f"filter FWHM must be positive, got {self.fwhm_nm}")
        if self.shape != "gaussian":
            raise ContractError(f"only Gaussian filters are modelled, got {self.shape!r}")

    @property
    def sigma_nm(self) -> float:
        return self.fwhm_nm / FWHM_PER_SIGMA

    def transmission(self, wavelength_nm):
        x = (np.asarray(wavelength_nm, dtype=float) - self.center_nm) / self.sigma_nm
        return np.exp(-0.5 * x**2)

    def to_dict(self) -> dict:
        return {"center_nm": self.center_nm, "fwhm_nm": self.fwhm_nm, "shape": self.shape}

    @classmethod
    def from_dict(cls, doc) -> "FilterSpec":
        return cls(float(doc["center_nm"]), float(doc["fwhm_nm"]), doc.get("shape", "gaussian"))


@dataclass(frozen=True)
class Distribution:
    """One-dimensional sampled distribution."""

    x: np.ndarray
    values: np.ndarray

    def integral(self) -> float:
        step = (self.x[-1] - self.x[0]) / (self.x.size - 1)
        return float(np.sum(self.values) * step)


def _kernel_matrix(axis: np.ndarray, sigma: float) -> np.ndarray:
    d = (axis[:, None] - axis[None, :]) / sigma
    k = np.exp(-0.5 * d**2)
    # truncated at the edges, each output cell renormalized to unit kernel mass
    return k / k.sum(axis=1, keepdims=True)


def convolve_jsi(
    spectrum: JointSpectrum, f_s: FilterSpec, f_i: FilterSpec, renormalize: bool = True
) -> JointSpectrum:
    """JSI as seen through two scanned Gaussian filters.

    Separable convolution, signal axis with ``f_s`` and idler axis with
    ``f_i``. Near the grid edges the kernel is truncated and renormalized.

    Raises:
        ContractError: spectrum is not a wavelength-grid JSI.
        ResolutionError: a filter FWHM is below two grid steps.
    """
    if spectrum.kind != "JSI":
        raise ContractError("convolve_jsi expects a JSI")
    grid = spectrum.grid
    if grid.is_frequency:
        raise ContractError("filter convolution needs a wavelength grid (unit 'nm')")
    for name, filt, step in (
        ("signal", f_s, grid.step_signal),
        ("idler", f_i, grid.step_idler),
    ):
        if filt.fwhm_nm < 2 * step:
            raise ResolutionError(
                f"{name} filter FWHM {filt.fwhm_nm} nm is below twice the grid step "
                f"({step:.4g} nm); use a grid step of at most {filt.fwhm_nm / 2:.4g} nm"
            )
    ks = _kernel_matrix(grid.signal, f_s.sigma_nm)
    ki = _kernel_matrix(grid.idler, f_i.sigma_nm)
    out = ks @ spectrum.values @ ki.T
    out = np.clip(out, 0.0, None)
    result = JointSpectrum(grid, out, "JSI")
    return result.normalize() if renormalize else result


def marginal(spectrum: JointSpectrum, axis: str) -> Distribution:
    """Marginal intensity along ``axis`` ("signal" or "idler")."""
    dens = spectrum.density
    grid = spectrum.grid
    if axis == "signal":
        return Distribution(grid.signal, dens.sum(axis=1) * grid.step_idler)
    if axis == "idler":
        return Distribution(grid.idler, dens.sum(axis=0) * grid.step_signal)
    raise ContractError(f"axis must be 'signal' or 'idler', got {axis!r}")


def fwhm(distribution: Distribution | tuple) -> float:
    """Full width at half maximum by linear interpolation of the crossings.

    Walks outward from the highest sample to the first samples below half
    maximum on each side.

    Raises:
        SpanError: a half-maximum crossing lies outside the sampled range.
    """
    if isinstance(distribution, Distribution):
        x, y = distribution.x, distribution.values
    else:
        x, y = (np.asarray(a, dtype=float) for a in distribution)
    peak = int(np.argmax(y))
    half = y[peak] / 2.0
    if not half > 0:
        raise SpanError("distribution has no positive maximum")
    below = np.nonzero(y[:peak] < half)[0]
    if below.size == 0:
        raise SpanError("half maximum not reached on the low side of the grid")
    lo = below[-1]
    above = np.nonzero(y[peak:] < half)[0]
    if above.size == 0:
        raise SpanError("half maximum not reached on the high side of the grid")
    hi = peak + above[0]
    left = x[lo] + (half - y[lo]) * (x[lo + 1] - x[lo]) / (y[lo + 1] - y[lo])
    right = x[hi - 1] + (half - y[hi - 1]) * (x[hi] - x[hi - 1]) / (y[hi] - y[hi - 1])
    return float(right - left)


def quadrature_fwhm(theoretical_fwhm: float, filter_fwhm: float) -> float:
    """Width of a Gaussian spectrum seen through a Gaussian filter."""
    return math.hypot(theoretical_fwhm, filter_fwhm)


@dataclass(frozen=True)
class MeasuredGrid:
    """Coincidence counts from a two-filter scan."""

    grid: SpectralGrid
    counts: np.ndarray
    dwell_s: float
    filters: tuple[FilterSpec, ...] = field(default_factory=tuple)

    def __post_init__(self):
        counts = np.asarray(self.counts)
        if counts.shape != self.grid.shape:
            raise ContractError(
                f"counts shape {counts.shape} does not match grid {self.grid.shape}"
            )
        if np.any(counts < 0):
            raise ContractError("coincidence counts must be non-negative")
        if not self.dwell_s > 0:
            raise ContractError(f"dwell time must be positive, got {self.dwell_s}")
        if self.grid.is_frequency:
            raise ContractError("measured grids are sampled in wavelength")
        object.__setattr__(self, "counts", counts)


@dataclass(frozen=True)
class MeasuredReport:
    p_jsi: float
    schmidt: SchmidtResult
    fwhm_signal_nm: float
    fwhm_idler_nm: float
    peak_rate_cps: float
    marginal_signal: Distribution
    marginal_idler: Distribution

    def to_dict(self) -> dict:
        return {
            "p_jsi": self.p_jsi,
            "schmidt_number": self.schmidt.schmidt_number,
            "fwhm_signal_nm": self.fwhm_signal_nm,
            "fwhm_idler_nm": self.fwhm_idler_nm,
            "peak_rate_cps": self.peak_rate_cps,
        }


def analyze_measured(measured: MeasuredGrid) -> MeasuredReport:
    """P_JSI, marginal widths and peak coincidence rate of a measured grid."""
    ns, ni = measured.grid.shape
    if ns < 16 or ni < 16:
        raise ContractError(f"measured grid must be at least 16x16, got {ns}x{ni}")
    counts = measured.counts.astype(float)
    if not counts.sum() > 0:
        raise DegenerateInputError("measured grid has no coincidences")
    jsi = JointSpectrum(measured.grid, counts, "JSI").normalize()
    result = decompose(jsi)
    ms, mi = marginal(jsi, "signal"), marginal(jsi, "idler")
    return MeasuredReport(
        p_jsi=result.purity,
        schmidt=result,
        fwhm_signal_nm=fwhm(ms),
        fwhm_idler_nm=fwhm(mi),
        peak_rate_cps=float(counts.max() / measured.dwell_s),
        marginal_signal=ms,
        marginal_idler=mi,
    )


def synthetic_measurement(
    spectrum: JointSpectrum,
    peak_counts: float = 10000.0,
    dwell_s: float = 10.0,
    background_fraction: float = 0.0,
    filters: tuple[FilterSpec, ...] = (),
    rounding: bool = False,
) -> MeasuredGrid:
    """Noise-free coincidence grid proportional to ``spectrum``.

    ``background_fraction`` adds a uniform floor as a fraction of the peak.
    Counts stay fractional unless ``rounding`` is set.
    """
    dens = spectrum.density
    counts = dens / dens.max() * peak_counts
    counts = counts + background_fraction * peak_counts
    if rounding:
        counts = np.rint(counts).astype(np.int64)
    return MeasuredGrid(spectrum.grid, counts, dwell_s, tuple(filters))


def comparison_report(rows: list[dict]) -> dict:
    """Theory/convolved/measured comparison in the layout of a results table.

    Each row carries ``label`` and any of ``theoretical``, ``convolved``,
    ``measured``; the difference is |convolved - measured| when both exist.
    """
    out = []
    for row in rows:
        entry = dict(row)
        if entry.get("convolved") is not None and entry.get("measured") is not None:
            entry["difference"] = abs(entry["convolved"] - entry["measured"])
        out.append(entry)
    return {"rows": out}
