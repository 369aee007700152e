"""Joint spectral amplitude and intensity on a discretized signal x idler grid.

The two-photon amplitude is the product of a Gaussian pump envelope
(a function of omega_s + omega_i only) and a sinc phase-matching function:

    f(ws, wi) = sinc(dk(ws, wi) L / 2) * exp(-((ws + wi - wp) / sigma_p)^2 / 2)

so that |f|^2 carries the intensity envelope exp(-((ws + wi - wp)/sigma_p)^2).
Both factors are real; no pump chirp is modelled.

Rows of every matrix index the signal axis, columns the idler axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from .dispersion import CrystalConfig, delta_k, inverse_group_velocity
from .errors import (
    ConfigError,
    ContractError,
    DegenerateInputError,
    DomainError,
    NoPhysicalSolutionError,
)
from .units import dnm_per_domega, nm_to_omega, omega_to_nm

__all__ = [
    "PumpSpec",
    "SpectralGrid",
    "JointSpectrum",
    "sigma_from_duration",
    "duration_from_sigma",
    "sinc",
    "pump_envelope",
    "phase_matching",
    "build_jsa",
    "build_jsi",
    "phase_matched_center",
    "matched_bandwidth",
    "gaussian_marginal_fwhm",
    "default_grid",
    "resample_to_frequency",
]

#: Half-maximum abscissa of sinc^2, i.e. sin(x)/x = 1/sqrt(2).
SINC2_HALF_MAX = 1.3915573782515103
#: sinc(x) ~ exp(-GAMMA x^2) with the same intensity FWHM.
SINC_GAUSS_GAMMA = math.log(2.0) / (2.0 * SINC2_HALF_MAX**2)

MIN_POINTS = 16
_UNITS = ("nm", "rad/ps")


@dataclass(frozen=True)
class PumpSpec:
    """Gaussian pump.

    Attributes:
        wavelength_nm: Central vacuum wavelength.
        bandwidth: sigma_p in rad/ps, the 1/e half-width of the pump
            intensity spectrum in omega_s + omega_i.
    """

    wavelength_nm: float
    bandwidth: float

    def __post_init__(self):
        if not self.wavelength_nm > 0:
            raise ConfigError(f"pump wavelength must be positive, got {self.wavelength_nm}")
        if not self.bandwidth > 0:
            raise ConfigError(f"pump bandwidth must be positive, got {self.bandwidth}")

    @property
    def omega(self) -> float:
        return float(nm_to_omega(self.wavelength_nm))

    def with_bandwidth(self, bandwidth: float) -> "PumpSpec":
        return replace(self, bandwidth=bandwidth)


def sigma_from_duration(fwhm_ps: float) -> float:
    """sigma_p for a transform-limited Gaussian pulse of given intensity FWHM.

    Uses the Gaussian time-bandwidth product dnu * dt = 2 ln2 / pi, i.e.
    d_omega_FWHM = 4 ln2 / dt, and d_omega_FWHM = 2 sqrt(ln2) sigma_p.
    """
    if not fwhm_ps > 0:
        raise ConfigError(f"pulse duration must be positive, got {fwhm_ps}")
    return 2.0 * math.sqrt(math.log(2.0)) / fwhm_ps


def duration_from_sigma(sigma: float) -> float:
    """Inverse of :func:`sigma_from_duration`."""
    return 2.0 * math.sqrt(math.log(2.0)) / sigma


def _as_axis(values, name):
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise ContractError(f"{name} axis must be one-dimensional")
    if arr.size < MIN_POINTS:
        raise ContractError(f"{name} axis needs at least {MIN_POINTS} points, got {arr.size}")
    d = np.diff(arr)
    if not np.all(d > 0):
        raise ContractError(f"{name} axis must be strictly increasing")
    step = (arr[-1] - arr[0]) / (arr.size - 1)
    if np.max(np.abs(d - step)) > 1e-9 * abs(step):
        raise ContractError(f"{name} axis is not uniformly spaced")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SpectralGrid:
    """Rectangular signal x idler sampling grid.

    Axes are uniform and strictly increasing, either in vacuum wavelength
    (``unit="nm"``) or in angular frequency (``unit="rad/ps"``).
    """

    signal: np.ndarray
    idler: np.ndarray
    unit: str = "nm"

    def __post_init__(self):
        if self.unit not in _UNITS:
            raise ContractError(f"grid unit must be one of {_UNITS}, got {self.unit!r}")
        object.__setattr__(self, "signal", _as_axis(self.signal, "signal"))
        object.__setattr__(self, "idler", _as_axis(self.idler, "idler"))

    @classmethod
    def centered(cls, signal_center, idler_center, half_span, points=256, unit="nm"):
        """Grid of ``points`` x ``points`` samples spanning center +/- half_span."""
        if np.isscalar(half_span):
            half_span = (half_span, half_span)
        return cls(
            np.linspace(signal_center - half_span[0], signal_center + half_span[0], points),
            np.linspace(idler_center - half_span[1], idler_center + half_span[1], points),
            unit,
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.signal.size, self.idler.size)

    @property
    def step_signal(self) -> float:
        return float((self.signal[-1] - self.signal[0]) / (self.signal.size - 1))

    @property
    def step_idler(self) -> float:
        return float((self.idler[-1] - self.idler[0]) / (self.idler.size - 1))

    @property
    def cell_area(self) -> float:
        return self.step_signal * self.step_idler

    @property
    def center(self) -> tuple[float, float]:
        return (
            float((self.signal[0] + self.signal[-1]) / 2),
            float((self.idler[0] + self.idler[-1]) / 2),
        )

    @property
    def is_frequency(self) -> bool:
        return self.unit == "rad/ps"

    def omega_axes(self) -> tuple[np.ndarray, np.ndarray]:
        if self.is_frequency:
            return self.signal, self.idler
        return nm_to_omega(self.signal), nm_to_omega(self.idler)

    def wavelength_axes(self) -> tuple[np.ndarray, np.ndarray]:
        if self.is_frequency:
            return omega_to_nm(self.signal), omega_to_nm(self.idler)
        return self.signal, self.idler

    def omega_mesh(self) -> tuple[np.ndarray, np.ndarray]:
        ws, wi = self.omega_axes()
        return np.meshgrid(ws, wi, indexing="ij")

    def to_frequency(self, points: tuple[int, int] | None = None) -> "SpectralGrid":
        """Frequency-uniform grid covering the same omega range."""
        if self.is_frequency and points is None:
            return self
        ws, wi = self.omega_axes()
        ns, ni = points if points is not None else self.shape
        return SpectralGrid(
            np.linspace(ws.min(), ws.max(), ns),
            np.linspace(wi.min(), wi.max(), ni),
            "rad/ps",
        )

    def transposed(self) -> "SpectralGrid":
        return SpectralGrid(self.idler, self.signal, self.unit)

    def __eq__(self, other):
        if not isinstance(other, SpectralGrid):
            return NotImplemented
        return (
            self.unit == other.unit
            and np.array_equal(self.signal, other.signal)
            and np.array_equal(self.idler, other.idler)
        )


@dataclass(frozen=True, eq=False)
class JointSpectrum:
    """Joint spectral amplitude (``kind="JSA"``) or intensity (``"JSI"``).

    When ``normalized`` is set, sum(|values|^2) (JSA) or sum(values) (JSI)
    times the grid cell area equals one.
    """

    grid: SpectralGrid
    values: np.ndarray
    kind: str = "JSI"
    normalized: bool = False

    def __post_init__(self):
        if self.kind not in ("JSA", "JSI"):
            raise ContractError(f"kind must be 'JSA' or 'JSI', got {self.kind!r}")
        vals = np.array(self.values, dtype=complex if np.iscomplexobj(self.values) else float)
        if vals.shape != self.grid.shape:
            raise ContractError(
                f"values shape {vals.shape} does not match grid shape {self.grid.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise ContractError("spectrum contains non-finite values")
        if self.kind == "JSI":
            if np.iscomplexobj(vals):
                raise ContractError("JSI values must be real")
            if np.any(vals < 0):
                raise ContractError("JSI values must be non-negative")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def density(self) -> np.ndarray:
        """Pointwise intensity |f|^2 (JSA) or the values themselves (JSI)."""
        if self.kind == "JSA":
            return np.abs(self.values) ** 2
        return self.values

    def total(self) -> float:
        """Integral of the intensity over the grid."""
        return float(np.sum(self.density) * self.grid.cell_area)

    def normalize(self) -> "JointSpectrum":
        total = self.total()
        if not total > 0:
            raise DegenerateInputError("cannot normalize a spectrum with zero total intensity")
        scale = 1.0 / (math.sqrt(total) if self.kind == "JSA" else total)
        return JointSpectrum(self.grid, self.values * scale, self.kind, True)

    def intensity(self) -> "JointSpectrum":
        """The JSI |f|^2 of a JSA (normalization carries over)."""
        if self.kind == "JSI":
            return self
        return JointSpectrum(self.grid, np.abs(self.values) ** 2, "JSI", self.normalized)

    def transposed(self) -> "JointSpectrum":
        """Signal and idler roles exchanged."""
        return JointSpectrum(self.grid.transposed(), self.values.T, self.kind, self.normalized)


def sinc(x):
    """Unnormalized sinc, sin(x)/x with sinc(0) = 1."""
    return np.sinc(np.asarray(x, dtype=float) / np.pi)


def pump_envelope(pump: PumpSpec, omega_s, omega_i):
    """Pump amplitude alpha(ws + wi), peak 1 at ws + wi = wp."""
    detuning = (np.asarray(omega_s) + np.asarray(omega_i) - pump.omega) / pump.bandwidth
    return np.exp(-0.5 * detuning**2)


def phase_matching(config: CrystalConfig, omega_s, omega_i):
    """Phase-matching amplitude sinc(dk L / 2) with omega_p = omega_s + omega_i."""
    return sinc(delta_k(config, omega_s, omega_i) * config.length_um / 2.0)


def _check_domain(config: CrystalConfig, grid: SpectralGrid, ws, wi):
    lam_s = omega_to_nm(ws) * 1e-3
    lam_i = omega_to_nm(wi) * 1e-3
    lam_p = omega_to_nm(ws + wi) * 1e-3
    bad = np.zeros(ws.shape, dtype=bool)
    for coeffs, lam in ((config.signal, lam_s), (config.idler, lam_i), (config.pump, lam_p)):
        lo, hi = coeffs.valid_um
        bad |= (lam < lo) | (lam > hi)
    if np.any(bad):
        idx = np.argwhere(bad)
        listing = ", ".join(
            f"[{i},{j}] ({lam_s[i, j] * 1e3:.3f} nm, {lam_i[i, j] * 1e3:.3f} nm)"
            for i, j in idx[:5]
        )
        more = f" and {len(idx) - 5} more" if len(idx) > 5 else ""
        raise DomainError(
            f"{len(idx)} grid cells fall outside the dispersion validity windows: "
            f"{listing}{more}"
        )


def build_jsa(config: CrystalConfig, pump: PumpSpec, grid: SpectralGrid) -> JointSpectrum:
    """Normalized joint spectral amplitude sampled on ``grid``.

    Raises:
        DomainError: listing grid cells outside the Sellmeier windows.
    """
    ws, wi = grid.omega_mesh()
    _check_domain(config, grid, ws, wi)
    values = phase_matching(config, ws, wi) * pump_envelope(pump, ws, wi)
    return JointSpectrum(grid, values, "JSA").normalize()


def build_jsi(config: CrystalConfig, pump: PumpSpec, grid: SpectralGrid) -> JointSpectrum:
    """Normalized joint spectral intensity |f|^2 on ``grid``."""
    return build_jsa(config, pump, grid).intensity()


def phase_matched_center(config: CrystalConfig, pump: PumpSpec) -> tuple[float, float]:
    """Signal and idler wavelengths (nm) where dk = 0 on the pump's central line.

    Solves dk(ws, wp - ws) = 0 for the root nearest degeneracy.
    """
    wp = pump.omega

    def mismatch(ws):
        return float(delta_k(config, ws, wp - ws, wp))

    half = wp / 2
    f0 = mismatch(half)
    if f0 == 0.0:
        return float(omega_to_nm(half)), float(omega_to_nm(half))
    step = 1e-3 * half
    for _ in range(60):
        for lo, hi in ((half - step, half), (half, half + step)):
            try:
                flo, fhi = mismatch(lo), mismatch(hi)
            except DomainError:
                continue
            if flo * fhi <= 0:
                ws = brentq(mismatch, lo, hi, xtol=1e-13, rtol=4 * np.finfo(float).eps)
                return float(omega_to_nm(ws)), float(omega_to_nm(wp - ws))
        step *= 1.5
        if step > 0.5 * half:
            break
    raise NoPhysicalSolutionError(
        f"no phase-matched signal/idler pair for a {pump.wavelength_nm} nm pump "
        f"with a {config.period_um:.4f} um poling period"
    )


def _inverse_velocity_offsets(config, lam_s_nm, lam_i_nm):
    lam_p_nm = 1.0 / (1.0 / lam_s_nm + 1.0 / lam_i_nm)
    kp = float(inverse_group_velocity(config.pump, lam_p_nm * 1e-3))
    a = kp - float(inverse_group_velocity(config.signal, lam_s_nm * 1e-3))
    b = kp - float(inverse_group_velocity(config.idler, lam_i_nm * 1e-3))
    return a, b


def matched_bandwidth(config: CrystalConfig, center_nm: tuple[float, float] | float) -> float:
    """Pump sigma_p whose envelope width equals the phase-matching width.

    Uses the Gaussian approximation of the sinc; a good starting point for
    the bandwidth optimizer, and the reference bandwidth for grid spans.
    """
    if np.isscalar(center_nm):
        center_nm = (center_nm, center_nm)
    a, b = _inverse_velocity_offsets(config, *center_nm)
    return 2.0 / (config.length_um * math.sqrt(SINC_GAUSS_GAMMA * (a * a + b * b)))


def gaussian_marginal_fwhm(
    config: CrystalConfig, bandwidth: float, center_nm: tuple[float, float]
) -> tuple[float, float]:
    """Marginal JSI FWHMs (nm) of the Gaussian-approximated state.

    The sinc is replaced by exp(-GAMMA x^2) and dk linearized around
    ``center_nm``, making |f|^2 a bivariate Gaussian.
    """
    a, b = _inverse_velocity_offsets(config, *center_nm)
    g = 2.0 * SINC_GAUSS_GAMMA * (config.length_um / 2.0) ** 2
    p = 1.0 / bandwidth**2
    qss = p + g * a * a
    qii = p + g * b * b
    det = p * g * (a - b) ** 2
    if det <= 0:
        raise NoPhysicalSolutionError("phase matching and pump envelope are parallel")
    fw_s = 2.0 * math.sqrt(math.log(2.0) * qii / det)
    fw_i = 2.0 * math.sqrt(math.log(2.0) * qss / det)
    return (
        fw_s * float(dnm_per_domega(center_nm[0])),
        fw_i * float(dnm_per_domega(center_nm[1])),
    )


def default_grid(
    config: CrystalConfig,
    pump: PumpSpec,
    points: int = 256,
    span_widths: float = 8.0,
) -> SpectralGrid:
    """Wavelength grid centred on the phase-matched point.

    The half-span is ``span_widths`` times the larger marginal FWHM of the
    Gaussian-approximated JSI at the crystal-matched pump bandwidth. This
    width depends only on the crystal and the centre, not on the pump
    bandwidth being studied, so purities stay comparable while optimizing.
    """
    if not span_widths > 0:
        raise ConfigError(f"span_widths must be positive, got {span_widths}")
    center = phase_matched_center(config, pump)
    width = max(gaussian_marginal_fwhm(config, matched_bandwidth(config, center), center))
    return SpectralGrid.centered(center[0], center[1], span_widths * width, points, "nm")


def _spline_resample(x_src, y_src, values, x_new, y_new):
    from scipy.interpolate import RectBivariateSpline

    xs, ys, v = x_src, y_src, values
    if xs[0] > xs[-1]:
        xs, v = xs[::-1], v[::-1, :]
    if ys[0] > ys[-1]:
        ys, v = ys[::-1], v[:, ::-1]
    spline = RectBivariateSpline(xs, ys, v, kx=3, ky=3)
    return spline(np.clip(x_new, xs[0], xs[-1]), np.clip(y_new, ys[0], ys[-1]))


def resample_to_frequency(spectrum: JointSpectrum) -> JointSpectrum:
    """Interpolate a wavelength-grid spectrum onto a frequency-uniform grid.

    Values are point samples of f(omega), so they are interpolated as-is
    (bicubic) and the result is renormalized with the omega cell measure.
    """
    if spectrum.grid.is_frequency:
        return spectrum
    ws, wi = spectrum.grid.omega_axes()
    target = spectrum.grid.to_frequency()
    vals = spectrum.values
    if np.iscomplexobj(vals):
        new = _spline_resample(ws, wi, vals.real, target.signal, target.idler) + 1j * (
            _spline_resample(ws, wi, vals.imag, target.signal, target.idler)
        )
    else:
        new = _spline_resample(ws, wi, vals, target.signal, target.idler)
        if spectrum.kind == "JSI":
            new = np.clip(new, 0.0, None)
    out = JointSpectrum(target, new, spectrum.kind)
    return out.normalize() if spectrum.normalized else out
