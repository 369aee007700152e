"""Material dispersion and quasi-phase matching for a periodically poled crystal.

Refractive indices come from Sellmeier fits of the form

    n^2 = A + sum_j B_j / (1 - C_j / lambda^2) - D lambda^2

with lambda in micrometres. Group quantities are evaluated analytically
(chain rule through dn/dlambda), so no finite-difference step is involved.

Wavevectors are in rad/um, inverse group velocities k'(omega) in ps/um.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Mapping

import numpy as np

from .errors import (
    ConfigError,
    DegenerateOrientationError,
    DomainError,
    NoPhysicalSolutionError,
)
from .units import C_UM_PER_PS, nm_to_omega, omega_to_um

__all__ = [
    "SellmeierCoefficients",
    "CrystalConfig",
    "refractive_index",
    "index_derivative",
    "group_index",
    "wavevector",
    "inverse_group_velocity",
    "group_velocity",
    "delta_k",
    "solve_poling_period",
    "tilt_angle",
    "tilt_angle_from_inverse_velocities",
    "load_sellmeier",
    "default_sellmeier",
    "default_crystal",
]

# form name -> (pole pairs (B, C), constant term, IR term)
_FORMS = {
    "one_pole_ir": ((("B", "C"),), "A", "D"),
    "two_pole_ir": ((("B", "C"), ("D", "E")), "A", "F"),
    "constant": ((), None, None),
}


@dataclass(frozen=True)
class SellmeierCoefficients:
    """Sellmeier fit for one crystal axis.

    Attributes:
        axis: Crystal axis label, e.g. ``"y"`` or ``"z"``.
        form: Named variant; one of ``one_pole_ir``, ``two_pole_ir``,
            ``constant`` (dispersionless, key ``n``).
        coefficients: Coefficient values keyed by letter (um^2 for pole
            positions and the IR term, dimensionless otherwise).
        valid_um: Closed validity window in micrometres.
        source: Citation string.
    """

    axis: str
    form: str
    coefficients: Mapping[str, float]
    valid_um: tuple[float, float]
    source: str = ""

    def __post_init__(self):
        if self.form not in _FORMS:
            raise ConfigError(
                f"unknown Sellmeier form {self.form!r}; expected one of {sorted(_FORMS)}"
            )
        poles, const, ir = _FORMS[self.form]
        needed = {k for pair in poles for k in pair} | {const, ir} - {None}
        if self.form == "constant":
            needed = {"n"}
        missing = needed - set(self.coefficients)
        if missing:
            raise ConfigError(
                f"Sellmeier form {self.form!r} for axis {self.axis!r} "
                f"is missing coefficients {sorted(missing)}"
            )
        lo, hi = (float(v) for v in self.valid_um)
        if not 0 < lo < hi:
            raise ConfigError(f"invalid validity window {self.valid_um!r}")
        object.__setattr__(self, "valid_um", (lo, hi))
        object.__setattr__(
            self, "coefficients", {k: float(v) for k, v in self.coefficients.items()}
        )

    @classmethod
    def from_dict(cls, doc: Mapping) -> "SellmeierCoefficients":
        try:
            return cls(
                axis=str(doc["axis"]),
                form=str(doc["form"]),
                coefficients=dict(doc["coefficients"]),
                valid_um=tuple(doc["valid_um"]),
                source=str(doc.get("source", "")),
            )
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"malformed Sellmeier document: {exc}") from exc

    def to_dict(self) -> dict:
        return {
            "axis": self.axis,
            "form": self.form,
            "coefficients": dict(self.coefficients),
            "valid_um": list(self.valid_um),
            "source": self.source,
        }

    def check_window(self, wavelength_um, strict: bool = False) -> np.ndarray:
        lam = np.asarray(wavelength_um, dtype=float)
        lo, hi = self.valid_um
        if strict:
            bad = ~((lam > lo) & (lam < hi))
        else:
            bad = ~((lam >= lo) & (lam <= hi))
        if np.any(bad):
            worst = lam[bad] if lam.ndim else lam
            kind = "open" if strict else "closed"
            raise DomainError(
                f"wavelength {np.ravel(worst)[0]:.6g} um outside the {kind} validity "
                f"window [{lo}, {hi}] um of the {self.axis}-axis Sellmeier fit"
                + (f" ({int(np.count_nonzero(bad))} values affected)" if lam.ndim else "")
            )
        return lam


def _n_squared(coeffs: SellmeierCoefficients, lam):
    c = coeffs.coefficients
    if coeffs.form == "constant":
        return np.full_like(lam, c["n"] ** 2), np.zeros_like(lam)
    poles, const, ir = _FORMS[coeffs.form]
    inv2 = 1.0 / lam**2
    n2 = c[const] - c[ir] * lam**2
    dn2 = -2.0 * c[ir] * lam
    for b_key, c_key in poles:
        b, pole = c[b_key], c[c_key]
        denom = 1.0 - pole * inv2
        n2 = n2 + b / denom
        dn2 = dn2 - 2.0 * b * pole / (lam**3 * denom**2)
    return n2, dn2


def refractive_index(coeffs: SellmeierCoefficients, wavelength_um):
    """Refractive index at vacuum wavelength(s) in micrometres.

    Raises:
        DomainError: if any wavelength is outside ``coeffs.valid_um``.
    """
    lam = coeffs.check_window(wavelength_um)
    n2, _ = _n_squared(coeffs, lam)
    return np.sqrt(n2)


def index_derivative(coeffs: SellmeierCoefficients, wavelength_um):
    """Analytic dn/dlambda in 1/um."""
    lam = coeffs.check_window(wavelength_um)
    n2, dn2 = _n_squared(coeffs, lam)
    return dn2 / (2.0 * np.sqrt(n2))


def group_index(coeffs: SellmeierCoefficients, wavelength_um):
    """Group index n - lambda dn/dlambda."""
    lam = coeffs.check_window(wavelength_um)
    n2, dn2 = _n_squared(coeffs, lam)
    n = np.sqrt(n2)
    return n - lam * dn2 / (2.0 * n)


def wavevector(coeffs: SellmeierCoefficients, wavelength_um):
    """k = 2 pi n / lambda in rad/um."""
    lam = np.asarray(wavelength_um, dtype=float)
    return 2.0 * np.pi * refractive_index(coeffs, lam) / lam


def inverse_group_velocity(coeffs: SellmeierCoefficients, wavelength_um):
    """dk/domega = n_g / c in ps/um."""
    return group_index(coeffs, wavelength_um) / C_UM_PER_PS


def group_velocity(coeffs: SellmeierCoefficients, wavelength_um):
    """Group velocity 1/k'(omega) in um/ps.

    The wavelength must lie strictly inside the validity window since the
    derivative needs a neighbourhood.
    """
    coeffs.check_window(wavelength_um, strict=True)
    return C_UM_PER_PS / group_index(coeffs, wavelength_um)


@dataclass(frozen=True)
class CrystalConfig:
    """Periodically poled crystal in a collinear type-II configuration.

    ``poling_period_um`` may be left as ``None``; it is then solved for
    degenerate operation at ``degenerate_wavelength_nm``. The grating vector
    is oriented to cancel the material mismatch at that wavelength unless
    ``grating_sign`` is given explicitly.
    """

    length_mm: float
    sellmeier: Mapping[str, SellmeierCoefficients]
    poling_period_um: float | None = None
    degenerate_wavelength_nm: float = 1584.0
    temperature_c: float = 32.0
    pump_axis: str = "y"
    signal_axis: str = "y"
    idler_axis: str = "z"
    grating_sign: int | None = None

    def __post_init__(self):
        if not self.length_mm > 0:
            raise ConfigError(f"crystal length must be positive, got {self.length_mm}")
        if self.poling_period_um is not None and not self.poling_period_um > 0:
            raise ConfigError(
                f"poling period must be positive, got {self.poling_period_um}"
            )
        if self.signal_axis == self.idler_axis:
            raise ConfigError(
                "signal and idler must be polarized along different axes (type-II)"
            )
        for role in ("pump_axis", "signal_axis", "idler_axis"):
            ax = getattr(self, role)
            if ax not in self.sellmeier:
                raise ConfigError(f"no Sellmeier coefficients for {role}={ax!r}")
        if self.grating_sign not in (None, 1, -1):
            raise ConfigError(f"grating_sign must be +1 or -1, got {self.grating_sign}")
        object.__setattr__(self, "sellmeier", dict(self.sellmeier))

    @property
    def length_um(self) -> float:
        return self.length_mm * 1e3

    @property
    def pump(self) -> SellmeierCoefficients:
        return self.sellmeier[self.pump_axis]

    @property
    def signal(self) -> SellmeierCoefficients:
        return self.sellmeier[self.signal_axis]

    @property
    def idler(self) -> SellmeierCoefficients:
        return self.sellmeier[self.idler_axis]

    @cached_property
    def period_um(self) -> float:
        """Poling period, solved at the degenerate wavelength when unset."""
        if self.poling_period_um is not None:
            return float(self.poling_period_um)
        return solve_poling_period(self, self.degenerate_wavelength_nm)

    @cached_property
    def grating_vector(self) -> float:
        """Signed grating vector in rad/um as it enters the mismatch."""
        sign = self.grating_sign
        if sign is None:
            w0 = nm_to_omega(self.degenerate_wavelength_nm)
            sign = 1 if _material_mismatch(self, 2 * w0, w0, w0) > 0 else -1
        return sign * 2.0 * np.pi / self.period_um

    def with_poling_period(self, period_um: float | None) -> "CrystalConfig":
        return replace(self, poling_period_um=period_um)

    def matched(self, wavelength_nm: float) -> "CrystalConfig":
        """Copy with the period solved for degenerate operation at a wavelength."""
        return replace(
            self,
            degenerate_wavelength_nm=float(wavelength_nm),
            poling_period_um=solve_poling_period(self, wavelength_nm),
        )

    def swapped(self) -> "CrystalConfig":
        """Copy with the signal and idler polarization axes exchanged."""
        return replace(self, signal_axis=self.idler_axis, idler_axis=self.signal_axis)

    def to_dict(self) -> dict:
        return {
            "length_mm": self.length_mm,
            "poling_period_um": self.poling_period_um,
            "degenerate_wavelength_nm": self.degenerate_wavelength_nm,
            "temperature_c": self.temperature_c,
            "pump_axis": self.pump_axis,
            "signal_axis": self.signal_axis,
            "idler_axis": self.idler_axis,
            "grating_sign": self.grating_sign,
            "sellmeier": {ax: c.to_dict() for ax, c in self.sellmeier.items()},
        }

    @classmethod
    def from_dict(cls, doc: Mapping, base_dir: Path | None = None) -> "CrystalConfig":
        """Build from a config mapping.

        Sellmeier entries may be inline documents or file names; bare names
        resolve against ``base_dir`` and then the bundled data directory.
        """
        doc = dict(doc)
        try:
            raw = doc.pop("sellmeier")
        except KeyError:
            raw = {"y": "ktp_y.json", "z": "ktp_z.json"}
        sellmeier = {}
        for axis, entry in raw.items():
            if isinstance(entry, str):
                sellmeier[axis] = load_sellmeier(entry, base_dir)
            else:
                sellmeier[axis] = SellmeierCoefficients.from_dict(entry)
        known = {
            "length_mm",
            "poling_period_um",
            "degenerate_wavelength_nm",
            "temperature_c",
            "pump_axis",
            "signal_axis",
            "idler_axis",
            "grating_sign",
        }
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown crystal fields {sorted(unknown)}")
        if "length_mm" not in doc:
            raise ConfigError("crystal config needs 'length_mm'")
        return cls(sellmeier=sellmeier, **doc)


def load_sellmeier(path: str | Path, base_dir: Path | None = None) -> SellmeierCoefficients:
    """Load a coefficient document from a JSON file."""
    path = Path(path)
    candidates = []
    if base_dir is not None and not path.is_absolute():
        candidates.append(Path(base_dir) / path)
    candidates.append(path)
    for cand in candidates:
        if cand.is_file():
            text = cand.read_text()
            break
    else:
        bundled = resources.files("purephoton.data") / path.name
        if not bundled.is_file():
            raise ConfigError(f"Sellmeier file not found: {path}")
        text = bundled.read_text()
    try:
        return SellmeierCoefficients.from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc


def default_sellmeier() -> dict[str, SellmeierCoefficients]:
    """Bundled KTP y- and z-axis coefficient sets."""
    return {"y": load_sellmeier("ktp_y.json"), "z": load_sellmeier("ktp_z.json")}


def default_crystal(**overrides) -> CrystalConfig:
    """30 mm PPKTP, pump and signal on y, idler on z, degenerate at 1584 nm."""
    kwargs = dict(length_mm=30.0, sellmeier=default_sellmeier())
    kwargs.update(overrides)
    return CrystalConfig(**kwargs)


def _k(coeffs, omega):
    return wavevector(coeffs, omega_to_um(omega))


def _material_mismatch(config: CrystalConfig, omega_p, omega_s, omega_i):
    return _k(config.pump, omega_p) - _k(config.signal, omega_s) - _k(config.idler, omega_i)


def delta_k(config: CrystalConfig, omega_s, omega_i, omega_p=None, include_grating=True):
    """Wavevector mismatch k_p - k_s - k_i - K_grating in rad/um.

    Frequencies in rad/ps; ``omega_p`` defaults to ``omega_s + omega_i``.
    """
    omega_s = np.asarray(omega_s, dtype=float)
    omega_i = np.asarray(omega_i, dtype=float)
    if omega_p is None:
        omega_p = omega_s + omega_i
    dk = _material_mismatch(config, omega_p, omega_s, omega_i)
    if include_grating:
        dk = dk - config.grating_vector
    return dk


def solve_poling_period(config: CrystalConfig, wavelength_nm: float) -> float:
    """Poling period (um) that cancels the mismatch at degeneracy.

    Closed form: period = 2 pi / |k_p(2 w0) - k_s(w0) - k_i(w0)|. The sign of
    the material mismatch fixes the grating orientation (see
    ``CrystalConfig.grating_vector``).

    Raises:
        NoPhysicalSolutionError: if the material mismatch vanishes.
    """
    w0 = nm_to_omega(wavelength_nm)
    mismatch = float(_material_mismatch(config, 2 * w0, w0, w0))
    if not np.isfinite(mismatch) or mismatch == 0.0:
        raise NoPhysicalSolutionError(
            f"material wavevector mismatch at {wavelength_nm} nm is {mismatch}; "
            "no finite poling period phase-matches this point"
        )
    return 2.0 * np.pi / abs(mismatch)


def tilt_angle_from_inverse_velocities(inv_vp, inv_vs, inv_vi) -> float:
    """Ridge angle (degrees) of the phase-matching function.

    tan(theta) = -(1/V_p - 1/V_s) / (1/V_p - 1/V_i), theta in (-90, 90].
    """
    num = inv_vp - inv_vs
    den = inv_vp - inv_vi
    if den == 0:
        raise DegenerateOrientationError(
            "pump and idler inverse group velocities are equal; the "
            "phase-matching ridge is vertical"
        )
    theta = float(np.degrees(np.arctan(-num / den)))
    return 90.0 if theta == -90.0 else theta


def tilt_angle(config: CrystalConfig, wavelength_nm: float) -> float:
    """Phase-matching ridge angle at degenerate operation, in degrees."""
    lam_um = wavelength_nm * 1e-3
    return tilt_angle_from_inverse_velocities(
        float(inverse_group_velocity(config.pump, lam_um / 2)),
        float(inverse_group_velocity(config.signal, lam_um)),
        float(inverse_group_velocity(config.idler, lam_um)),
    )
