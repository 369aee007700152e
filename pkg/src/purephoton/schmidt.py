"""Schmidt decomposition and spectral purity of joint spectra.

For a JSA the squared, normalized singular values c_j^2 are the Schmidt
weights and the heralded-photon purity is sum c_j^4 = 1/K. Applying the
same decomposition to the JSI gives the intensity purity P_JSI.

Wavelength grids are resampled to a frequency-uniform grid first so the
discrete inner product matches the continuous one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DegenerateInputError, GridSizeError
from .jsa import JointSpectrum, resample_to_frequency

__all__ = ["SchmidtResult", "decompose", "purity_oracle", "purity"]

#: Coefficients below this fraction of the largest are dropped.
TRUNCATION = 1e-12
NORMALIZATION_TOL = 1e-9


@dataclass(frozen=True)
class SchmidtResult:
    """Schmidt coefficients (descending, sum of squares one) and derived figures."""

    kind: str
    coefficients: np.ndarray
    purity: float
    schmidt_number: float

    @property
    def modes(self) -> int:
        return int(self.coefficients.size)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "purity": float(self.purity),
            "schmidt_number": float(self.schmidt_number),
            "coefficients": [float(c) for c in self.coefficients],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, doc) -> "SchmidtResult":
        return cls(
            doc["kind"],
            np.asarray(doc["coefficients"], dtype=float),
            float(doc["purity"]),
            float(doc["schmidt_number"]),
        )


def _frequency_matrix(spectrum: JointSpectrum) -> tuple[np.ndarray, float]:
    if not spectrum.normalized:
        raise ContractError("spectrum must be normalized before Schmidt analysis")
    if abs(spectrum.total() - 1.0) > NORMALIZATION_TOL:
        raise ContractError(
            f"spectrum flagged normalized but integrates to {spectrum.total():.12g}"
        )
    spec = resample_to_frequency(spectrum)
    vals = spec.values
    if not np.any(vals):
        raise DegenerateInputError("spectrum matrix is identically zero")
    return vals, spec.grid.cell_area


def decompose(spectrum: JointSpectrum) -> SchmidtResult:
    """Schmidt decomposition by singular values.

    JSA input yields P_JSA, JSI input yields P_JSI.

    Raises:
        ContractError: spectrum not normalized.
        DegenerateInputError: numerically zero matrix.
    """
    vals, area = _frequency_matrix(spectrum)
    s = np.linalg.svd(vals * np.sqrt(area), compute_uv=False)
    norm = np.sqrt(np.sum(s**2))
    if not norm > 0 or s[0] <= np.finfo(float).tiny:
        raise DegenerateInputError("spectrum matrix has no nonzero singular value")
    c = s / norm
    c = c[c >= TRUNCATION * c[0]]
    p = float(np.sum(c**4))
    return SchmidtResult(spectrum.kind, c, p, 1.0 / p)


def purity(spectrum: JointSpectrum) -> float:
    """Shortcut for ``decompose(spectrum).purity``."""
    return decompose(spectrum).purity


def purity_oracle(spectrum: JointSpectrum, max_points: int = 128) -> float:
    """Purity by direct contraction, Tr(rho^2) with rho = F F^H.

    Independent of any eigen- or singular-value routine. Cost grows as N^3,
    so grids larger than ``max_points`` per axis are refused.
    """
    ns, ni = spectrum.grid.shape
    if max(ns, ni) > max_points:
        raise GridSizeError(
            f"purity_oracle is limited to {max_points} points per axis, grid is "
            f"{ns}x{ni}; use a coarser grid or pass a larger max_points"
        )
    f, _ = _frequency_matrix(spectrum)
    rho = f @ f.conj().T
    tr_rho = np.real(np.trace(rho))
    return float(np.real(np.vdot(rho, rho)) / tr_rho**2)
