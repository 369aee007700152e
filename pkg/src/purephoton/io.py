"""File formats: spectrum CSV, measured-grid sidecar JSON, sweep CSV, configs.

All writers produce byte-identical output for identical inputs (fixed
float formatting, no timestamps) and replace files atomically.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .dispersion import CrystalConfig
from .errors import ConfigError, ContractError
from .instrument import FilterSpec, MeasuredGrid
from .jsa import JointSpectrum, SpectralGrid

__all__ = [
    "SPECTRUM_HEADER",
    "SWEEP_HEADER",
    "atomic_write_text",
    "write_json",
    "spectrum_to_csv",
    "write_spectrum_csv",
    "read_spectrum_csv",
    "write_measured",
    "read_measured",
    "sweep_to_csv",
    "SimulationConfig",
    "load_config",
]

SPECTRUM_HEADER = "lambda_s_nm,lambda_i_nm,value"
SWEEP_HEADER = "lambda_nm,poling_um,tilt_deg,p_jsi,p_jsa,fwhm_s_nm,fwhm_i_nm"
_FMT = "{:.15e}"


def atomic_write_text(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path, doc) -> None:
    atomic_write_text(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")


def spectrum_to_csv(spectrum: JointSpectrum, integer: bool = False) -> str:
    """CSV text, one row per cell, signal axis outermost."""
    grid = spectrum.grid
    if grid.is_frequency:
        raise ContractError("spectrum CSV is defined on wavelength grids only")
    vals = spectrum.values
    if np.iscomplexobj(vals):
        if np.any(vals.imag != 0):
            raise ContractError("complex JSA cannot be written to the real-valued CSV")
        vals = vals.real
    lines = [SPECTRUM_HEADER]
    vfmt = "{:d}" if integer else _FMT
    for i, ls in enumerate(grid.signal):
        sfmt = _FMT.format(ls)
        for j, li in enumerate(grid.idler):
            v = int(vals[i, j]) if integer else vals[i, j]
            lines.append(f"{sfmt},{_FMT.format(li)},{vfmt.format(v)}")
    return "\n".join(lines) + "\n"


def write_spectrum_csv(spectrum: JointSpectrum, path) -> None:
    atomic_write_text(path, spectrum_to_csv(spectrum))


def _read_table(path):
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"file not found: {path}")
    with path.open() as fh:
        header = fh.readline().strip()
    if header != SPECTRUM_HEADER:
        raise ContractError(f"{path}: expected header {SPECTRUM_HEADER!r}, got {header!r}")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != 3:
        raise ContractError(f"{path}: expected 3 columns")
    ls, li, v = data.T
    signal = ls[np.r_[True, ls[1:] != ls[:-1]]]
    ni = int(np.count_nonzero(ls == ls[0]))
    if ni == 0 or len(ls) != signal.size * ni:
        raise ContractError(f"{path}: rows do not form a rectangular grid")
    idler = li[:ni]
    if not (np.all(li.reshape(signal.size, ni) == idler) and np.all(
        ls.reshape(signal.size, ni) == signal[:, None]
    )):
        raise ContractError(f"{path}: rows are not in signal-major order")
    return SpectralGrid(signal, idler, "nm"), v.reshape(signal.size, ni)


def read_spectrum_csv(path, kind: str = "JSI", normalize: bool = True) -> JointSpectrum:
    """Load a spectrum CSV; normalized on load unless ``normalize`` is False."""
    grid, values = _read_table(path)
    spec = JointSpectrum(grid, values, kind)
    return spec.normalize() if normalize else spec


def write_measured(measured: MeasuredGrid, csv_path, json_path) -> None:
    counts = measured.counts
    integer = np.issubdtype(counts.dtype, np.integer)
    text = spectrum_to_csv(JointSpectrum(measured.grid, counts, "JSI"), integer=integer)
    atomic_write_text(csv_path, text)
    write_json(
        json_path,
        {"dwell_s": measured.dwell_s, "filters": [f.to_dict() for f in measured.filters]},
    )


def read_measured(csv_path, json_path) -> MeasuredGrid:
    """Coincidence grid from CSV counts plus its JSON sidecar."""
    grid, counts = _read_table(csv_path)
    json_path = Path(json_path)
    if not json_path.is_file():
        raise ConfigError(f"file not found: {json_path}")
    try:
        meta = json.loads(json_path.read_text())
        dwell = float(meta["dwell_s"])
        filters = tuple(FilterSpec.from_dict(f) for f in meta.get("filters", []))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{json_path}: malformed sidecar ({exc})") from exc
    if np.all(counts == np.rint(counts)):
        counts = np.rint(counts).astype(np.int64)
    return MeasuredGrid(grid, counts, dwell, filters)


def sweep_to_csv(rows: Iterable) -> str:
    lines = [SWEEP_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                _FMT.format(v)
                for v in (
                    r.lambda_nm,
                    r.poling_um,
                    r.tilt_deg,
                    r.p_jsi,
                    r.p_jsa,
                    r.fwhm_s_nm,
                    r.fwhm_i_nm,
                )
            )
        )
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SimulationConfig:
    crystal: CrystalConfig
    pump_wavelength_nm: float | None = None
    bandwidth: float | None = None
    points: int = 256
    span_widths: float = 8.0


def load_config(path=None) -> SimulationConfig:
    """Read a simulation config; ``None`` loads the bundled PPKTP default.

    Layout: ``{"crystal": {...}, "pump": {"wavelength_nm", "bandwidth_rad_per_ps"},
    "grid": {"points", "span_widths"}}``.
    """
    if path is None:
        from importlib import resources

        text = (resources.files("purephoton.data") / "ppktp_default.json").read_text()
        base = None
    else:
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        text = path.read_text()
        base = path.parent
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in config {path}: {exc}") from exc
    if not isinstance(doc, dict) or "crystal" not in doc:
        raise ConfigError(f"config {path} needs a 'crystal' section")
    crystal = CrystalConfig.from_dict(doc["crystal"], base)
    pump = doc.get("pump") or {}
    grid = doc.get("grid") or {}
    try:
        return SimulationConfig(
            crystal=crystal,
            pump_wavelength_nm=pump.get("wavelength_nm"),
            bandwidth=pump.get("bandwidth_rad_per_ps"),
            points=int(grid.get("points", 256)),
            span_widths=float(grid.get("span_widths", 8.0)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"config {path}: {exc}") from exc
