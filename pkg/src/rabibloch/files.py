"""On-disk formats.

* space-time grids: raw little-endian float64, row-major with time as the
  slow axis, plus a JSON sidecar (``<name>.json``) holding shape, tau grid
  and units;
* series and spectra: two-column UTF-8 text with ``#`` header lines;
* peaks: two-column text next to the spectrum (``<name>.peaks.txt``).
"""
from __future__ import annotations

import hashlib
import json
import warnings
from pathlib import Path

import numpy as np

GRID_DTYPE = "<f8"


def sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def write_json(path, obj) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def write_grid(path, grid: np.ndarray, tau_grid: np.ndarray, kind: str, units: str) -> tuple[Path, Path]:
    """Write ``grid`` (``n_records x n_sites``) and its sidecar; returns both paths."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = np.ascontiguousarray(grid, dtype=GRID_DTYPE)
    path.write_bytes(data.tobytes(order="C"))
    tau_grid = np.asarray(tau_grid, dtype=float)
    meta = {
        "kind": kind,
        "dtype": GRID_DTYPE,
        "order": "C (time-major)",
        "shape": list(data.shape),
        "tau_start": float(tau_grid[0]) if tau_grid.size else 0.0,
        "tau_step": float(tau_grid[1] - tau_grid[0]) if tau_grid.size > 1 else 0.0,
        "tau": tau_grid.tolist(),
        "units": {"tau": "1/omega_0", "value": units, "axis1": "site index"},
    }
    side = write_json(path.with_suffix(".json"), meta)
    return path, side


def read_grid(path):
    """Return ``(grid, sidecar_dict)``."""
    path = Path(path)
    meta = json.loads(path.with_suffix(".json").read_text(encoding="utf-8"))
    grid = np.frombuffer(path.read_bytes(), dtype=meta["dtype"]).reshape(meta["shape"])
    return grid, meta


def write_columns(path, x, y, header: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, np.column_stack([x, y]), fmt="%.17e", header=header, encoding="utf-8")
    return path


def read_columns(path):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)  # empty series are legitimate
        data = np.loadtxt(path, ndmin=2, comments="#", encoding="utf-8")
    if data.size == 0:
        return np.empty(0), np.empty(0)
    return data[:, 0], data[:, 1]


def write_series(path, record) -> Path:
    header = f"kind={record.kind} probe={record.probe}\ntau value"
    return write_columns(path, record.tau_grid, record.values, header)


def write_spectrum(path, spectrum, label: str = "") -> tuple[Path, Path]:
    path = Path(path)
    header = f"{label} resolution={spectrum.resolution:.17e}\nfrequency[omega_0] amplitude".strip()
    spec_path = write_columns(path, spectrum.freq_grid, spectrum.amplitude, header)
    peaks = np.array(spectrum.peaks, dtype=float).reshape(-1, 2)
    peaks_path = write_columns(path.with_name(path.stem + ".peaks.txt"), peaks[:, 0], peaks[:, 1],
                               f"{label}\nfrequency[omega_0] amplitude".strip())
    return spec_path, peaks_path
