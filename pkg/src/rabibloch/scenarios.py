"""
Regime presets, the ``key = value`` configuration format and batch runs.

Presets ``a``-``f`` are the interaction regimes of the chain (dc tilt, ac drive,
oblique incidence, hopping asymmetry); ``i``-``v`` start from the Gaussian
analog of the coherently trapped state instead of an excited packet.
"""
from __future__ import annotations

import dataclasses
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, files
from .dynamics import DEFAULT_D_TAU, ModelVariant, Trajectory, propagate
from .model import ChainParams, DriveParams, gaussian_packet, trapped_packet
from .observables import diagnostics
from .spectra import (SPATIAL_SUM, amplitude_spectrum, observable_grid,
                      record_series)
from .trapping import eigen_wavenumber

log = logging.getLogger(__name__)

OMEGA_B = 3.9e-3
OMEGA_R = 2.5e-2
T_A = 3.5e-2
T_B_TRAP = 3.5e-3
KA_OBLIQUE = -0.624
EDGE_WARN = 1e-6

GRID_KINDS = ("inversion", "tunnel_current", "dipole_current")
GRID_UNITS = {
    "inversion": "dimensionless (per site, /N)",
    "tunnel_current": "e*omega_0 (e = hbar = 1)",
    "dipole_current": "nu*(-i a^* b + c.c.); physical prefactor omega c e d_ab dropped",
}


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class InitialSpec:
    kind: str = "gaussian"  # gaussian | trapped
    center: float = 80.0
    width: float = 20.0
    momentum: float = 0.0
    band: str = "excited"


@dataclass
class RunSpec:
    tau_end: float | None = None  # None -> default_tau_end(drive)
    d_tau: float = DEFAULT_D_TAU
    record_every: int = 25
    probes: tuple = (80, SPATIAL_SUM)
    variant: str = "simplified"
    rwa_probes: tuple = (40, 60, 80)


@dataclass
class AnalysisSpec:
    window: str = "hann"
    zero_pad: int = 4
    threshold: float = 0.05


@dataclass
class OutputSpec:
    dir: str | None = None
    grids: bool = True
    series: bool = True
    spectra: bool = True


@dataclass
class ScenarioConfig:
    chain: ChainParams = field(default_factory=lambda: ChainParams(128))
    drive: DriveParams = field(default_factory=DriveParams)
    initial: InitialSpec = field(default_factory=InitialSpec)
    run: RunSpec = field(default_factory=RunSpec)
    analysis: AnalysisSpec = field(default_factory=AnalysisSpec)
    outputs: OutputSpec = field(default_factory=OutputSpec)
    name: str = "custom"

    @property
    def tau_end(self) -> float:
        return default_tau_end(self.drive) if self.run.tau_end is None else self.run.tau_end

    def validate(self) -> "ScenarioConfig":
        r, d = self.run, self.drive
        if not r.d_tau > 0:
            raise ConfigError(f"run.d_tau must be positive, got {r.d_tau}")
        if r.d_tau * abs(d.nu) > 0.125:
            raise ConfigError(f"run.d_tau * drive.nu = {r.d_tau * abs(d.nu):.3g} exceeds 0.125")
        if r.record_every < 1:
            raise ConfigError("run.record_every must be >= 1")
        if d.nu != 0 and math.pi / (r.record_every * r.d_tau) <= 1.2 * abs(d.nu):
            raise ConfigError("run.record_every * run.d_tau too coarse for the dipole current: need Nyquist > 1.2 nu")
        if r.tau_end is not None and r.tau_end < 0:
            raise ConfigError("run.tau_end must be non-negative")
        try:
            ModelVariant(r.variant)
        except ValueError:
            raise ConfigError(f"unknown run.variant {r.variant!r}") from None
        n = self.chain.n_sites
        for p in tuple(r.probes) + tuple(r.rwa_probes):
            if p != SPATIAL_SUM and not (isinstance(p, int) and 0 <= p < n):
                raise ConfigError(f"run.probes entry {p!r} is not a site of the {n}-site chain")
        ini = self.initial
        if ini.kind not in ("gaussian", "trapped"):
            raise ConfigError(f"initial.kind must be gaussian or trapped, got {ini.kind!r}")
        if ini.band not in ("excited", "ground"):
            raise ConfigError(f"initial.band must be excited or ground, got {ini.band!r}")
        if not ini.width > 0:
            raise ConfigError("initial.width must be positive")
        if not 0 <= ini.center < n:
            raise ConfigError(f"initial.center must lie in [0, {n})")
        if ini.kind == "trapped" and self.chain.t_a == 0:
            raise ConfigError("trapped initial state needs chain.t_a != 0")
        a = self.analysis
        if a.window not in ("hann", "rect"):
            raise ConfigError(f"analysis.window must be hann or rect, got {a.window!r}")
        if a.zero_pad < 1:
            raise ConfigError("analysis.zero_pad must be >= 1")
        if not 0 < a.threshold <= 1:
            raise ConfigError("analysis.threshold must lie in (0, 1]")
        return self

    def initial_state(self):
        ini = self.initial
        if ini.kind == "trapped":
            return trapped_packet(self.chain, ini.center, ini.width, ini.momentum)
        return gaussian_packet(self.chain, ini.center, ini.width, ini.momentum, ini.band)

    def replace(self, **sections) -> "ScenarioConfig":
        return dataclasses.replace(self, **sections)


def default_tau_end(drive: DriveParams) -> float:
    """2.5 Bloch periods with a tilt, else 10 Rabi periods, else 1000."""
    if drive.omega_B != 0:
        return 2.5 * 2 * math.pi / abs(drive.omega_B)
    if drive.omega_R != 0:
        return 10 * 2 * math.pi / abs(drive.omega_R)
    return 1000.0


# --------------------------------------------------------------------------- presets

PRESET_INFO = {
    "a": "Bloch oscillations (dc only)",
    "b": "Rabi oscillations (ac only, normal incidence)",
    "c": "Rabi waves (ac only, oblique incidence)",
    "d": "Rabi-Bloch oscillations, standing ac field",
    "e": "Rabi-Bloch oscillations, travelling wave, t_a = t_b",
    "f": "Rabi-Bloch oscillations, standing ac field, t_b = 0",
    "f-oblique": "as f with oblique incidence ka = -0.624",
    "i": "trapped packet, dc only",
    "ii": "trapped packet, ac only, standing wave",
    "iii": "trapped packet, dc + ac, standing wave",
    "iv": "trapped packet, ac only, travelling wave",
    "v": "trapped packet, dc + ac, travelling wave",
}

_DRIVES = {
    "a": (OMEGA_B, 0.0, 0.0),
    "b": (0.0, OMEGA_R, 0.0),
    "c": (0.0, OMEGA_R, KA_OBLIQUE),
    "d": (OMEGA_B, OMEGA_R, 0.0),
    "e": (OMEGA_B, OMEGA_R, KA_OBLIQUE),
    "f": (OMEGA_B, OMEGA_R, 0.0),
    "f-oblique": (OMEGA_B, OMEGA_R, KA_OBLIQUE),
    "i": (OMEGA_B, 0.0, 0.0),
    "ii": (0.0, OMEGA_R, 0.0),
    "iii": (OMEGA_B, OMEGA_R, 0.0),
    "iv": (0.0, OMEGA_R, KA_OBLIQUE),
    "v": (OMEGA_B, OMEGA_R, KA_OBLIQUE),
}

TRAPPED_PRESETS = ("i", "ii", "iii", "iv", "v")


def _check_regime(pid: str, cfg: ScenarioConfig) -> None:
    """Assert the interaction-type table literally for regime presets."""
    d, c = cfg.drive, cfg.chain
    dc, ac, oblique = d.omega_B != 0, d.omega_R != 0, d.K != 0
    rules = {
        "a": dc and not ac,
        "b": not dc and ac and not oblique,
        "c": not dc and ac and oblique,
        "d": dc and ac and not oblique,
        "e": dc and ac and oblique and c.t_a == c.t_b,
        "f": dc and ac and not oblique and abs(c.t_b) < 0.1 * abs(c.t_a),
        "f-oblique": dc and ac and oblique and abs(c.t_b) < 0.1 * abs(c.t_a),
    }
    if pid in rules and not rules[pid]:
        raise AssertionError(f"preset {pid} violates its regime definition")


def preset(pid: str) -> ScenarioConfig:
    """Fully populated configuration for a named regime."""
    pid = str(pid).strip()
    if pid not in _DRIVES:
        raise ConfigError(f"unknown preset {pid!r}; choose from {', '.join(PRESET_INFO)}")
    omega_B, omega_R, K = _DRIVES[pid]
    drive = DriveParams(omega_B=omega_B, omega_R=omega_R, nu=1.0, K=K)
    if pid in TRAPPED_PRESETS:
        chain = ChainParams(128, delta_eps=0.5, t_a=T_A, t_b=T_B_TRAP)
        ha = eigen_wavenumber(OMEGA_R, T_A, T_B_TRAP).ha
        initial = InitialSpec("trapped", 80.0, 20.0, ha)
        run = RunSpec(variant="rwa")
    else:
        t_b = 0.0 if pid.startswith("f") else T_A
        chain = ChainParams(128, delta_eps=0.5, t_a=T_A, t_b=t_b)
        initial = InitialSpec("gaussian", 80.0, 20.0, 0.0)
        run = RunSpec(variant="simplified")
    cfg = ScenarioConfig(chain, drive, initial, run, AnalysisSpec(), OutputSpec(), name=pid)
    _check_regime(pid, cfg)
    return cfg.validate()


# --------------------------------------------------------------------------- config text

_SECTIONS = {
    "chain": ChainParams,
    "drive": DriveParams,
    "initial": InitialSpec,
    "run": RunSpec,
    "analysis": AnalysisSpec,
    "outputs": OutputSpec,
}
_COMPLEX = {("chain", "t_a"), ("chain", "t_b"), ("drive", "eta_a"), ("drive", "eta_b")}
_INT = {("chain", "n_sites"), ("run", "record_every"), ("analysis", "zero_pad")}
_STR = {("initial", "kind"), ("initial", "band"), ("run", "variant"), ("analysis", "window")}
_BOOL = {("outputs", "grids"), ("outputs", "series"), ("outputs", "spectra")}
_PROBES = {("run", "probes"), ("run", "rwa_probes")}


def _field_index():
    index = {}
    for sec, cls in _SECTIONS.items():
        for f in dataclasses.fields(cls):
            index.setdefault(f.name, []).append(sec)
    return index


_BARE = _field_index()


def resolve_key(key: str) -> tuple[str, str]:
    """Map ``drive.omega_B`` or an unambiguous bare ``omega_B`` to ``(section, field)``."""
    if "." in key:
        sec, _, name = key.partition(".")
        if sec in _SECTIONS and name in {f.name for f in dataclasses.fields(_SECTIONS[sec])}:
            return sec, name
        raise KeyError(key)
    secs = _BARE.get(key, [])
    if len(secs) != 1:
        raise KeyError(key)
    return secs[0], key


def _parse_value(sec: str, name: str, raw: str):
    raw = raw.strip()
    if (sec, name) in _PROBES:
        out = []
        for tok in raw.replace(",", " ").split():
            out.append(SPATIAL_SUM if tok in ("sum", "spatial_sum") else int(tok))
        return tuple(out)
    if (sec, name) in _BOOL:
        low = raw.lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"not a boolean: {raw!r}")
    if (sec, name) in _STR:
        return raw
    if (sec, name) == ("outputs", "dir"):
        return raw or None
    if (sec, name) == ("run", "tau_end") and raw.lower() in ("auto", "default"):
        return None
    if (sec, name) in _INT:
        return int(raw)
    if (sec, name) in _COMPLEX:
        val = complex(raw.replace(" ", ""))
        return val.real if val.imag == 0 else val
    return float(raw)


def apply_overrides(cfg: ScenarioConfig, items) -> ScenarioConfig:
    """Apply ``(key, raw_value, line)`` triples; returns a validated copy."""
    sections = {sec: getattr(cfg, sec) for sec in _SECTIONS}
    name = cfg.name
    line_of = {}
    for key, raw, line in items:
        try:
            sec, fname = resolve_key(key)
        except KeyError:
            raise ConfigError(f"unknown key {key!r}", line) from None
        try:
            value = _parse_value(sec, fname, raw)
            sections[sec] = dataclasses.replace(sections[sec], **{fname: value})
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"bad value for {key}: {exc}", line) from None
        line_of[f"{sec}.{fname}"] = line
        if name != "custom" and not name.endswith("+"):
            name = name + "+"
    out = ScenarioConfig(**sections, name=name)
    try:
        return out.validate()
    except ConfigError as exc:
        lines = [ln for k, ln in line_of.items() if k in str(exc)]
        raise ConfigError(str(exc), lines[0] if lines else None) from None


def parse_config(text: str) -> ScenarioConfig:
    """Parse the line-oriented ``key = value`` format.

    ``preset = <id>`` (anywhere in the file) selects the base configuration,
    ``name = <label>`` names the run, and every other line overrides one
    field.  Keys are ``section.field`` or a
    bare field name when that is unambiguous.
    """
    base = None
    name = None
    items = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
        key, _, raw = line.partition("=")
        key = key.strip()
        if not key:
            raise ConfigError("missing key before '='", lineno)
        if key == "preset":
            if base is not None:
                raise ConfigError("preset given twice", lineno)
            try:
                base = preset(raw.strip())
            except ConfigError as exc:
                raise ConfigError(str(exc), lineno) from None
            continue
        if key == "name":
            name = raw.strip()
            if not name:
                raise ConfigError("empty name", lineno)
            continue
        items.append((key, raw, lineno))
    cfg = base if base is not None else ScenarioConfig()
    cfg = apply_overrides(cfg, items)
    return cfg if name is None else cfg.replace(name=name)


def format_config(cfg: ScenarioConfig) -> str:
    """Render ``cfg`` in the text format; ``parse_config`` reads it back."""
    lines = [f"name = {cfg.name}"]
    for sec in _SECTIONS:
        obj = getattr(cfg, sec)
        for f in dataclasses.fields(obj):
            val = getattr(obj, f.name)
            if (sec, f.name) in _PROBES:
                text = ", ".join(str(v) for v in val)
            elif val is None:
                text = "auto" if f.name == "tau_end" else ""
            elif isinstance(val, complex):
                text = repr(val).strip("()")
            elif isinstance(val, float):
                text = repr(val)
            else:
                text = str(val)
            lines.append(f"{sec}.{f.name} = {text}")
    return "\n".join(lines) + "\n"


def config_to_dict(cfg: ScenarioConfig) -> dict:
    out = {"name": cfg.name}
    for sec in _SECTIONS:
        d = {}
        for f in dataclasses.fields(getattr(cfg, sec)):
            v = getattr(getattr(cfg, sec), f.name)
            if isinstance(v, complex):
                v = {"re": v.real, "im": v.imag}
            elif isinstance(v, tuple):
                v = list(v)
            d[f.name] = v
        out[sec] = d
    out["tau_end_effective"] = cfg.tau_end
    return out


# --------------------------------------------------------------------------- runs

@dataclass
class RunManifest:
    config: dict
    version: str
    tau_start: float
    tau_end: float
    n_records: int
    norm_drift: float
    edge_leakage_max: float
    warnings: list
    files: dict
    peaks: dict
    out_dir: str | None = None
    trajectory: Trajectory | None = field(default=None, repr=False, compare=False)
    spectra: dict = field(default_factory=dict, repr=False, compare=False)
    series: dict = field(default_factory=dict, repr=False, compare=False)

    def to_dict(self) -> dict:
        keys = ("config", "version", "tau_start", "tau_end", "n_records", "norm_drift",
                "edge_leakage_max", "warnings", "files", "peaks")
        return {k: getattr(self, k) for k in keys}


def output_dir(cfg: ScenarioConfig, out_dir=None) -> Path:
    if out_dir is not None:
        return Path(out_dir)
    if cfg.outputs.dir:
        return Path(cfg.outputs.dir)
    root = os.environ.get("RBO_OUT_DIR", "rbo_out")
    return Path(root) / cfg.name.replace("+", "_custom")


def _spectrum_for(record, cfg: ScenarioConfig):
    # the tunnel current keeps its mean so a dc line can show up
    return amplitude_spectrum(record, cfg.analysis.window, cfg.analysis.zero_pad,
                              remove_mean=record.kind != "tunnel_current",
                              rel_threshold=cfg.analysis.threshold)


def _max_edge_leakage(traj: Trajectory) -> float:
    pop = np.abs(traj.a) ** 2 + np.abs(traj.b) ** 2
    if pop.shape[1] <= 4:
        return float(pop.sum(axis=1).max())
    return float((pop[:, :2].sum(axis=1) + pop[:, -2:].sum(axis=1)).max())


def run_scenario(cfg: ScenarioConfig, out_dir=None, write: bool = True) -> RunManifest:
    """Propagate, record, analyse and (optionally) write every output.

    Returns the manifest; when ``write`` is true it is also stored as
    ``manifest.json`` together with SHA-256 checksums of all other files.
    """
    cfg.validate()
    out = output_dir(cfg, out_dir) if write else None
    written: dict = {}
    warnings: list = []
    state0 = cfg.initial_state()
    tau_end = cfg.tau_end

    def _rel(p: Path):
        written[str(p.relative_to(out))] = files.sha256(p)

    if tau_end == 0:
        manifest = RunManifest(config_to_dict(cfg), __version__, state0.tau, state0.tau, 0,
                               0.0, diagnostics(state0).edge_leakage, warnings, written, {},
                               str(out) if out else None)
        if write:
            out.mkdir(parents=True, exist_ok=True)
            for probe in cfg.run.probes:
                for kind in GRID_KINDS:
                    p = files.write_columns(out / "series" / f"{kind}_{_probe_label(probe)}.txt",
                                            [], [], f"kind={kind} probe={probe}\ntau value")
                    _rel(p)
            files.write_json(out / "manifest.json", manifest.to_dict())
        return manifest

    traj = propagate(state0, tau_end, cfg.run.d_tau, cfg.chain, cfg.drive,
                     cfg.run.variant, cfg.run.record_every)
    edge = _max_edge_leakage(traj)
    if edge > EDGE_WARN:
        msg = f"edge leakage {edge:.3g} exceeds {EDGE_WARN:g}; hard-wall reflections may matter"
        warnings.append(msg)
        log.warning(msg)

    series, spectra, peaks = {}, {}, {}
    for probe in cfg.run.probes:
        for kind in GRID_KINDS:
            rec = record_series(traj, kind, probe)
            series[rec.label] = rec
            if len(rec) >= 16:
                spec = _spectrum_for(rec, cfg)
                spectra[rec.label] = spec
                peaks[rec.label] = [list(p) for p in spec.peaks]

    if write:
        out.mkdir(parents=True, exist_ok=True)
        if cfg.outputs.grids:
            for kind in GRID_KINDS:
                grid = observable_grid(traj, kind)
                for p in files.write_grid(out / "grids" / f"{kind}.f64", grid, traj.tau_grid, kind,
                                          GRID_UNITS[kind]):
                    _rel(p)
        if cfg.outputs.series:
            for label, rec in series.items():
                _rel(files.write_series(out / "series" / f"{label}.txt", rec))
        if cfg.outputs.spectra:
            for label, spec in spectra.items():
                for p in files.write_spectrum(out / "spectra" / f"{label}.txt", spec, label):
                    _rel(p)
        p = out / "config.txt"
        p.write_text(format_config(cfg), encoding="utf-8")
        _rel(p)

    manifest = RunManifest(config_to_dict(cfg), __version__, float(traj.tau_grid[0]),
                           float(traj.final.tau), len(traj), traj.norm_drift, edge, warnings,
                           written, peaks, str(out) if out else None, traj, spectra, series)
    if write:
        files.write_json(out / "manifest.json", manifest.to_dict())
    return manifest


def _probe_label(probe) -> str:
    return "sum" if probe == SPATIAL_SUM else f"site{probe}"


def verify_manifest(out_dir) -> list:
    """Recompute checksums listed in ``manifest.json``; returns mismatching paths."""
    import json

    out = Path(out_dir)
    manifest = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
    return [rel for rel, digest in manifest["files"].items() if files.sha256(out / rel) != digest]


# --------------------------------------------------------------------------- RWA comparison

@dataclass
class RwaComparison:
    tau_grid: np.ndarray
    probes: tuple
    full: dict  # probe -> inversion trace of the full model
    rwa: dict
    nrms: dict  # probe -> normalized RMS difference
    peak_full: dict  # probe -> dominant inversion-line frequency
    peak_rwa: dict
    resolution: float

    def to_dict(self) -> dict:
        return {
            "probes": [str(p) for p in self.probes],
            "nrms": {str(k): v for k, v in self.nrms.items()},
            "peak_full": {str(k): v for k, v in self.peak_full.items()},
            "peak_rwa": {str(k): v for k, v in self.peak_rwa.items()},
            "resolution": self.resolution,
        }


def compare_rwa(cfg: ScenarioConfig, out_dir=None, write: bool = False) -> RwaComparison:
    """Run the full and RWA models from the same initial state and compare inversion."""
    cfg.validate()
    state0 = cfg.initial_state()
    trajs = {}
    for variant in (ModelVariant.FULL, ModelVariant.RWA):
        trajs[variant] = propagate(state0, cfg.tau_end, cfg.run.d_tau, cfg.chain, cfg.drive,
                                   variant, cfg.run.record_every)
    probes = tuple(cfg.run.rwa_probes)
    full, rwa, nrms, pf, pr = {}, {}, {}, {}, {}
    resolution = float("nan")
    for probe in probes:
        rf = record_series(trajs[ModelVariant.FULL], "inversion", probe)
        rr = record_series(trajs[ModelVariant.RWA], "inversion", probe)
        full[probe], rwa[probe] = rf.values, rr.values
        scale = np.sqrt(np.mean(rf.values**2))
        diff = np.sqrt(np.mean((rf.values - rr.values) ** 2))
        nrms[probe] = float(diff / scale) if scale > 0 else float(diff)
        if len(rf) >= 16:
            sf = _spectrum_for(rf, cfg)
            sr = _spectrum_for(rr, cfg)
            resolution = sf.resolution
            dom_f, dom_r = sf.dominant_peak(), sr.dominant_peak()
            pf[probe] = dom_f[0] if dom_f else None
            pr[probe] = dom_r[0] if dom_r else None
    tau = trajs[ModelVariant.FULL].tau_grid
    result = RwaComparison(tau, probes, full, rwa, nrms, pf, pr, resolution)
    if write:
        out = output_dir(cfg, out_dir)
        for probe in probes:
            path = out / "rwa" / f"inversion_{_probe_label(probe)}.txt"
            path.parent.mkdir(parents=True, exist_ok=True)
            np.savetxt(path, np.column_stack([tau, full[probe], rwa[probe]]), fmt="%.17e",
                       header=f"probe={probe}\ntau full rwa", encoding="utf-8")
        files.write_json(out / "rwa" / "comparison.json", result.to_dict())
    return result


# --------------------------------------------------------------------------- sweeps

def parse_vary(spec: str):
    """``key=start:stop:steps`` -> ``(key, values)`` with ``steps`` points inclusive."""
    try:
        key, _, rng = spec.partition("=")
        start, stop, steps = rng.split(":")
        steps = int(steps)
        if steps < 1:
            raise ValueError
        values = np.linspace(float(start), float(stop), steps)
    except ValueError:
        raise ConfigError(f"--vary expects key=start:stop:steps, got {spec!r}") from None
    try:
        resolve_key(key.strip())
    except KeyError:
        raise ConfigError(f"unknown sweep key {key!r}") from None
    return key.strip(), [float(v) for v in values]


def _sweep_one(args):
    cfg, out = args
    m = run_scenario(cfg, out)
    return m.to_dict()


def sweep(cfg: ScenarioConfig, key: str, values, out_root, workers: int | None = None) -> dict:
    """Run one scenario per value of ``key``, each into ``out_root/<key>=<value>``.

    Returns ``{value: manifest_dict}``.  Runs are independent and fanned out
    over a process pool.
    """
    jobs = []
    for v in values:
        c = apply_overrides(cfg, [(key, repr(v), None)])
        jobs.append((c, Path(out_root) / f"{key}={v:.6g}"))
    if workers == 1 or len(jobs) == 1:
        results = [_sweep_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_one, jobs))
    return dict(zip(values, results))
