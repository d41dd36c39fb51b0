import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rabibloch import files
from rabibloch.scenarios import (PRESET_INFO, ConfigError, apply_overrides, compare_rwa,
                                 default_tau_end, format_config, output_dir, parse_config,
                                 parse_vary, preset, run_scenario, sweep, verify_manifest)
from rabibloch.trapping import eigen_wavenumber

ALL = list(PRESET_INFO)


def short(cfg, tau_end=40.0, **extra):
    items = [("run.tau_end", repr(tau_end), None)] + [(k, v, None) for k, v in extra.items()]
    return apply_overrides(cfg, items)


def test_preset_examples():
    d = preset("d").drive
    assert (d.omega_B, d.omega_R, d.K) == (3.9e-3, 2.5e-2, 0.0)
    assert preset("b").drive.omega_B == 0
    iii = preset("iii")
    assert iii.initial.kind == "trapped"
    assert (iii.drive.omega_B, iii.drive.omega_R, iii.drive.K) == (3.9e-3, 2.5e-2, 0.0)


@pytest.mark.parametrize("pid", ALL)
def test_presets_share_numerics(pid):
    cfg = preset(pid)
    assert cfg.chain.n_sites == 128 and cfg.chain.delta_eps == 0.5
    assert cfg.drive.nu == 1.0 and cfg.run.d_tau == 0.02
    assert cfg.initial.center == 80 and cfg.initial.width == 20
    assert cfg.run.d_tau * cfg.drive.nu <= 0.125
    assert cfg.chain.t_a == 3.5e-2


def test_regime_table():
    assert preset("a").drive.omega_R == 0
    c = preset("c").drive
    assert c.omega_B == 0 and c.K != 0
    e = preset("e")
    assert e.drive.K == -0.624 and e.chain.t_a == e.chain.t_b
    assert preset("f").chain.t_b == 0 and preset("f").drive.K == 0
    assert preset("f-oblique").drive.K == -0.624
    for pid in ("i", "ii", "iii", "iv", "v"):
        cfg = preset(pid)
        assert cfg.chain.t_b == 3.5e-3
        assert cfg.initial.momentum == eigen_wavenumber(2.5e-2, 3.5e-2, 3.5e-3).ha


def test_unknown_preset():
    with pytest.raises(ConfigError):
        preset("g")


def test_default_run_length():
    assert default_tau_end(preset("a").drive) == pytest.approx(2.5 * 2 * math.pi / 3.9e-3)
    assert preset("d").tau_end == pytest.approx(4026, rel=1e-3)
    assert preset("b").tau_end == pytest.approx(10 * 2 * math.pi / 2.5e-2)


def test_parse_config_examples():
    assert parse_config("preset = d") == preset("d")
    cfg = parse_config("preset = d\nomega_R = 0.05")
    assert cfg.drive.omega_R == 0.05
    assert cfg.drive.omega_B == preset("d").drive.omega_B
    with pytest.raises(ConfigError):
        parse_config("d_tau = -1")


def test_parse_config_grammar():
    text = """# comment line
    chain.n_sites = 32   # trailing comment
    t_a = 0.03+0.01j
    initial.center = 10
    run.probes = 5, sum
    run.rwa_probes = 4 8 12
    outputs.grids = no
    """
    cfg = parse_config(text)
    assert cfg.chain.n_sites == 32
    assert cfg.chain.t_a == 0.03 + 0.01j
    assert cfg.run.probes == (5, "sum")
    assert cfg.run.rwa_probes == (4, 8, 12)
    assert cfg.outputs.grids is False
    assert cfg.name == "custom"
    assert parse_config("name = scan7\npreset = b").name == "scan7"


@pytest.mark.parametrize("text, line", [
    ("preset = a\n\nfoo = 1", 3),
    ("preset = a\nomega_B 3", 2),
    ("omega_B = fast", 1),
    ("chain.n_sites = 64\nrun.probes = 80", 2),
    ("preset = zz", 1),
    ("preset = a\npreset = b", 2),
])
def test_parse_config_errors_carry_line_numbers(text, line):
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_parse_config_constraint_violations():
    with pytest.raises(ConfigError):
        parse_config("preset = b\nrun.d_tau = 0.2")
    with pytest.raises(ConfigError):
        parse_config("run.record_every = 500")
    with pytest.raises(ConfigError):
        parse_config("run.variant = exact")


@given(pid=st.sampled_from(ALL), wr=st.floats(0, 0.1), ka=st.floats(-3, 3), n=st.integers(1, 6))
def test_config_text_round_trip(pid, wr, ka, n):
    cfg = apply_overrides(preset(pid), [("drive.omega_R", repr(wr), None), ("drive.K", repr(ka), None),
                                        ("run.record_every", str(n), None)])
    assert parse_config(format_config(cfg)) == cfg


def test_output_dir_resolution(monkeypatch, tmp_path):
    monkeypatch.setenv("RBO_OUT_DIR", str(tmp_path))
    assert output_dir(preset("a")) == tmp_path / "a"
    assert output_dir(preset("a"), "x") == output_dir(preset("a"), "x")


def test_run_writes_grids_series_spectra_and_manifest(tmp_path):
    cfg = short(preset("d"), 100.0)
    m = run_scenario(cfg, tmp_path)
    grid, meta = files.read_grid(tmp_path / "grids" / "inversion.f64")
    assert grid.shape == (m.n_records, 128)
    assert meta["dtype"] == "<f8" and len(meta["tau"]) == m.n_records
    assert meta["tau_step"] == pytest.approx(0.5)
    tau, vals = files.read_columns(tmp_path / "series" / "inversion_site80.txt")
    np.testing.assert_array_equal(vals, m.series["inversion_site80"].values)
    assert (tmp_path / "spectra" / "inversion_site80.peaks.txt").exists()
    man = json.loads((tmp_path / "manifest.json").read_text())
    assert set(man["files"]) == set(m.files) and "config.txt" in man["files"]
    assert verify_manifest(tmp_path) == []
    assert parse_config((tmp_path / "config.txt").read_text()).drive == cfg.drive
    # tamper with one file and the check notices
    (tmp_path / "series" / "inversion_sum.txt").write_text("0 0\n")
    assert verify_manifest(tmp_path) == ["series/inversion_sum.txt"]


def test_rerun_is_byte_identical(tmp_path):
    cfg = short(preset("e"), 60.0)
    m1 = run_scenario(cfg, tmp_path / "one")
    m2 = run_scenario(cfg, tmp_path / "two")
    assert m1.files == m2.files


def test_zero_length_run(tmp_path):
    m = run_scenario(short(preset("a"), 0.0), tmp_path)
    assert m.n_records == 0
    assert (tmp_path / "manifest.json").exists()
    assert not (tmp_path / "grids").exists()
    tau, vals = files.read_columns(tmp_path / "series" / "inversion_site80.txt")
    assert tau.size == 0 and vals.size == 0


def test_edge_leakage_warning_recorded():
    m = run_scenario(short(preset("a"), 20.0, **{"initial.center": "126", "initial.width": "3"}), write=False)
    assert m.warnings and "edge leakage" in m.warnings[0]


def test_compare_rwa_without_drive_is_identical(tmp_path):
    cfg = short(preset("a"), 200.0)
    res = compare_rwa(cfg, tmp_path, write=True)
    assert res.probes == (40, 60, 80)
    for p in res.probes:
        assert np.max(np.abs(res.full[p] - res.rwa[p])) <= 1e-12
    assert (tmp_path / "rwa" / "inversion_site60.txt").exists()
    assert json.loads((tmp_path / "rwa" / "comparison.json").read_text())["probes"] == ["40", "60", "80"]


def test_compare_rwa_regime_d_dominant_lines_agree():
    res = compare_rwa(preset("d"))
    for p in res.probes:
        assert abs(res.peak_full[p] - res.peak_rwa[p]) <= 2 * res.resolution + 1e-15
    assert all(v > 0 for v in res.nrms.values())


def test_parse_vary():
    key, values = parse_vary("drive.omega_R=0:0.02:3")
    assert key == "drive.omega_R" and values == [0.0, 0.01, 0.02]
    for bad in ("omega_R=0:1", "nope=0:1:3", "omega_R=0:1:0"):
        with pytest.raises(ConfigError):
            parse_vary(bad)


def test_sweep_writes_disjoint_directories(tmp_path):
    cfg = short(preset("b"), 20.0)
    res = sweep(cfg, "drive.omega_R", [0.01, 0.02], tmp_path, workers=2)
    assert sorted(res) == [0.01, 0.02]
    assert res[0.02]["config"]["drive"]["omega_R"] == 0.02
    for v in ("0.01", "0.02"):
        assert verify_manifest(tmp_path / f"drive.omega_R={v}") == []
