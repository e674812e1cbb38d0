import math

import pytest

from rainbow_dkp import spectrum, sweep
from rainbow_dkp.errors import ConfigError, ParameterError
from rainbow_dkp.rainbow import Scenario
from rainbow_dkp.sweep import SweepConfig

CASE2_EXAMPLE = 1.7571907404279178

POINT_CONFIG = """\
# single point, case 2 example
scenario = case2
epsilon = 0.2
alpha = 0.5
mass_ratio = 0.8
n = 1
m = 1
omega_min = 1.0
omega_max = 1.0
omega_steps = 2
"""


def _single(**over):
    kw = dict(scenario="case2", epsilon=[0.2], alpha=[0.5], mass_ratio=[0.8], n=[1], m=[1],
              omega_min=1.0, omega_max=2.0, omega_steps=2, omega_values=(1.0,))
    kw.update(over)
    return SweepConfig(**kw)


def test_single_point_pair():
    table = sweep.run_sweep(_single())
    assert [r.branch for r in table.rows] == ["plus", "minus"]
    assert table.rows[0].energy_ratio == pytest.approx(CASE2_EXAMPLE, abs=1e-12)
    assert table.rows[1].energy_ratio == -table.rows[0].energy_ratio


def test_csv_shape():
    table = sweep.run_sweep(_single(branches=("plus",)))
    text = sweep.to_csv(table)
    lines = text.split("\n")
    assert lines[0] == "scenario,n,m,alpha,epsilon,mass_ratio,omega_ratio,branch,energy_ratio,physical"
    assert text.count("\n") == 2 and "\r" not in text
    assert lines[1].startswith("case2,1,1,0.5,0.20000000000000001,0.80000000000000004,1,plus,1.75719074042791")


def test_unphysical_row_has_empty_energy():
    cfg = _single(scenario="case3", epsilon=[0.5], omega_values=(0.6,), branches=("minus",))
    row = sweep.to_csv(sweep.run_sweep(cfg)).splitlines()[1]
    assert row.endswith(",minus,,false")


def test_json_roundtrip():
    table = sweep.run_sweep(_single(omega_values=(0.5, 1.0, 3.0)))
    back = sweep.table_from_json(sweep.to_json(table))
    assert back.rows == table.rows


def test_determinism_across_threads(monkeypatch):
    cfg = SweepConfig("case3", [0.2, 0.5], [0.3, 0.9], [0.5, 0.8], [0, 1], [-1, 1], 0.01, 2.0, 25)
    monkeypatch.setenv("RAINBOW_DKP_THREADS", "1")
    serial = sweep.to_csv(sweep.run_sweep(cfg))
    monkeypatch.setenv("RAINBOW_DKP_THREADS", "8")
    parallel = sweep.to_csv(sweep.run_sweep(cfg))
    assert serial == parallel
    assert sweep.to_json(sweep.run_sweep(cfg)) == sweep.to_json(sweep.run_sweep(cfg))


def test_thread_env_validation(monkeypatch):
    monkeypatch.setenv("RAINBOW_DKP_THREADS", "0")
    assert sweep.worker_count() >= 1
    monkeypatch.setenv("RAINBOW_DKP_THREADS", "two")
    with pytest.raises(ConfigError):
        sweep.worker_count()


def test_cutoff_flip_in_sweep():
    cfg = SweepConfig("case3", [0.5], [0.5], [0.8], [1], [1], 0.4, 0.7, 31, branches=("minus",))
    rows = sweep.run_sweep(cfg).rows
    flips = [i for i in range(1, len(rows)) if rows[i - 1].physical and not rows[i].physical]
    assert len(flips) == 1
    first = rows[flips[0]].omega_ratio
    assert first > 0.525 and rows[flips[0] - 1].omega_ratio <= 0.525
    assert all(not r.physical for r in rows[flips[0]:])


def test_parse_config_file(tmp_path):
    path = tmp_path / "point.cfg"
    path.write_text(POINT_CONFIG.replace("omega_max = 1.0", "omega_max = 3.0"))
    cfg = sweep.load_config(path)
    assert cfg.scenario is Scenario.CASE2 and cfg.omegas() == [1.0, 3.0]


@pytest.mark.parametrize(
    "text, field",
    [
        (POINT_CONFIG, "omega_max"),
        (POINT_CONFIG.replace("alpha = 0.5", "alpha = 1.5"), "alpha"),
        (POINT_CONFIG.replace("omega_steps = 2", "omega_steps = 1"), "omega_steps"),
        (POINT_CONFIG.replace("n = 1", "n = 1.5"), "n"),
        (POINT_CONFIG.replace("scenario = case2", "scenario = case7"), "scenario"),
        (POINT_CONFIG + "colour = red\n", "colour"),
        (POINT_CONFIG.replace("m = 1\n", ""), "m"),
        (POINT_CONFIG.replace("omega_max = 1.0", "omega_max = 2.0") + "output = gap\n", "output"),
    ],
)
def test_config_errors_name_field(text, field):
    with pytest.raises(ConfigError, match=field):
        sweep.parse_config(text)


def test_gap_output():
    cfg = SweepConfig("case1", [0.5], [0.3, 0.9], [0.8], [1], [1], 1.0, 2.0, 2, output="gap")
    rows = sweep.run_sweep(cfg).rows
    assert {r.branch for r in rows} == {"gap"}
    p = spectrum.ModelParams(0.8, 1.0, 0.5, 0.3)
    assert rows[0].energy_ratio == spectrum.gap_width_case1(p, spectrum.QuantumNumbers(1, 1))


def test_emit_rechecks_self_consistency(tmp_path):
    table = sweep.run_sweep(_single())
    table.rows[0].energy_ratio *= 1 + 1e-8
    with pytest.raises(Exception, match="self-consistency"):
        sweep.emit(table, "csv", tmp_path / "bad.csv")


def test_emit_reports_path(tmp_path):
    table = sweep.run_sweep(_single())
    with pytest.raises(OSError, match="nope"):
        sweep.emit(table, "csv", tmp_path / "nope" / "x.csv")


def test_svg_polylines():
    preset, table = sweep.run_figure(3)
    svg = sweep.to_svg(table, preset.title)
    assert svg.startswith("<?xml") and "<svg" in svg
    assert svg.count("<polyline") == 2 * len(sweep.DEFAULT_ALPHAS)
    assert "omega/E_P" in svg and "E/E_P" in svg


def test_figure_preset_examples():
    cfg3 = sweep.figure_preset(3).configs[0]
    assert (cfg3.scenario, cfg3.mass_ratio, cfg3.epsilon, cfg3.m, cfg3.n) == (Scenario.CASE2, [0.8], [0.2], [1], [1])
    cfg6 = sweep.figure_preset(6).configs[0]
    assert cfg6.scenario is Scenario.CASE3 and cfg6.branches == (spectrum.Branch.MINUS,)
    assert (cfg6.mass_ratio, cfg6.epsilon) == ([0.8], [0.5])
    with pytest.raises(ParameterError):
        sweep.figure_preset(7)


@pytest.mark.parametrize("fig_id", range(1, 7))
def test_figure_checks_pass(fig_id, tmp_path):
    csv_path, svg_path, checks = sweep.write_figure(fig_id, tmp_path)
    assert csv_path.name == f"fig{fig_id}.csv" and svg_path.exists()
    assert checks and all(checks.values()), checks


def test_figure_alpha_override():
    preset, table = sweep.run_figure(5, alphas=[0.4])
    assert {r.alpha for r in table.rows} == {0.4}
    assert all(sweep.check_figure(preset, table).values())


def test_fig6_csv_marks_cutoff(tmp_path):
    csv_path, _, _ = sweep.write_figure(6, tmp_path)
    for line in csv_path.read_text().splitlines()[1:]:
        cols = line.split(",")
        if float(cols[3]) == 0.5:
            omega, physical = float(cols[6]), cols[9]
            assert physical == ("true" if omega < 0.525 else "false")
            assert (cols[8] == "") == (physical == "false")
    assert math.isclose(spectrum.cutoff_omega_case3(spectrum.ModelParams(0.8, 1, 0.5, 0.5), spectrum.QuantumNumbers(1, 1)), 0.525)
