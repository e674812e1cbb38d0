"""Parameter sweeps, figure presets and CSV/JSON/SVG output."""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from . import spectrum
from .errors import ConfigError, ParameterError, RainbowDKPError, UnphysicalError
from .rainbow import Scenario
from .spectrum import Branch, ModelParams, QuantumNumbers
from .svgplot import line_plot
from .wavefunction import RadialGrid, build_spinor, current_jt, default_rmax

ENERGY_COLUMNS = (
    "scenario", "n", "m", "alpha", "epsilon", "mass_ratio", "omega_ratio", "branch", "energy_ratio", "physical",
)
PROFILE_COLUMNS = (
    "scenario", "n", "m", "alpha", "epsilon", "mass_ratio", "omega_ratio", "branch", "energy_ratio", "r", "jt",
)
OUTPUTS = ("energies", "gap", "current-profile")
CONFIG_KEYS = (
    "scenario", "epsilon", "alpha", "mass_ratio", "omega_min", "omega_max", "omega_steps", "omega_scale", "n", "m", "output",
)
SELF_CONSISTENCY_RTOL = 1e-10
PROFILE_POINTS = 400


def worker_count() -> int:
    """Thread cap from ``RAINBOW_DKP_THREADS`` (0 or unset: automatic)."""
    raw = os.environ.get("RAINBOW_DKP_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"RAINBOW_DKP_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ConfigError("RAINBOW_DKP_THREADS must be >= 0")
    return n or min(8, os.cpu_count() or 1)


@dataclass
class SweepConfig:
    scenario: Scenario
    epsilon: list[float]
    alpha: list[float]
    mass_ratio: list[float]
    n: list[int]
    m: list[int]
    omega_min: float
    omega_max: float
    omega_steps: int
    omega_scale: str = "linear"
    output: str = "energies"
    branches: tuple[Branch, ...] = (Branch.PLUS, Branch.MINUS)
    # explicit frequency list; replaces the omega range when given
    omega_values: tuple[float, ...] | None = None

    def __post_init__(self):
        self.scenario = Scenario.parse(self.scenario)
        self.branches = tuple(Branch(b) for b in self.branches)
        self.validate()

    def validate(self):
        def bad(name, msg):
            raise ConfigError(f"{name}: {msg}")

        for name in ("epsilon", "alpha", "mass_ratio", "n", "m"):
            if not list(getattr(self, name)):
                bad(name, "needs at least one value")
        if any(not (e >= 0 and math.isfinite(e)) for e in self.epsilon):
            bad("epsilon", "values must be finite and >= 0")
        if any(not (0 < a <= 1) for a in self.alpha):
            bad("alpha", "values must lie in (0, 1]")
        if any(not (mr > 0 and math.isfinite(mr)) for mr in self.mass_ratio):
            bad("mass_ratio", "values must be > 0")
        if any(int(v) != v or v < 0 for v in self.n):
            bad("n", "values must be integers >= 0")
        if any(int(v) != v for v in self.m):
            bad("m", "values must be integers")
        if self.omega_values is not None:
            if not self.omega_values or any(not (w > 0 and math.isfinite(w)) for w in self.omega_values):
                bad("omega_values", "values must be finite and > 0")
        elif int(self.omega_steps) != self.omega_steps or self.omega_steps < 2:
            bad("omega_steps", "must be an integer >= 2")
        elif not (self.omega_min > 0 and math.isfinite(self.omega_max)):
            bad("omega_min", "must be > 0")
        elif not self.omega_max > self.omega_min:
            bad("omega_max", "must exceed omega_min")
        if self.omega_scale not in ("linear", "log"):
            bad("omega_scale", "must be 'linear' or 'log'")
        if self.output not in OUTPUTS:
            bad("output", f"must be one of {', '.join(OUTPUTS)}")
        if self.output == "gap" and self.scenario is not Scenario.CASE1:
            bad("output", "gap is defined for case1 only")

    def omegas(self) -> list[float]:
        if self.omega_values is not None:
            return [float(w) for w in self.omega_values]
        if self.omega_scale == "log":
            vals = np.geomspace(self.omega_min, self.omega_max, self.omega_steps)
        else:
            vals = np.linspace(self.omega_min, self.omega_max, self.omega_steps)
        return [float(v) for v in vals]


def _split_list(raw: str, cast, key: str):
    try:
        return [cast(v.strip()) for v in raw.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {raw!r}") from None


def _as_int(text: str) -> int:
    v = float(text)
    if v != int(v):
        raise ValueError(text)
    return int(v)


def parse_config(text: str) -> SweepConfig:
    """Parse the line-oriented ``key = value`` sweep format (``#`` starts a comment)."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value
    required = [k for k in CONFIG_KEYS if k not in ("omega_scale", "output")]
    missing = [k for k in required if k not in raw]
    if missing:
        raise ConfigError(f"missing keys: {', '.join(missing)}")
    try:
        scenario = Scenario.parse(raw["scenario"])
    except ParameterError as exc:
        raise ConfigError(f"scenario: {exc}") from None
    try:
        omega_min = float(raw["omega_min"])
        omega_max = float(raw["omega_max"])
    except ValueError:
        raise ConfigError("omega_min/omega_max: not a number") from None
    try:
        steps = _as_int(raw["omega_steps"])
    except ValueError:
        raise ConfigError(f"omega_steps: not an integer: {raw['omega_steps']!r}") from None
    return SweepConfig(
        scenario=scenario,
        epsilon=_split_list(raw["epsilon"], float, "epsilon"),
        alpha=_split_list(raw["alpha"], float, "alpha"),
        mass_ratio=_split_list(raw["mass_ratio"], float, "mass_ratio"),
        n=_split_list(raw["n"], _as_int, "n"),
        m=_split_list(raw["m"], _as_int, "m"),
        omega_min=omega_min,
        omega_max=omega_max,
        omega_steps=steps,
        omega_scale=raw.get("omega_scale", "linear"),
        output=raw.get("output", "energies"),
    )


def load_config(path) -> SweepConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


@dataclass
class SweepRow:
    scenario: str
    n: int
    m: int
    alpha: float
    epsilon: float
    mass_ratio: float
    omega_ratio: float
    branch: str
    energy_ratio: float | None
    physical: bool
    r: float | None = None
    jt: float | None = None


@dataclass
class SweepTable:
    kind: str
    rows: list[SweepRow] = field(default_factory=list)

    @property
    def columns(self) -> tuple[str, ...]:
        return PROFILE_COLUMNS if self.kind == "current-profile" else ENERGY_COLUMNS

    def __len__(self):
        return len(self.rows)


def _points(cfg: SweepConfig):
    # lexicographic in the column order, preserving each list's input order
    return list(itertools.product(cfg.n, cfg.m, cfg.alpha, cfg.epsilon, cfg.mass_ratio, cfg.omegas()))


def _energy_rows(cfg: SweepConfig, point) -> list[SweepRow]:
    n, m, alpha, eps, mass, omega = point
    p = ModelParams(mass, omega, eps, alpha)
    q = QuantumNumbers(n, m)
    base = dict(scenario=cfg.scenario.value, n=n, m=m, alpha=alpha, epsilon=eps, mass_ratio=mass, omega_ratio=omega)
    if cfg.output == "gap":
        try:
            gap = spectrum.gap_width_case1(p, q)
            return [SweepRow(**base, branch="gap", energy_ratio=gap, physical=True)]
        except UnphysicalError:
            return [SweepRow(**base, branch="gap", energy_ratio=None, physical=False)]
    rows = []
    for br in cfg.branches:
        res = spectrum.energy(cfg.scenario, p, q, br)
        rows.append(
            SweepRow(**base, branch=br.value, energy_ratio=res.energy if res.physical else None, physical=res.physical)
        )
    return rows


def _profile_rows(cfg: SweepConfig, point, r_max: float) -> list[SweepRow]:
    n, m, alpha, eps, mass, omega = point
    p = ModelParams(mass, omega, eps, alpha)
    q = QuantumNumbers(n, m)
    rows = []
    for br in cfg.branches:
        res = spectrum.energy(cfg.scenario, p, q, br)
        base = dict(
            scenario=cfg.scenario.value, n=n, m=m, alpha=alpha, epsilon=eps, mass_ratio=mass,
            omega_ratio=omega, branch=br.value,
        )
        if not res.physical:
            rows.append(SweepRow(**base, energy_ratio=None, physical=False))
            continue
        grid = RadialGrid(r_max, PROFILE_POINTS)
        sp = build_spinor(p, q, res, grid)
        jt = current_jt(sp)
        for r, v in zip(grid.nodes, jt):
            rows.append(SweepRow(**base, energy_ratio=res.energy, physical=True, r=float(r), jt=float(v)))
    return rows


def run_sweep(cfg: SweepConfig, threads: int | None = None) -> SweepTable:
    """Evaluate every parameter tuple; rows come out in input order regardless of threading."""
    cfg.validate()
    points = _points(cfg)
    if cfg.output == "current-profile":
        r_max = max(
            default_rmax(ModelParams(mass, om, eps, al), QuantumNumbers(n, m))
            for n, m, al, eps, mass, om in points
        )

        def job(pt):
            return _profile_rows(cfg, pt, r_max)
    else:

        def job(pt):
            return _energy_rows(cfg, pt)

    threads = threads or worker_count()
    if threads > 1 and len(points) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(job, points))
    else:
        chunks = [job(pt) for pt in points]
    return SweepTable(cfg.output, [row for chunk in chunks for row in chunk])


# --- output --------------------------------------------------------------------


def _check_row(row: SweepRow):
    if not row.physical or row.branch not in ("plus", "minus") or row.energy_ratio is None:
        return
    p = ModelParams(row.mass_ratio, row.omega_ratio, row.epsilon, row.alpha)
    q = QuantumNumbers(row.n, row.m)
    target = spectrum.kappa_sq_target(p, q)
    got = spectrum.kappa_sq(p.pair(row.scenario), row.energy_ratio, p.mass, p.omega)
    if abs(got - target) > SELF_CONSISTENCY_RTOL * abs(target):
        raise RainbowDKPError(
            f"row fails self-consistency: kappa^2(E={row.energy_ratio!r}) = {got!r}, expected {target!r}"
        )


def _csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def to_csv(table: SweepTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        d = asdict(row)
        w.writerow([_csv_value(d[c]) for c in table.columns])
    return buf.getvalue()


def to_json(table: SweepTable) -> str:
    objs = []
    for row in table.rows:
        d = asdict(row)
        objs.append({c: d[c] for c in table.columns})
    return json.dumps(objs, indent=1) + "\n"


def table_from_json(text: str, kind: str = "energies") -> SweepTable:
    names = {f.name for f in fields(SweepRow)}
    return SweepTable(kind, [SweepRow(**{k: v for k, v in obj.items() if k in names}) for obj in json.loads(text)])


def _series(table: SweepTable):
    """Group rows into plot series; unphysical points are dropped."""
    groups: dict[tuple, tuple[list, list]] = {}
    profile = table.kind == "current-profile"
    for row in table.rows:
        if not row.physical or row.energy_ratio is None:
            continue
        if profile:
            key = (row.mass_ratio, row.alpha, row.omega_ratio, row.epsilon, row.n, row.m, row.branch)
            x, y = row.r, row.jt
        else:
            key = (row.mass_ratio, row.alpha, row.epsilon, row.n, row.m, row.branch)
            x, y = row.omega_ratio, row.energy_ratio
        xs, ys = groups.setdefault(key, ([], []))
        xs.append(x)
        ys.append(y)
    out = []
    for key, (xs, ys) in groups.items():
        if profile:
            label = f"M={key[0]:g} a={key[1]:g} w={key[2]:g} {key[6]}"
        else:
            label = f"M={key[0]:g} a={key[1]:g} {key[5]}"
        out.append((label, xs, ys))
    return out


def to_svg(table: SweepTable, title: str = "") -> str:
    if table.kind == "current-profile":
        xlabel, ylabel = "r/E_P", "J^t/E_P"
    elif table.kind == "gap":
        xlabel, ylabel = "omega/E_P", "(E+ - E-)/E_P"
    else:
        xlabel, ylabel = "omega/E_P", "E/E_P"
    return line_plot(_series(table), xlabel, ylabel, title)


def emit(table: SweepTable, fmt: str, path) -> Path:
    """Write ``table`` as csv, json or svg; physical energies are re-verified first."""
    for row in table.rows:
        _check_row(row)
    if fmt == "csv":
        text = to_csv(table)
    elif fmt == "json":
        text = to_json(table)
    elif fmt == "svg":
        text = to_svg(table)
    else:
        raise ConfigError(f"unknown output format {fmt!r}")
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {path}: {exc.strerror}") from exc
    return path


# --- figure presets --------------------------------------------------------------

DEFAULT_ALPHAS = [0.3, 0.5, 0.9]
FIG4_OMEGAS = (1.0, 2.0, 5.0)


@dataclass
class FigurePreset:
    id: int
    title: str
    configs: list[SweepConfig]
    checks: list[str]


def figure_preset(fig_id: int, alphas=None) -> FigurePreset:
    """Sweep configuration and qualitative checks for figure ``fig_id`` (1..6)."""
    alphas = list(alphas or DEFAULT_ALPHAS)
    if fig_id == 1:
        cfgs = [SweepConfig(Scenario.CASE1, [0.5], alphas, [0.1, 0.8], [1], [1], 0.01, 1.0, 100)]
        return FigurePreset(1, "case 1: E/E_P vs omega/E_P, eps=0.5, m=1, n=1", cfgs, ["gap-monotone-in-alpha"])
    if fig_id == 2:
        cfgs = [
            SweepConfig(Scenario.CASE1, [1.0], alphas, [0.2, 0.8], [1], [1], 5.0, 5.0, 2,
                        output="current-profile", branches=(Branch.PLUS,), omega_values=(5.0,))
        ]
        return FigurePreset(2, "case 1: J^t vs r, eps=1, m=1, n=1, omega=5", cfgs, ["unit-probability"])
    if fig_id == 3:
        cfgs = [SweepConfig(Scenario.CASE2, [0.2], alphas, [0.8], [1], [1], 0.01, 1e4, 120, omega_scale="log")]
        return FigurePreset(3, "case 2: E/E_P vs omega/E_P, M=0.8, eps=0.2, m=1, n=1", cfgs,
                            ["plus-minus-symmetry", "saturation-at-inverse-sqrt-eps"])
    if fig_id == 4:
        cfgs = [
            SweepConfig(Scenario.CASE2, [1.0], [0.3], [0.8], [1], [1], min(FIG4_OMEGAS), max(FIG4_OMEGAS), 2,
                        output="current-profile", branches=(Branch.PLUS,), omega_values=FIG4_OMEGAS)
        ]
        return FigurePreset(4, "case 2: J^t vs r, M=0.8, eps=1, m=1, n=1, alpha=0.3", cfgs, ["unit-probability"])
    if fig_id == 5:
        cfgs = [SweepConfig(Scenario.CASE3, [0.5], alphas, [0.8], [1], [1], 0.01, 2.0, 200, branches=(Branch.PLUS,))]
        return FigurePreset(5, "case 3 plus branch, M=0.8, eps=0.5, m=1, n=1", cfgs, ["plus-increasing-concave"])
    if fig_id == 6:
        cfgs = [SweepConfig(Scenario.CASE3, [0.5], alphas, [0.8], [1], [1], 0.01, 1.0, 100, branches=(Branch.MINUS,))]
        return FigurePreset(6, "case 3 minus branch, M=0.8, eps=0.5, m=1, n=1", cfgs, ["minus-cutoff-divergence"])
    raise ParameterError(f"figure id must be 1..6, got {fig_id}")


def run_figure(fig_id: int, alphas=None) -> tuple[FigurePreset, SweepTable]:
    preset = figure_preset(fig_id, alphas)
    rows = []
    for cfg in preset.configs:
        rows.extend(run_sweep(cfg).rows)
    return preset, SweepTable(preset.configs[0].output, rows)


def _by_series(table: SweepTable, *keys):
    groups: dict[tuple, list[SweepRow]] = {}
    for row in table.rows:
        groups.setdefault(tuple(getattr(row, k) for k in keys), []).append(row)
    return groups


def check_figure(preset: FigurePreset, table: SweepTable) -> dict[str, bool]:
    """Evaluate the qualitative statements attached to a preset."""
    results = {}
    for name in preset.checks:
        results[name] = _CHECKS[name](table)
    return results


def _check_gap_monotone(table):
    ok = True
    for (mass, omega), rows in _by_series(table, "mass_ratio", "omega_ratio").items():
        gaps = {}
        for al, rs in _by_series(SweepTable(table.kind, rows), "alpha").items():
            e = {r.branch: r.energy_ratio for r in rs if r.physical}
            if "plus" in e and "minus" in e:
                gaps[al[0]] = e["plus"] - e["minus"]
        ordered = [gaps[a] for a in sorted(gaps)]
        ok &= all(b < a for a, b in zip(ordered, ordered[1:]))
    return ok


def _check_symmetry(table):
    ok = True
    for _, rows in _by_series(table, "mass_ratio", "alpha", "omega_ratio").items():
        e = {r.branch: r.energy_ratio for r in rows}
        ok &= e.get("plus") is not None and e.get("plus") == -e.get("minus")
    return ok


def _check_saturation(table):
    ok = True
    for (al, eps), rows in _by_series(table, "alpha", "epsilon").items():
        plus = sorted((r.omega_ratio, r.energy_ratio) for r in rows if r.branch == "plus")
        vals = [e for _, e in plus]
        limit = 1.0 / math.sqrt(eps)
        ok &= all(b >= a for a, b in zip(vals, vals[1:]))
        ok &= all(v < limit for v in vals)
        ok &= abs(vals[-1] - limit) / limit < 1e-2
    return ok


def _check_concave(table):
    ok = True
    for _, rows in _by_series(table, "mass_ratio", "alpha").items():
        pts = sorted((r.omega_ratio, r.energy_ratio) for r in rows if r.branch == "plus")
        w = np.array([a for a, _ in pts])
        e = np.array([b for _, b in pts])
        slope = np.diff(e) / np.diff(w)
        ok &= bool(np.all(slope > 0))
        ok &= bool(np.all(np.diff(slope) <= 1e-12 * np.max(np.abs(slope))))
    return ok


def _check_cutoff(table):
    ok = True
    for (mass, al, eps, n, m), rows in _by_series(table, "mass_ratio", "alpha", "epsilon", "n", "m").items():
        wc = spectrum.cutoff_omega_case3(ModelParams(mass, 1.0, eps, al), QuantumNumbers(n, m))
        minus = sorted((r.omega_ratio, r.physical, r.energy_ratio) for r in rows if r.branch == "minus")
        ok &= all(phys == (w < wc) for w, phys, _ in minus)
        phys_e = [abs(e) for _, phys, e in minus if phys]
        ok &= all(b > a for a, b in zip(phys_e, phys_e[1:]))
        # steepening towards the cutoff
        ok &= len(phys_e) < 3 or (phys_e[-1] - phys_e[-2]) > (phys_e[1] - phys_e[0])
    return ok


def _check_probability(table):
    ok = True
    for _, rows in _by_series(table, "mass_ratio", "alpha", "omega_ratio", "branch").items():
        rs = [r for r in rows if r.physical]
        r = np.array([0.0] + [x.r for x in rs])
        jt = np.array([0.0] + [x.jt for x in rs])
        total = abs(float(np.trapezoid(jt * 2 * math.pi * rs[0].alpha * r, r)))
        ok &= abs(total - 1.0) < 1e-3
    return ok


_CHECKS = {
    "gap-monotone-in-alpha": _check_gap_monotone,
    "plus-minus-symmetry": _check_symmetry,
    "saturation-at-inverse-sqrt-eps": _check_saturation,
    "plus-increasing-concave": _check_concave,
    "minus-cutoff-divergence": _check_cutoff,
    "unit-probability": _check_probability,
}


def write_figure(fig_id: int, out_dir, alphas=None) -> tuple[Path, Path, dict[str, bool]]:
    preset, table = run_figure(fig_id, alphas)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = emit(table, "csv", out_dir / f"fig{fig_id}.csv")
    svg_path = out_dir / f"fig{fig_id}.svg"
    svg_path.write_text(to_svg(table, preset.title), encoding="utf-8")
    return csv_path, svg_path, check_figure(preset, table)
