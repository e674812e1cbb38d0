"""Invariant suites behind ``rainbow-dkp verify``."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from . import algebra, fd_oracle, rainbow, spectrum, wavefunction
from .errors import NoSignChangeError, RainbowDKPError
from .rainbow import RainbowPair, Scenario
from .spectrum import Branch, ModelParams, QuantumNumbers

CASES = (Scenario.CASE1, Scenario.CASE2, Scenario.CASE3)


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def _grid_results():
    for p, q in spectrum.parameter_grid():
        for sc in CASES:
            yield p, q, sc, spectrum.energies(sc, p, q)


def suite_spectrum() -> list[CheckResult]:
    out = []
    worst_oracle = worst_self = worst_asym = worst_collapse = 0.0
    missing = sym_fail = mono_fail = 0
    count = 0
    for p, q, sc, (ep, em) in _grid_results():
        for res in (ep, em):
            if not res.physical:
                try:
                    spectrum.energy_implicit(sc, p, q, res.branch)
                    missing += 1  # the oracle found a root the closed form rejected
                except NoSignChangeError:
                    pass
                continue
            count += 1
            imp = spectrum.energy_implicit(sc, p, q, res.branch)
            worst_oracle = max(worst_oracle, abs(res.energy - imp.energy) / max(1.0, abs(res.energy)))
            target = spectrum.kappa_sq_target(p, q)
            worst_self = max(worst_self, abs(res.kappa_sq - target) / target)
        if sc is Scenario.CASE2 and not (ep.energy == -em.energy):
            sym_fail += 1
        if sc is Scenario.CASE1:
            expect = -2 * p.epsilon * p.mass**2 / (1 - p.epsilon**2 * p.mass**2)
            worst_asym = max(worst_asym, abs(ep.energy + em.energy - expect))
        if p.epsilon == 0.0:
            ref = math.sqrt(p.mass**2 + 2 * p.mass * p.omega * (2 * q.n + q.abs_j(p.alpha)))
            worst_collapse = max(worst_collapse, abs(ep.energy - ref), abs(em.energy + ref))
    out.append(CheckResult("spectrum", "closed form vs implicit root (1e-10)", worst_oracle <= 1e-10 and missing == 0,
                           f"{count} energies, max rel diff {worst_oracle:.2e}, unmatched {missing}"))
    out.append(CheckResult("spectrum", "self-consistency kappa^2 (1e-10)", worst_self <= 1e-10, f"max {worst_self:.2e}"))
    out.append(CheckResult("spectrum", "case2 E+ = -E- exactly", sym_fail == 0, f"{sym_fail} failures"))
    out.append(CheckResult("spectrum", "case1 branch sum (1e-12)", worst_asym <= 1e-12, f"max {worst_asym:.2e}"))
    out.append(CheckResult("spectrum", "eps=0 collapse (1e-12)", worst_collapse <= 1e-12, f"max {worst_collapse:.2e}"))

    for p, q in spectrum.parameter_grid():
        for sc in CASES:
            for br in Branch:
                e0 = spectrum.energy(sc, p, q, br)
                neighbours = (
                    (QuantumNumbers(q.n + 1, q.m), p),
                    (QuantumNumbers(q.n, abs(q.m) + 1), p),
                    (q, ModelParams(p.mass, p.omega * 1.5, p.epsilon, p.alpha)),
                )
                for qq, pp in neighbours:
                    e1 = spectrum.energy(sc, pp, qq, br)
                    if e0.physical and e1.physical and abs(e1.energy) < abs(e0.energy) * (1 - 1e-14):
                        mono_fail += 1
    out.append(CheckResult("spectrum", "|E| nondecreasing in n, |m|, omega", mono_fail == 0, f"{mono_fail} failures"))

    worst_sat = 0.0
    for eps in (0.2, 0.5, 1.0):
        e = spectrum.energy_case2(ModelParams(0.8, 1e6, eps, 0.5), QuantumNumbers(1, 1)).energy
        worst_sat = max(worst_sat, abs(abs(e) - eps**-0.5) * math.sqrt(eps))
    out.append(CheckResult("spectrum", "case2 saturation at 1/sqrt(eps) (1e-3)", worst_sat <= 1e-3, f"max rel {worst_sat:.2e}"))

    p, q = ModelParams(0.8, 1.0, 0.5, 0.5), QuantumNumbers(1, 1)
    wc = spectrum.cutoff_omega_case3(p, q)
    wb = spectrum.cutoff_omega_case3_bisect(p, q)
    cuts = [spectrum.cutoff_omega_case3(ModelParams(0.8, 1.0, 0.5, a), q) for a in (0.3, 0.5, 0.9)]
    ok = abs(wc - 0.525) <= 1e-8 and abs(wb - wc) <= 1e-8 and cuts[0] < cuts[1] < cuts[2]
    out.append(CheckResult("spectrum", "case3 cutoff omega_c = 0.525", ok, f"closed {wc:.12f} bisect {wb:.12f}"))
    out.extend(_residual_checks())
    return out


def random_physical_states(count: int, seed: int = 2024):
    """Deterministic sample of physical ``(scenario, params, quantum numbers, energy)``."""
    rng = random.Random(seed)
    states = []
    while len(states) < count:
        sc = rng.choice(CASES)
        p = ModelParams(
            mass=rng.choice((0.1, 0.5, 0.8)),
            omega=rng.choice((0.1, 0.5, 1.0, 2.0)),
            epsilon=rng.choice((0.0, 0.2, 0.5)),
            alpha=rng.choice((0.3, 0.5, 0.8, 1.0)),
        )
        q = QuantumNumbers(rng.randint(0, 3), rng.randint(-2, 2))
        res = spectrum.energy(sc, p, q, rng.choice(list(Branch)))
        if not res.physical:
            continue
        if sc is Scenario.CASE1 and p.epsilon > 0 and abs(1 - p.epsilon * res.energy) < 1e-6:
            continue
        states.append((sc, p, q, res))
    return states


def residual_report(sc, p, q, res, points: int = 256):
    """Max relative ODE residual and max scaled coupled-system residual on the default grid."""
    grid = wavefunction.RadialGrid(wavefunction.default_rmax(p, q), points)
    sp = wavefunction.build_spinor(p, q, res, grid)
    ode = np.max(np.abs(wavefunction.ode_residual(p, q, res.energy, sc, grid.nodes, relative=True)))
    system = np.max(np.abs(wavefunction.spinor_system_residual(sp)))
    return float(ode), float(system)


def _residual_checks() -> list[CheckResult]:
    worst_ode = worst_sys = 0.0
    weakest_control = math.inf
    broken = 0
    for sc, p, q, res in random_physical_states(50):
        try:
            ode, system = residual_report(sc, p, q, res)
        except RainbowDKPError:
            broken += 1
            continue
        worst_ode, worst_sys = max(worst_ode, ode), max(worst_sys, system)
        nxt = spectrum.energy(sc, p, QuantumNumbers(q.n + 1, q.m), res.branch)
        if nxt.physical:
            mid = 0.5 * (res.energy + nxt.energy)
            r = wavefunction.RadialGrid(wavefunction.default_rmax(p, q), 256).nodes
            ctrl = np.max(np.abs(wavefunction.ode_residual(p, q, mid, sc, r, relative=True)))
            weakest_control = min(weakest_control, float(ctrl))
    return [
        CheckResult("spectrum", "ODE / coupled-system residuals (1e-8)", worst_ode < 1e-8 and worst_sys < 1e-8 and broken == 0,
                    f"ode {worst_ode:.2e}, system {worst_sys:.2e}, failed builds {broken}"),
        CheckResult("spectrum", "detuned energy fails residual check", weakest_control > 1e-3,
                    f"smallest control residual {weakest_control:.2e}"),
    ]


ORACLE_J = {0.0: (0, 1.0), 1.0: (1, 1.0), 2.0: (2, 1.0), 5.0: (5, 1.0)}


def suite_oracle(points: int = 20_000) -> list[CheckResult]:
    out = []
    for j, (m, alpha) in ORACLE_J.items():
        p, q = ModelParams(0.8, 1.0, 0.0, alpha), QuantumNumbers(0, m)
        rep = fd_oracle.certify_quantization(p, q, points=points)
        worst = max(lv.rel_error for lv in rep.levels)
        out.append(CheckResult("oracle", f"FD kappa^2_n, |j|={j:g}, n<=4 (1e-3)", rep.passed, f"max rel {worst:.2e}"))
        _, errs, orders = fd_oracle.convergence_study(p.mass * p.omega, j, base_points=points // 8)
        ok = all(1.8 <= o <= 2.2 for o in orders)
        out.append(CheckResult("oracle", f"FD second-order convergence, |j|={j:g}", ok,
                               "orders " + ", ".join(f"{o:.3f}" for o in orders)))
    return out


def suite_algebra(seed: int = 7) -> list[CheckResult]:
    out = []
    good, failing = algebra.kemmer_summary(algebra.Signature.MOSTLY_MINUS)
    out.append(CheckResult("algebra", "Kemmer algebra, diag(+,-,-,-)", good == 64, f"{good}/64 triples"))
    good_plus, _ = algebra.kemmer_summary(algebra.Signature.MOSTLY_PLUS)
    nonzero = bool(np.any(algebra.kemmer_residual(0, 0, 0, algebra.Signature.MOSTLY_PLUS)))
    out.append(CheckResult("algebra", "Kemmer algebra fails for (0,0,0) under diag(-,+,+,+)", nonzero,
                           f"{good_plus}/64 triples hold"))
    e0 = algebra.eta0()
    sym = all(np.array_equal(e0 @ algebra.beta_flat(a), (e0 @ algebra.beta_flat(a)).T) for a in range(4))
    out.append(CheckResult("algebra", "eta0 beta^a symmetric", sym))

    rng = random.Random(seed)
    worst = 0.0
    for _ in range(100):
        sc = rng.choice(list(Scenario))
        eps = rng.uniform(0, 2)
        pair = RainbowPair(sc, eps)
        x = rng.uniform(0, 0.6 / max(eps, 1e-3) ** 0.5 if sc is Scenario.CASE2 else 0.9 / max(eps, 1e-3))
        r, alpha = rng.uniform(0.01, 10), rng.uniform(0.05, 1.0)
        tet = algebra.tetrads(pair, x, r, alpha)
        ref = rainbow.metric_at(pair, x, r, alpha).as_tuple()
        worst = max(worst, max(abs(a - b) / abs(b) for a, b in zip(tet.metric(), ref)))
    out.append(CheckResult("algebra", "tetrads reproduce the metric (1e-12)", worst <= 1e-12, f"max rel {worst:.2e}"))
    flat = all(
        np.array_equal(algebra.curved_beta(mu, rainbow.IDENTITY, 0.3, 1.0, 1.0), algebra.beta_flat(i))
        for i, mu in enumerate(("t", "r", "phi", "z"))
    )
    out.append(CheckResult("algebra", "curved beta reduces to flat beta", flat))
    return out


SUITES = {"spectrum": suite_spectrum, "oracle": suite_oracle, "algebra": suite_algebra}


def run_suites(which: str = "all") -> list[CheckResult]:
    names = list(SUITES) if which == "all" else [which]
    out = []
    for n in names:
        try:
            out.extend(SUITES[n]())
        except RainbowDKPError as exc:
            out.append(CheckResult(n, "suite aborted", False, f"{type(exc).__name__}: {exc}"))
    return out
