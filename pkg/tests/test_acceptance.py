"""Acceptance criteria, one printed PASS/FAIL line each.

Run with ``pytest -v tests/test_acceptance.py`` or ``python3 tests/test_acceptance.py``.
"""
import dataclasses
import math
import time

import numpy as np
import pytest

from rainbow_dkp import algebra, fd_oracle, spectrum, sweep, verify, wavefunction
from rainbow_dkp.algebra import Signature
from rainbow_dkp.errors import NoSignChangeError
from rainbow_dkp.rainbow import Scenario
from rainbow_dkp.specfun import kummer_1f1, laguerre, laguerre_via_kummer
from rainbow_dkp.spectrum import Branch, ModelParams, QuantumNumbers

CASES = (Scenario.CASE1, Scenario.CASE2, Scenario.CASE3)
# independent 40-digit series value of 1F1(0.5; 1.5; -1) (mpmath.hyp1f1)
ORACLE_1F1 = 0.7468241328124270


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title} -- {detail}")
        assert ok, detail

    return emit


def test_c01_closed_form_vs_implicit(report):
    t0 = time.perf_counter()
    worst, count, unmatched = 0.0, 0, 0
    tuples = 0
    for p, q in spectrum.parameter_grid():
        tuples += 1
        for sc in CASES:
            for br in Branch:
                res = spectrum.energy(sc, p, q, br)
                if not res.physical:
                    try:
                        spectrum.energy_implicit(sc, p, q, br)
                        unmatched += 1
                    except NoSignChangeError:
                        pass
                    continue
                imp = spectrum.energy_implicit(sc, p, q, br).energy
                worst = max(worst, abs(res.energy - imp) / max(1.0, abs(res.energy)))
                count += 1
    elapsed = time.perf_counter() - t0
    ok = tuples >= 1000 and worst <= 1e-10 and unmatched == 0 and elapsed < 10
    report(1, "closed form vs bracketing root", ok,
           f"{tuples} tuples, {count} physical energies, max rel diff {worst:.2e}, {elapsed:.1f}s")


def test_c02_fd_certification(report):
    t0 = time.perf_counter()
    worst, orders_all, ok = 0.0, [], True
    for j in (0, 1, 2, 5):
        p, q = ModelParams(0.8, 1.0, 0.0, 1.0), QuantumNumbers(0, j)
        rep = fd_oracle.certify_quantization(p, q, points=20_000, levels=5)
        worst = max(worst, max(lv.rel_error for lv in rep.levels))
        ok &= rep.passed
        _, _, orders = fd_oracle.convergence_study(p.mass * p.omega, float(j), base_points=2500, doublings=3)
        orders_all.extend(orders)
    elapsed = time.perf_counter() - t0
    ok &= all(1.8 <= o <= 2.2 for o in orders_all) and worst <= 1e-3 and elapsed < 60
    report(2, "finite-difference quantization", ok,
           f"max rel err {worst:.2e} at N=20000, orders {min(orders_all):.3f}..{max(orders_all):.3f}, {elapsed:.1f}s")


def test_c03_kemmer(report):
    good, _ = algebra.kemmer_summary(Signature.MOSTLY_MINUS)
    bad = algebra.kemmer_residual(0, 0, 0, Signature.MOSTLY_PLUS)
    ok = good == 64 and bool(np.any(bad)) and bad.dtype == np.int64
    report(3, "Kemmer algebra", ok, f"{good}/64 under (+,-,-,-); (0,0,0) under (-,+,+,+) max |res| {np.abs(bad).max()}")


def test_c04_case2_symmetry(report):
    fails = total = 0
    for p, q in spectrum.parameter_grid():
        ep, em = spectrum.energies(Scenario.CASE2, p, q)
        total += 1
        fails += not (ep.energy == -em.energy)
    report(4, "case-2 E+ = -E- exactly", fails == 0, f"{fails} failures over {total} grid points")


def test_c05_case2_saturation(report):
    worst = 0.0
    for eps in (0.2, 0.5, 1.0):
        e = spectrum.energy_case2(ModelParams(0.8, 1e6, eps, 0.5), QuantumNumbers(1, 1)).energy
        worst = max(worst, abs(abs(e) - 1 / math.sqrt(eps)) * math.sqrt(eps))
    report(5, "case-2 saturation at 1/sqrt(eps)", worst <= 1e-3, f"max rel deviation {worst:.2e}")


def test_c06_case3_cutoff(report):
    q = QuantumNumbers(1, 1)
    p = ModelParams(0.8, 1.0, 0.5, 0.5)
    closed = spectrum.cutoff_omega_case3(p, q)
    bisect = spectrum.cutoff_omega_case3_bisect(p, q)
    below = spectrum.energy_case3(dataclasses.replace(p, omega=closed * (1 - 1e-9)), q, "minus").physical
    above = spectrum.energy_case3(dataclasses.replace(p, omega=closed * (1 + 1e-9)), q, "minus").physical
    cuts = [spectrum.cutoff_omega_case3(dataclasses.replace(p, alpha=a), q) for a in (0.3, 0.5, 0.9)]
    ok = abs(closed - 0.525) <= 1e-8 and abs(bisect - 0.525) <= 1e-8 and below and not above
    ok &= cuts[0] < cuts[1] < cuts[2]
    report(6, "case-3 cutoff", ok,
           f"closed {closed:.12f}, bisection {bisect:.12f}, alpha 0.3/0.5/0.9 -> "
           + "/".join(f"{c:.4f}" for c in cuts))


def test_c07_case1_asymmetry(report):
    worst = worst0 = 0.0
    for p, q in spectrum.parameter_grid():
        ep, em = spectrum.energies(Scenario.CASE1, p, q)
        if not (ep.physical and em.physical):
            continue
        expect = -2 * p.epsilon * p.mass**2 / (1 - p.epsilon**2 * p.mass**2)
        worst = max(worst, abs(ep.energy + em.energy - expect))
        if p.epsilon == 0:
            worst0 = max(worst0, abs(ep.energy + em.energy))
    report(7, "case-1 branch sum", worst <= 1e-12 and worst0 <= 1e-12,
           f"max |sum - formula| {worst:.2e}, max |sum| at eps=0 {worst0:.2e}")


def test_c08_epsilon_zero_collapse(report):
    worst = 0.0
    for p, q in spectrum.parameter_grid():
        if p.epsilon != 0:
            continue
        ref = math.sqrt(p.mass**2 + 2 * p.mass * p.omega * (2 * q.n + abs(q.m) / p.alpha))
        for sc in CASES:
            ep, em = spectrum.energies(sc, p, q)
            worst = max(worst, abs(ep.energy - ref), abs(em.energy + ref))
    report(8, "eps = 0 collapse", worst <= 1e-12, f"max deviation {worst:.2e}")


def test_c09_residuals(report):
    worst_ode = worst_sys = 0.0
    weakest_ode = weakest_sys = math.inf
    for sc, p, q, res in verify.random_physical_states(50, seed=2024):
        grid = wavefunction.RadialGrid(wavefunction.default_rmax(p, q), 512)
        r = grid.nodes[:-1]  # interior nodes
        sp = wavefunction.build_spinor(p, q, res, grid)
        worst_ode = max(worst_ode, np.max(np.abs(wavefunction.ode_residual(p, q, res.energy, sc, r, relative=True))))
        worst_sys = max(worst_sys, np.max(np.abs(wavefunction.spinor_system_residual(sp)[:, :-1])))
        nxt = spectrum.energy(sc, p, QuantumNumbers(q.n + 1, q.m), res.branch)
        if not nxt.physical:
            continue
        mid = 0.5 * (res.energy + nxt.energy)
        weakest_ode = min(weakest_ode, np.max(np.abs(wavefunction.ode_residual(p, q, mid, sc, r, relative=True))))
        # level-n profile paired with the detuned energy in every component
        detuned = wavefunction.build_spinor(p, q, dataclasses.replace(res, energy=mid), grid)
        weakest_sys = min(weakest_sys, np.max(np.abs(wavefunction.spinor_system_residual(detuned))))
    ok = worst_ode < 1e-8 and worst_sys < 1e-8 and weakest_ode > 1e-3 and weakest_sys > 1e-3
    report(9, "ODE / coupled-system residuals", ok,
           f"max ode {worst_ode:.2e}, max system {worst_sys:.2e}; detuned control min ode {weakest_ode:.2e}, "
           f"min system {weakest_sys:.2e}")


def test_c10_special_functions(report):
    z = np.linspace(0.0, 20.0, 201)
    worst = 0.0
    for n in range(13):
        for a in (0.5, 1.0, 1.7, 3.0):
            lag = laguerre(n, a, z)
            worst = max(worst, np.max(np.abs(lag - laguerre_via_kummer(n, a, z)) / np.maximum(1.0, np.abs(lag))))
    val = kummer_1f1(0.5, 1.5, -1.0)
    ok = worst <= 1e-12 and abs(val - ORACLE_1F1) <= 1e-10
    report(10, "special functions", ok, f"Laguerre identity max {worst:.2e}, 1F1(0.5;1.5;-1) = {val:.16f}")


def test_c11_figures(report, tmp_path):
    from rainbow_dkp import cli

    results = {}
    for k in range(1, 7):
        code = cli.main(["figure", "--id", str(k), "--out", str(tmp_path)])
        files = (tmp_path / f"fig{k}.csv").exists() and (tmp_path / f"fig{k}.svg").exists()
        _, table = sweep.run_figure(k)
        results[k] = code == 0 and files and all(sweep.check_figure(sweep.figure_preset(k), table).values())
    report(11, "figure regeneration", all(results.values()),
           ", ".join(f"fig{k} {'ok' if v else 'FAILED'}" for k, v in results.items()))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
