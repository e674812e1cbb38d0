"""Command-line entry point ``rainbow-dkp``."""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import algebra, spectrum, sweep, verify, wavefunction
from .errors import RainbowDKPError
from .rainbow import Scenario
from .spectrum import Branch, ModelParams, QuantumNumbers


def _add_state_args(p: argparse.ArgumentParser, branch_default: str):
    p.add_argument("--case", required=True, choices=("0", "1", "2", "3"), help="rainbow scenario (0: no rainbow)")
    p.add_argument("--n", type=int, required=True, help="radial quantum number")
    p.add_argument("--m", type=int, required=True, help="magnetic quantum number")
    p.add_argument("--alpha", type=float, required=True, help="angular deficit parameter in (0, 1]")
    p.add_argument("--epsilon", type=float, required=True, help="rainbow parameter")
    p.add_argument("--mass", type=float, required=True, help="M/E_P")
    p.add_argument("--omega", type=float, required=True, help="omega/E_P")
    choices = ("plus", "minus", "both") if branch_default == "both" else ("plus", "minus")
    p.add_argument("--branch", choices=choices, default=branch_default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rainbow-dkp", description="DKP oscillator spectra in cosmic-string rainbow gravity")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="closed-form bound-state energies")
    _add_state_args(sp, "both")
    sp.add_argument("--json", action="store_true", help="print JSON instead of text")

    wf = sub.add_parser("wavefunction", help="write radial spinor profiles to CSV")
    _add_state_args(wf, "plus")
    wf.add_argument("--grid", type=int, default=2048, help="number of radial nodes")
    wf.add_argument("--rmax", type=float, default=None, help="outer radius (default: 6 turning-point scales)")
    wf.add_argument("--out", required=True, help="output CSV path")

    sw = sub.add_parser("sweep", help="run a parameter sweep from a config file")
    sw.add_argument("--config", required=True)
    sw.add_argument("--out", required=True, help="output directory")

    fg = sub.add_parser("figure", help="regenerate a figure preset (1..6)")
    fg.add_argument("--id", type=int, required=True, dest="fig_id")
    fg.add_argument("--out", default=".", help="output directory")
    fg.add_argument("--alphas", default=None, help="comma-separated alpha values overriding the default set")

    vf = sub.add_parser("verify", help="run invariant suites")
    vf.add_argument("--suite", choices=("spectrum", "oracle", "algebra", "all"), default="all")

    sub.add_parser("algebra-check", help="Kemmer algebra residuals under both signatures")
    return parser


def _state(args):
    p = ModelParams(args.mass, args.omega, args.epsilon, args.alpha)
    q = QuantumNumbers(args.n, args.m)
    return Scenario.parse(args.case), p, q


def _echo(args, keys):
    print("# " + " ".join(f"{k}={getattr(args, k)}" for k in keys))


def _unphysical_message(sc, p, q, res) -> str:
    msg = f"unphysical: {res.branch.value} branch"
    if sc is Scenario.CASE3 and res.branch is Branch.MINUS:
        try:
            wc = spectrum.cutoff_omega_case3(p, q)
            msg += f" beyond cutoff omega_c={wc:.6g}"
        except RainbowDKPError:
            pass
    elif sc is Scenario.CASE1:
        msg += " (negative radicand)"
    elif sc is Scenario.CASE2:
        msg += " (epsilon E^2 >= 1)"
    return msg


def cmd_spectrum(args) -> int:
    sc, p, q = _state(args)
    branches = list(Branch) if args.branch == "both" else [Branch(args.branch)]
    results = [spectrum.energy(sc, p, q, b) for b in branches]
    if args.json:
        print(json.dumps([
            {
                "scenario": r.scenario.value, "branch": r.branch.value,
                "energy_ratio": r.energy if r.physical else None, "physical": r.physical,
                "kappa_sq": r.kappa_sq if r.physical else None,
                "n": q.n, "m": q.m, "alpha": p.alpha, "epsilon": p.epsilon,
                "mass_ratio": p.mass, "omega_ratio": p.omega,
            }
            for r in results
        ], indent=1))
    else:
        _echo(args, ("case", "n", "m", "alpha", "epsilon", "mass", "omega", "branch"))
        for r in results:
            if r.physical:
                print(f"{r.branch.value:5s} E/E_P = {r.energy:.15g}  kappa^2 = {r.kappa_sq:.15g}")
            else:
                print(f"{r.branch.value:5s} unphysical")
    bad = [r for r in results if not r.physical]
    for r in bad:
        print(_unphysical_message(sc, p, q, r), file=sys.stderr)
    return 1 if bad else 0


def cmd_wavefunction(args) -> int:
    sc, p, q = _state(args)
    res = spectrum.energy(sc, p, q, args.branch)
    if not res.physical:
        print(_unphysical_message(sc, p, q, res), file=sys.stderr)
        return 1
    args.rmax = args.rmax or wavefunction.default_rmax(p, q)
    grid = wavefunction.RadialGrid(args.rmax, args.grid)
    sp = wavefunction.build_spinor(p, q, res, grid)
    jt = wavefunction.current_jt(sp)
    comps = sp.components * sp.norm_constant
    out = Path(args.out)
    with open(out, "w", newline="\n", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["r", "phi1", "phi2", "phi3", "phi4", "phi5", "jt"])
        for i, r in enumerate(sp.r):
            w.writerow([f"{v:.17g}" for v in (r, *comps[:, i], jt[i])])
    _echo(args, ("case", "n", "m", "alpha", "epsilon", "mass", "omega", "branch", "grid", "rmax"))
    print(f"E/E_P = {res.energy:.15g}  N = {sp.norm_constant:.15g}  wrote {out}")
    return 0


def cmd_sweep(args) -> int:
    cfg = sweep.load_config(args.config)
    table = sweep.run_sweep(cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for fmt in ("csv", "json", "svg"):
        sweep.emit(table, fmt, out / f"sweep.{fmt}")
    print(f"# config={args.config} rows={len(table)} out={out}")
    return 0


def cmd_figure(args) -> int:
    alphas = [float(a) for a in args.alphas.split(",")] if args.alphas else None
    csv_path, svg_path, checks = sweep.write_figure(args.fig_id, args.out, alphas)
    print(f"# figure={args.fig_id} alphas={alphas or sweep.DEFAULT_ALPHAS}")
    print(f"wrote {csv_path} and {svg_path}")
    for name, ok in checks.items():
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return 0 if all(checks.values()) else 1


def cmd_verify(args) -> int:
    results = verify.run_suites(args.suite)
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.suite:8s}  {r.name:{width}s}  {r.detail}")
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def cmd_algebra(args) -> int:
    for sig in algebra.Signature:
        good, failing = algebra.kemmer_summary(sig)
        eta = np.diag(sig.eta()).tolist()
        print(f"signature {sig.value} eta={eta}: {good}/64 triples satisfy the Kemmer algebra")
        if failing:
            worst = max(failing, key=lambda t: np.abs(algebra.kemmer_residual(*t, sig)).max())
            print(f"  e.g. (a,b,c)={worst}: max |residual| = {np.abs(algebra.kemmer_residual(*worst, sig)).max()}")
    return 0


COMMANDS = {
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "sweep": cmd_sweep,
    "figure": cmd_figure,
    "verify": cmd_verify,
    "algebra-check": cmd_algebra,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except RainbowDKPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
