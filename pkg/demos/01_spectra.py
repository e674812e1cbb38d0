# Energy levels of the DKP oscillator under the three rainbow pairs.
# Every closed-form level is checked against a bracketing root solve.
import numpy as np

from rainbow_dkp import Branch, ModelParams, QuantumNumbers, energies, energy_implicit, kappa_sq_target

# %% one state, all three scenarios
p = ModelParams(mass=0.8, omega=1.0, epsilon=0.5, alpha=0.5)
q = QuantumNumbers(n=1, m=1)
print("kappa^2 target:", kappa_sq_target(p, q))  # 2 M omega (2n + 1 + |m|/alpha) = 8

for case in ("case1", "case2", "case3"):
    ep, em = energies(case, p, q)
    fmt = lambda r: f"{r.energy:+.10f}" if r.physical else "  unphysical "
    print(f"{case}:  E+ = {fmt(ep)}   E- = {fmt(em)}")

# %% the implicit root of kappa^2(E) = target agrees with the closed forms
for case in ("case1", "case2", "case3"):
    for br in Branch:
        closed = energies(case, p, q)[br is Branch.MINUS]
        if closed.physical:
            root = energy_implicit(case, p, q, br)
            print(f"{case} {br.value:5s} |closed - root| = {abs(closed.energy - root.energy):.1e}")

# %% case 1 is lopsided: E+ + E- is fixed by eps and M alone
for eps in (0.0, 0.2, 0.5, 1.0):
    pe = ModelParams(0.8, 1.0, eps, 0.5)
    ep, em = energies("case1", pe, q)
    print(f"eps={eps}: E+ + E- = {ep.energy + em.energy:+.6f}  "
          f"(-2 eps M^2/(1 - eps^2 M^2) = {-2 * eps * 0.64 / (1 - eps**2 * 0.64):+.6f})")

# %% case 2 saturates at 1/sqrt(eps) for large omega
for w in np.geomspace(0.01, 1e6, 9):
    e = energies("case2", ModelParams(0.8, w, 0.2, 0.5), q)[0].energy
    print(f"omega={w:10.3g}  E+ = {e:.6f}")
print("1/sqrt(0.2) =", 1 / np.sqrt(0.2))
