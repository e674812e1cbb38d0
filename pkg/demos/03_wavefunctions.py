# Radial spinor components and the probability density J^t.
import numpy as np

from rainbow_dkp import ModelParams, QuantumNumbers, RadialGrid, build_spinor, current_jt, energy, total_probability
from rainbow_dkp.wavefunction import default_rmax, sign_changes, spinor_system_residual

p = ModelParams(mass=0.8, omega=1.0, epsilon=0.2, alpha=0.5)

# %% node count equals n
for n in range(4):
    q = QuantumNumbers(n, 1)
    sp = build_spinor(p, q, energy("case2", p, q))
    print(f"n={n}: {sign_changes(sp.components[0])} nodes, r_max={sp.r[-1]:.2f}")

# %% unit probability with the measure 2 pi alpha r dr, in every scenario
q = QuantumNumbers(1, 1)
for case in ("identity", "case1", "case2", "case3"):
    sp = build_spinor(p, q, energy(case, p, q))
    print(f"{case:8s} int J^t = {total_probability(sp):.10f}   N = {sp.norm_constant:.6f}")

# %% the components satisfy all five first-order radial equations
sp = build_spinor(p, q, energy("case1", p, q), RadialGrid(default_rmax(p, q), 1024))
res = spinor_system_residual(sp)
print("max scaled residual per equation:", np.abs(res).max(axis=1))

# %% a coarse table of J^t(r)
jt = current_jt(sp)
for i in range(0, sp.r.size, 128):
    print(f"r={sp.r[i]:6.3f}  J^t={jt[i]:.6e}")
