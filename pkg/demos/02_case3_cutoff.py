# The case-3 minus branch only exists below a cut-off frequency.
# Closed form: omega_c = (1/eps^2 - M^2) / (2 M (|m|/alpha + 2n)).
import numpy as np

from rainbow_dkp import ModelParams, QuantumNumbers, cutoff_omega_case3, energy
from rainbow_dkp.spectrum import cutoff_omega_case3_bisect

q = QuantumNumbers(1, 1)
p = ModelParams(mass=0.8, omega=1.0, epsilon=0.5, alpha=0.5)

wc = cutoff_omega_case3(p, q)
print(f"omega_c closed form: {wc:.12f}")
print(f"omega_c bisection:   {cutoff_omega_case3_bisect(p, q):.12f}")

# %% approaching the cutoff the minus branch steepens, then disappears
for w in np.linspace(0.40, 0.56, 9):
    r = energy("case3", ModelParams(0.8, w, 0.5, 0.5), q, "minus")
    print(f"omega={w:.3f}  E- = {r.energy:+.6f}" if r.physical else f"omega={w:.3f}  E- unphysical")

# %% a smaller deficit angle (larger alpha) pushes the cutoff up
for alpha in (0.3, 0.5, 0.9, 1.0):
    print(f"alpha={alpha}: omega_c = {cutoff_omega_case3(ModelParams(0.8, 1.0, 0.5, alpha), q):.4f}")
