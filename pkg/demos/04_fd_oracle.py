# Finite-difference check of the quantization kappa^2_n = 2 M omega (2n + 1 + |j|),
# built without any closed form: symmetric tridiagonal matrix + Sturm bisection.
from rainbow_dkp import ModelParams, QuantumNumbers
from rainbow_dkp.errors import ResolutionError
from rainbow_dkp.fd_oracle import build_operator, certify_quantization, convergence_study, lowest_eigenvalues

# %% M omega = 1, |j| = 1: levels near 4, 8, 12
op = build_operator(mass_omega=1.0, abs_j=1.0, r_max=12.0, points=20_000)
print(op.scheme, lowest_eigenvalues(op, 3))

# %% certification report for a cosmic-string state (|j| = |m|/alpha = 2)
rep = certify_quantization(ModelParams(0.8, 1.0, 0.0, 0.5), QuantumNumbers(0, 1))
print("\n".join(rep.lines()))

# %% second-order convergence, including j = 0 (cell-centred flux scheme)
for j in (0.0, 1.0, 5.0):
    pts, errs, orders = convergence_study(0.8, j, base_points=2500)
    print(f"|j|={j}: errors {['%.2e' % e for e in errs]}  orders {['%.3f' % o for o in orders]}")

# %% too coarse a grid cannot certify 1e-3
try:
    certify_quantization(ModelParams(0.8, 1.0, 0.0, 0.5), QuantumNumbers(0, 1), points=128)
except ResolutionError as exc:
    print("N=128:", exc)
