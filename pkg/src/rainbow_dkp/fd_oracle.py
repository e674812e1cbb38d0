"""Finite-difference eigensolver for the radial oscillator operator.

The operator ``-Phi'' - Phi'/r + j^2/r^2 Phi + (M omega)^2 r^2 Phi`` has
eigenvalues ``kappa^2``.  It is discretized as a symmetric tridiagonal
matrix and its lowest eigenvalues are found by Sturm-sequence bisection,
without reference to any closed-form spectrum.

Two second-order schemes are available:

``liouville``
    ``u = sqrt(r) Phi`` on nodes ``r_i = i h``; potential ``(j^2 - 1/4)/r^2``,
    off-diagonals ``-1/h^2``.  Accurate for ``|j| >= 1/2``.
``flux``
    finite volumes on cell centres ``r_i = (i - 1/2) h`` with zero flux
    through the origin, symmetrized by ``sqrt(r)``.  Converges at second
    order for ``j = 0`` too, where the Liouville potential is attractive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numba
import numpy as np

from .errors import ParameterError, ResolutionError
from .spectrum import ModelParams, QuantumNumbers, kappa_sq_target

EIGEN_TOL = 1e-10
MAX_LEVELS = 10


@numba.njit(cache=True)
def _sturm_count(diag, off2, x):
    """Number of eigenvalues strictly below ``x``."""
    count = 0
    q = diag[0] - x
    if q < 0.0:
        count += 1
    for i in range(1, diag.size):
        if q == 0.0:
            q = 1e-300
        q = diag[i] - x - off2[i - 1] / q
        if q < 0.0:
            count += 1
    return count


@numba.njit(cache=True)
def _bisect_lowest(diag, off, k, tol):
    off2 = off * off
    n = diag.size
    lo = np.inf
    hi = -np.inf
    for i in range(n):
        rad = 0.0
        if i > 0:
            rad += abs(off[i - 1])
        if i < n - 1:
            rad += abs(off[i])
        lo = min(lo, diag[i] - rad)
        hi = max(hi, diag[i] + rad)
    out = np.empty(k)
    for idx in range(k):
        a = lo if idx == 0 else out[idx - 1] - tol
        b = hi
        while b - a > tol:
            mid = 0.5 * (a + b)
            if _sturm_count(diag, off2, mid) > idx:
                b = mid
            else:
                a = mid
        out[idx] = 0.5 * (a + b)
    return out


@dataclass(frozen=True)
class DiscretizedOperator:
    r: np.ndarray
    diag: np.ndarray
    offdiag: np.ndarray
    scheme: str
    mass_omega: float
    abs_j: float
    r_max: float
    points: int = field(default=0)

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


def _pick_scheme(abs_j: float, scheme: str) -> str:
    if scheme == "auto":
        return "liouville" if abs_j >= 0.5 else "flux"
    if scheme not in ("liouville", "flux"):
        raise ParameterError(f"unknown scheme {scheme!r}")
    return scheme


def build_operator(mass_omega: float, abs_j: float, r_max: float, points: int, scheme: str = "auto") -> DiscretizedOperator:
    """Symmetric tridiagonal discretization with Dirichlet conditions at ``r_max``."""
    if points < 16:
        raise ParameterError(f"need at least 16 points, got {points}")
    scheme = _pick_scheme(abs_j, scheme)
    h = r_max / points
    vho = mass_omega * mass_omega
    if scheme == "liouville":
        r = h * np.arange(1, points)
        diag = 2.0 / h**2 + (abs_j**2 - 0.25) / r**2 + vho * r**2
        off = np.full(r.size - 1, -1.0 / h**2)
    else:
        r = h * (np.arange(1, points + 1) - 0.5)
        faces = h * np.arange(1, points + 1)
        inner = np.concatenate([[0.0], faces[:-1]])
        diag = (faces + inner) / (r * h * h) + abs_j**2 / r**2 + vho * r**2
        off = -faces[:-1] / (h * h * np.sqrt(r[:-1] * r[1:]))
    return DiscretizedOperator(r, diag, off, scheme, mass_omega, abs_j, r_max, points)


def default_fd_rmax(mass_omega: float, abs_j: float, levels: int) -> float:
    return 6.0 * math.sqrt((2 * (levels - 1) + 1 + abs_j) / mass_omega)


def _raw_eigenvalues(op: DiscretizedOperator, k: int, tol: float) -> np.ndarray:
    return _bisect_lowest(op.diag, op.offdiag, k, tol)


def lowest_eigenvalues(op: DiscretizedOperator, k: int, tol: float = EIGEN_TOL, check_resolution: bool = True) -> np.ndarray:
    """The ``k`` smallest eigenvalues in ascending order.

    With ``check_resolution`` the half-resolution operator provides a
    Richardson error estimate; a level spacing smaller than that estimate
    raises :class:`ResolutionError`.
    """
    if not 1 <= k <= MAX_LEVELS:
        raise ParameterError(f"k must be in 1..{MAX_LEVELS}, got {k}")
    vals = _raw_eigenvalues(op, k, tol)
    if check_resolution:
        err = discretization_error(op, k, vals, tol)
        gaps = np.diff(vals)
        if gaps.size and np.any(gaps < err[:-1] + err[1:]):
            raise ResolutionError("eigenvalue spacing below the discretization error estimate")
    return vals


def discretization_error(op: DiscretizedOperator, k: int, vals=None, tol: float = EIGEN_TOL) -> np.ndarray:
    """Richardson estimate ``|lambda_N - lambda_{N/2}| / 3`` for a second-order scheme."""
    if vals is None:
        vals = _raw_eigenvalues(op, k, tol)
    coarse = build_operator(op.mass_omega, op.abs_j, op.r_max, op.points // 2, op.scheme)
    return np.abs(vals - _raw_eigenvalues(coarse, k, tol)) / 3.0


@dataclass
class LevelCheck:
    n: int
    fd_value: float
    target: float
    rel_error: float
    error_estimate: float
    passed: bool


@dataclass
class QuantizationReport:
    abs_j: float
    mass_omega: float
    points: int
    levels: list[LevelCheck]
    tolerance: float

    @property
    def passed(self) -> bool:
        return all(lv.passed for lv in self.levels)

    def lines(self) -> list[str]:
        out = []
        for lv in self.levels:
            flag = "PASS" if lv.passed else "FAIL"
            out.append(
                f"|j|={self.abs_j:g} n={lv.n} fd={lv.fd_value:.10f} "
                f"target={lv.target:.10f} rel_err={lv.rel_error:.3e} {flag}"
            )
        return out


def certify_quantization(
    p: ModelParams,
    q: QuantumNumbers,
    points: int = 20_000,
    levels: int = 5,
    tol: float = 1e-3,
    r_max: float | None = None,
) -> QuantizationReport:
    """Compare finite-difference ``kappa^2_n`` (n < levels) with the quantized formula.

    Raises :class:`ResolutionError` when the estimated discretization error
    of any level exceeds ``tol`` relative, i.e. the grid cannot certify
    anything at that tolerance.
    """
    mw = p.mass * p.omega
    j = q.abs_j(p.alpha)
    r_max = r_max or default_fd_rmax(mw, j, levels)
    op = build_operator(mw, j, r_max, points)
    vals = lowest_eigenvalues(op, levels)
    est = discretization_error(op, levels, vals)
    checks = []
    for n in range(levels):
        target = kappa_sq_target(p, QuantumNumbers(n, q.m))
        rel = abs(vals[n] - target) / target
        checks.append(LevelCheck(n, float(vals[n]), target, rel, float(est[n] / vals[n]), rel <= tol))
    worst = max(c.error_estimate for c in checks)
    if worst > tol:
        raise ResolutionError(
            f"N={points} gives a discretization error estimate {worst:.2e} above tolerance {tol:g}"
        )
    return QuantizationReport(j, mw, points, checks, tol)


def convergence_study(mass_omega: float, abs_j: float, levels: int = 5, base_points: int = 2500, doublings: int = 3, r_max=None):
    """Max relative error against ``2 M omega (2n+1+|j|)`` for ``base_points * 2^i``.

    Returns ``(points, errors, orders)`` where ``orders[i] = log2(err_i / err_{i+1})``.
    """
    r_max = r_max or default_fd_rmax(mass_omega, abs_j, levels)
    target = 2.0 * mass_omega * (2 * np.arange(levels) + 1 + abs_j)
    pts, errs = [], []
    for i in range(doublings + 1):
        n_pts = base_points * 2**i
        op = build_operator(mass_omega, abs_j, r_max, n_pts)
        vals = lowest_eigenvalues(op, levels, check_resolution=False)
        pts.append(n_pts)
        errs.append(float(np.max(np.abs(vals - target) / target)))
    orders = [math.log2(errs[i] / errs[i + 1]) for i in range(doublings)]
    return pts, errs, orders
