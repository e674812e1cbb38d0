"""Radial DKP spinors, their normalization and the conserved density ``J^t``."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .algebra import coupled_system_residual, coupled_system_scale
from .errors import DomainError, ParameterError, ResolutionError, UnphysicalError
from .rainbow import Scenario, eval_g0, eval_g1
from .specfun import kummer_1f1, kummer_1f1_derivatives, nonpositive_integer
from .spectrum import (
    ModelParams,
    QuantumNumbers,
    SpectrumResult,
    kappa_sq,
    kappa_sq_target,
)


@dataclass(frozen=True)
class RadialGrid:
    """Uniform nodes ``r_i = i r_max / N`` for ``i = 1..N`` (the origin is excluded)."""

    r_max: float
    points: int = 2048

    def __post_init__(self):
        if not self.r_max > 0:
            raise ParameterError(f"r_max must be positive, got {self.r_max}")
        if int(self.points) < 16:
            raise ParameterError(f"grid needs at least 16 points, got {self.points}")
        object.__setattr__(self, "points", int(self.points))

    @property
    def step(self) -> float:
        return self.r_max / self.points

    @property
    def nodes(self) -> np.ndarray:
        return self.step * np.arange(1, self.points + 1)


def default_rmax(p: ModelParams, q: QuantumNumbers) -> float:
    """Six times the classical turning-point scale of the state."""
    return 6.0 * math.sqrt((2 * q.n + 1 + q.abs_j(p.alpha)) / (p.mass * p.omega))


def kummer_parameters(p: ModelParams, q: QuantumNumbers, ksq: float) -> tuple[float, float]:
    """``(a, b)`` of the radial Kummer function for effective eigenvalue ``ksq``.

    ``b = 1 + |j|`` keeps the solution regular at the origin for either sign of ``m``.
    """
    j = q.abs_j(p.alpha)
    return 0.5 * (1.0 + j) - ksq / (4.0 * p.mass * p.omega), 1.0 + j


def _radial_profile(p: ModelParams, q: QuantumNumbers, a: float, r):
    """``Phi1`` and its first two r-derivatives for Kummer parameter ``a``."""
    r = np.asarray(r, dtype=float)
    mw = p.mass * p.omega
    s = 0.5 * q.abs_j(p.alpha)
    b = 1.0 + 2.0 * s
    rho = mw * r * r
    f, df, d2f = kummer_1f1_derivatives(a, b, rho, order=2)
    pre = np.exp(s * np.log(np.where(rho > 0, rho, 1.0)) - 0.5 * rho)
    if s > 0:
        pre = np.where(rho > 0, pre, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        u = s / rho - 0.5
        dpre = pre * u
        d2pre = pre * (u * u - s / (rho * rho))
    phi = pre * f
    phi_rho = dpre * f + pre * df
    phi_rhorho = d2pre * f + 2.0 * dpre * df + pre * d2f
    dphi = 2.0 * mw * r * phi_rho
    d2phi = 2.0 * mw * phi_rho + 4.0 * mw * mw * r * r * phi_rhorho
    return phi, dphi, d2phi


def _require_physical(E: SpectrumResult):
    if not E.physical:
        raise UnphysicalError(f"{E.scenario.value} {E.branch.value} branch is unphysical here")


def phi1(p: ModelParams, q: QuantumNumbers, E: SpectrumResult, r):
    """First spinor component ``rho^{|j|/2} e^{-rho/2} 1F1(a; 1+|j|; rho)``, ``rho = M omega r^2``."""
    _require_physical(E)
    if np.any(np.asarray(r) < 0):
        raise DomainError("r must be >= 0")
    a, _ = kummer_parameters(p, q, E.kappa_sq)
    phi, _, _ = _radial_profile(p, q, a, r)
    return float(phi) if np.ndim(r) == 0 else phi


def phi1_with_derivatives(p: ModelParams, q: QuantumNumbers, E: SpectrumResult, r):
    _require_physical(E)
    a, _ = kummer_parameters(p, q, E.kappa_sq)
    return _radial_profile(p, q, a, r)


def sign_changes(values) -> int:
    v = np.asarray(values)
    v = v[v != 0]
    return int(np.count_nonzero(np.signbit(v[1:]) != np.signbit(v[:-1])))


def density_prefactor(p: ModelParams, E: SpectrumResult) -> float:
    """``g0(x) E / M``: reproduces the case-1, case-2 and case-3 densities."""
    return eval_g0(p.pair(E.scenario), E.energy) * E.energy / p.mass


def _profile_value(p: ModelParams, q: QuantumNumbers, a: float, r: float) -> float:
    n = nonpositive_integer(a)
    a = float(-n) if n is not None else a
    s = 0.5 * q.abs_j(p.alpha)
    rho = p.mass * p.omega * r * r
    pre = math.exp(s * math.log(rho) - 0.5 * rho) if rho > 0 else float(s == 0)
    return pre * kummer_1f1(a, 1.0 + 2.0 * s, rho)


def _norm_integral(p: ModelParams, q: QuantumNumbers, a: float, r_max: float) -> float:
    """``int_0^r_max |Phi1|^2 2 pi alpha r dr`` by adaptive quadrature."""

    def integrand(r):
        return _profile_value(p, q, a, r) ** 2 * 2.0 * math.pi * p.alpha * r

    # split at the turning-point scale so the oscillatory part is resolved
    mid = min(r_max, math.sqrt((2 * q.n + 1 + q.abs_j(p.alpha)) / (p.mass * p.omega)) * 2.0)
    total = 0.0
    for lo, hi in ((0.0, mid), (mid, r_max)):
        if hi > lo:
            val, _ = integrate.quad(integrand, lo, hi, limit=400, epsabs=0.0, epsrel=1e-13)
            total += val
    return total


@dataclass(frozen=True)
class DKPSpinor:
    """Radial profiles of a stationary DKP state on a grid.

    ``components[2]`` is the third component divided by ``i``; all
    components are unnormalized and ``norm_constant`` multiplies them.
    """

    r: np.ndarray
    components: np.ndarray
    dphi1: np.ndarray
    dphi3: np.ndarray
    norm_constant: float
    energy: SpectrumResult
    params: ModelParams
    quantum: QuantumNumbers

    @property
    def scenario(self) -> Scenario:
        return self.energy.scenario


def build_spinor(
    p: ModelParams,
    q: QuantumNumbers,
    E: SpectrumResult,
    grid: RadialGrid | None = None,
    scenario=None,
) -> DKPSpinor:
    """Five-component spinor of the state ``E`` sampled on ``grid``."""
    _require_physical(E)
    if scenario is not None and Scenario.parse(scenario) is not E.scenario:
        raise ParameterError(f"energy belongs to {E.scenario.value}, not {scenario}")
    grid = grid or RadialGrid(default_rmax(p, q))
    pair = p.pair(E.scenario)
    x = E.energy
    g0, g1 = eval_g0(pair, x), eval_g1(pair, x)
    M, w = p.mass, p.omega
    r = grid.nodes
    a, _ = kummer_parameters(p, q, E.kappa_sq)
    phi, dphi, d2phi = _radial_profile(p, q, a, r)

    nodes = sign_changes(phi)
    if nodes != q.n:
        raise ResolutionError(f"phi1 has {nodes} sign changes on the grid, expected n = {q.n}")

    comps = np.zeros((5, r.size))
    comps[0] = phi
    comps[1] = E.energy * g0 / M * phi
    comps[2] = g1 / M * (r * M * w * phi + dphi)
    comps[3] = -g1 * q.m / (p.alpha * M) * phi / r
    dphi3 = g1 / M * (M * w * phi + r * M * w * dphi + d2phi)

    integral = abs(density_prefactor(p, E)) * _norm_integral(p, q, a, grid.r_max)
    if not integral > 0:
        raise UnphysicalError("state has vanishing probability density")
    return DKPSpinor(r, comps, dphi, dphi3, 1.0 / math.sqrt(integral), E, p, q)


def current_jt(spinor: DKPSpinor, r=None):
    """Probability density ``J^t`` at the grid nodes, or at radii ``r``.

    The normalization fixes ``|int J^t 2 pi alpha r dr| = 1``; ``J^t`` carries
    the sign of ``g0(x) E``.
    """
    p, E = spinor.params, spinor.energy
    if r is None:
        phi = spinor.components[0]
    else:
        a, _ = kummer_parameters(p, spinor.quantum, E.kappa_sq)
        phi, _, _ = _radial_profile(p, spinor.quantum, a, r)
    return density_prefactor(p, E) * phi * phi * spinor.norm_constant**2


def total_probability(spinor: DKPSpinor) -> float:
    """Composite Simpson estimate of ``int_0^r_max J^t 2 pi alpha r dr`` on the grid."""
    r = np.concatenate([[0.0], spinor.r])
    dens = np.concatenate([[0.0], current_jt(spinor) * spinor.r])
    return float(integrate.simpson(dens * 2.0 * math.pi * spinor.params.alpha, x=r))


def spinor_system_residual(spinor: DKPSpinor, scale: str = "local") -> np.ndarray:
    """Coupled-system residuals at every node, shape (5, N).

    ``scale="local"`` divides each residual by the sum of its term
    magnitudes at that node; ``"global"`` divides by ``max |Phi|``.
    """
    p, q, E = spinor.params, spinor.quantum, spinor.energy
    kw = dict(energy=E.energy, pair=p.pair(E.scenario), alpha=p.alpha, omega=p.omega, mass=p.mass, m=q.m)
    out = np.empty_like(spinor.components)
    for i, ri in enumerate(spinor.r):
        args = (spinor.components[:, i], spinor.dphi1[i], spinor.dphi3[i])
        res = coupled_system_residual(*args, r=ri, **kw)
        if scale == "local":
            size = coupled_system_scale(*args, r=ri, **kw)
            res = np.divide(res, size, out=np.zeros_like(res), where=size > 0)
        out[:, i] = res
    if scale == "global":
        out /= np.max(np.abs(spinor.components))
    return out


def ode_residual(p: ModelParams, q: QuantumNumbers, energy: float, scenario, r, relative: bool = False):
    """Residual of the radial equation for the ``(n, m)`` eigenfunction at energy ``energy``.

    The trial function is the terminating solution of level ``n``; the
    equation's eigenvalue term uses ``kappa^2(energy)``, so the residual
    vanishes only at quantized energies.  With ``relative=True`` the residual
    is divided by the sum of the magnitudes of the individual terms.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("r must be > 0")
    pair = p.pair(scenario)
    ksq = kappa_sq(pair, float(energy), p.mass, p.omega)
    a, _ = kummer_parameters(p, q, kappa_sq_target(p, q))
    phi, dphi, d2phi = _radial_profile(p, q, a, r)
    j2 = q.abs_j(p.alpha) ** 2
    mw = p.mass * p.omega
    terms = (d2phi, dphi / r, ksq * phi, -j2 / (r * r) * phi, -mw * mw * r * r * phi)
    res = sum(terms)
    if relative:
        res = res / sum(np.abs(t) for t in terms)
    return float(res) if res.ndim == 0 else res
