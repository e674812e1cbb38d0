"""Bound-state energies of the DKP oscillator in the three rainbow scenarios.

Every scenario reduces the radial problem to the same Kummer equation with
an effective eigenvalue

    kappa^2(E) = (g0(E)^2 E^2 - M^2) / g1(E)^2 + 2 M omega,

and normalizable states require ``kappa^2 = 2 M omega (2n + 1 + |m|/alpha)``.
The closed forms below solve that condition explicitly; ``energy_implicit``
solves it numerically and serves as the independent check.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, replace

from scipy.optimize import brentq

from .errors import (
    DomainError,
    NoCutoffError,
    NoSignChangeError,
    ParameterError,
    UnphysicalError,
)
from .rainbow import RainbowPair, Scenario, check_alpha, eval_g0, eval_g1


class Branch(str, enum.Enum):
    PLUS = "plus"
    MINUS = "minus"

    @property
    def sign(self) -> float:
        return 1.0 if self is Branch.PLUS else -1.0


@dataclass(frozen=True)
class ModelParams:
    """Reduced inputs ``M/E_P``, ``omega/E_P``, ``epsilon`` and ``alpha``."""

    mass: float
    omega: float
    epsilon: float = 0.0
    alpha: float = 1.0

    def __post_init__(self):
        for name in ("mass", "omega"):
            v = float(getattr(self, name))
            if not (math.isfinite(v) and v > 0):
                raise ParameterError(f"{name} must be finite and > 0, got {v}")
            object.__setattr__(self, name, v)
        eps = float(self.epsilon)
        if not (math.isfinite(eps) and eps >= 0):
            raise ParameterError(f"epsilon must be finite and >= 0, got {eps}")
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "alpha", check_alpha(self.alpha))

    def pair(self, scenario) -> RainbowPair:
        return RainbowPair(Scenario.parse(scenario), self.epsilon)


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    m: int
    kz: float = 0.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ParameterError(f"radial quantum number must be an integer >= 0, got {self.n}")
        if int(self.m) != self.m:
            raise ParameterError(f"magnetic quantum number must be an integer, got {self.m}")
        if self.kz != 0:
            raise ParameterError("only k_z = 0 states are supported")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "m", int(self.m))

    def abs_j(self, alpha: float) -> float:
        return abs(self.m) / alpha


@dataclass(frozen=True)
class SpectrumResult:
    energy: float
    branch: Branch
    physical: bool
    kappa_sq: float
    scenario: Scenario = Scenario.IDENTITY


def kappa_sq_target(p: ModelParams, q: QuantumNumbers) -> float:
    """Quantized value ``2 M omega (2n + 1 + |m|/alpha)``."""
    return 2.0 * p.mass * p.omega * (2 * q.n + 1 + q.abs_j(p.alpha))


def kappa_sq(pair: RainbowPair, energy: float, mass: float, omega: float) -> float:
    """Effective Kummer eigenvalue of the scenario at energy ``E`` (self-consistent ``x = E``).

    Each scenario uses its own reduced form, so the case-1 expression stays
    finite across the rainbow pole at ``E = 1/eps``.
    """
    sc, eps = pair.scenario, pair.epsilon
    shift = 2.0 * mass * omega
    if sc is Scenario.CASE1:
        t = 1.0 - eps * energy
        return energy * energy - t * t * mass * mass + shift
    if sc is Scenario.CASE2:
        den = 1.0 - eps * energy * energy
        if den <= 0.0:
            raise DomainError(f"case2 requires epsilon*E^2 < 1, got {1.0 - den}")
        return (energy * energy - mass * mass) / den + shift
    if sc is Scenario.CASE3:
        ge = eval_g0(pair, energy) * energy
        return ge * ge - mass * mass + shift
    return energy * energy - mass * mass + shift


def kappa_sq_from_pair(pair: RainbowPair, energy: float, mass: float, omega: float) -> float:
    """``(g0^2 E^2 - M^2)/g1^2 + 2 M omega`` built directly from the rainbow functions."""
    g0 = eval_g0(pair, energy)
    g1 = eval_g1(pair, energy)
    return (g0 * g0 * energy * energy - mass * mass) / (g1 * g1) + 2.0 * mass * omega


def _level_term(p: ModelParams, q: QuantumNumbers) -> float:
    # 2 M omega (|m|/alpha + 2n): the omega-dependent part left after the 2 M omega shift
    return 2.0 * p.mass * p.omega * (q.abs_j(p.alpha) + 2 * q.n)


def _result(scenario, p, energy, branch, physical) -> SpectrumResult:
    ksq = math.nan
    if physical:
        ksq = kappa_sq(p.pair(scenario), energy, p.mass, p.omega)
    return SpectrumResult(energy, Branch(branch), physical, ksq, Scenario.parse(scenario))


def energy_identity(p: ModelParams, q: QuantumNumbers, branch=Branch.PLUS) -> SpectrumResult:
    branch = Branch(branch)
    e = branch.sign * math.sqrt(p.mass**2 + _level_term(p, q))
    return _result(Scenario.IDENTITY, p, e, branch, True)


def case1_radicand(p: ModelParams, q: QuantumNumbers) -> float:
    M, eps = p.mass, p.epsilon
    return M * M + (1.0 - eps * eps * M * M) * M * (2.0 * q.abs_j(p.alpha) + 4.0 * q.n) * p.omega


def _case1_denominator(p: ModelParams) -> float:
    den = 1.0 - p.epsilon**2 * p.mass**2
    if den == 0.0:
        raise ParameterError("case1 energy is undefined for epsilon * M = 1")
    return den


def energy_case1(p: ModelParams, q: QuantumNumbers, branch=Branch.PLUS) -> SpectrumResult:
    """Roots of ``E^2 - (1 - eps E)^2 M^2 = 2 M omega (2n + |j|)``; not symmetric about zero."""
    branch = Branch(branch)
    den = _case1_denominator(p)
    rad = case1_radicand(p, q)
    if rad < 0:
        return _result(Scenario.CASE1, p, math.nan, branch, False)
    e = (-p.epsilon * p.mass**2 + branch.sign * math.sqrt(rad)) / den
    return _result(Scenario.CASE1, p, e, branch, True)


def energy_case2(p: ModelParams, q: QuantumNumbers, branch=Branch.PLUS) -> SpectrumResult:
    """Symmetric pair that saturates at ``1/sqrt(eps)`` for large omega."""
    branch = Branch(branch)
    level = _level_term(p, q)
    mag = math.sqrt((p.mass**2 + level) / (1.0 + p.epsilon * level))
    e = branch.sign * mag
    return _result(Scenario.CASE2, p, e, branch, p.epsilon * e * e < 1.0)


def case3_level(p: ModelParams, q: QuantumNumbers) -> float:
    return math.sqrt(p.mass**2 + _level_term(p, q))


def energy_case3(p: ModelParams, q: QuantumNumbers, branch=Branch.PLUS) -> SpectrumResult:
    """``ln(1 -+ eps S) / eps``; the minus root exists only while ``eps S < 1``."""
    branch = Branch(branch)
    s = case3_level(p, q)
    eps = p.epsilon
    if eps == 0.0:
        return _result(Scenario.CASE3, p, branch.sign * s, branch, True)
    arg = branch.sign * eps * s
    if arg <= -1.0:
        return _result(Scenario.CASE3, p, math.nan, branch, False)
    # S log1p(y)/y stays accurate when eps*S underflows
    ratio = math.log1p(arg) / arg if arg != 0.0 else 1.0
    return _result(Scenario.CASE3, p, branch.sign * s * ratio, branch, True)


_CLOSED_FORMS = {
    Scenario.IDENTITY: energy_identity,
    Scenario.CASE1: energy_case1,
    Scenario.CASE2: energy_case2,
    Scenario.CASE3: energy_case3,
}


def energy(scenario, p: ModelParams, q: QuantumNumbers, branch=Branch.PLUS) -> SpectrumResult:
    """Closed-form energy for any scenario."""
    return _CLOSED_FORMS[Scenario.parse(scenario)](p, q, branch)


def energies(scenario, p: ModelParams, q: QuantumNumbers) -> tuple[SpectrumResult, SpectrumResult]:
    return energy(scenario, p, q, Branch.PLUS), energy(scenario, p, q, Branch.MINUS)


# --- implicit oracle -------------------------------------------------------

_SCAN_NODES = 48
_POLE_GAP = 1e-9


def _objective(pair: RainbowPair, p: ModelParams, target: float):
    def f(e: float) -> float:
        try:
            return kappa_sq(pair, e, p.mass, p.omega) - target
        except OverflowError:
            return math.inf

    return f


def _kappa_singularities(pair: RainbowPair) -> tuple[float, ...]:
    # the reduced case-1 form is polynomial; only case 2 has edges
    if pair.scenario is Scenario.CASE2:
        return pair.singular_points()
    return ()


def _segments(lo: float, hi: float, singular) -> list[tuple[float, float]]:
    """Split ``[lo, hi]`` at the singular points, keeping a small gap around each."""
    cuts = sorted(s for s in singular if lo < s < hi)
    edges = [lo]
    for s in cuts:
        gap = _POLE_GAP * max(1.0, abs(s))
        edges += [s - gap, s + gap]
    edges.append(hi)
    return [(edges[i], edges[i + 1]) for i in range(0, len(edges), 2)]


def _first_sign_change(f, a: float, b: float, outward_from: float):
    """Scan ``[a, b]`` from the end nearest ``outward_from``; return the first bracketing pair."""
    xs = [a + (b - a) * k / _SCAN_NODES for k in range(_SCAN_NODES + 1)]
    if abs(b - outward_from) < abs(a - outward_from):
        xs.reverse()
    prev_x = prev_f = None
    for x in xs:
        try:
            fx = f(x)
        except DomainError:
            prev_x = prev_f = None
            continue
        if fx == 0.0:
            return x, x
        if prev_f is not None and (prev_f < 0) != (fx < 0):
            return prev_x, x
        prev_x, prev_f = x, fx
    return None


def default_bracket(p: ModelParams, q: QuantumNumbers, branch) -> tuple[float, float]:
    hi = 20.0 * math.sqrt(p.mass**2 + kappa_sq_target(p, q))
    return (0.0, hi) if Branch(branch) is Branch.PLUS else (-hi, 0.0)


def energy_implicit(
    scenario,
    p: ModelParams,
    q: QuantumNumbers,
    branch=Branch.PLUS,
    bracket: tuple[float, float] | None = None,
) -> SpectrumResult:
    """Root of ``kappa^2(E) - kappa^2_target`` found by scanning and Brent's method.

    The plus branch is searched on ``E > 0`` and the minus branch on
    ``E < 0``; the root closest to zero is returned.  Segments are split at
    rainbow poles and skipped where the rainbow pair is not real.
    """
    scenario = Scenario.parse(scenario)
    branch = Branch(branch)
    pair = p.pair(scenario)
    target = kappa_sq_target(p, q)
    lo, hi = bracket if bracket is not None else default_bracket(p, q, branch)
    if not lo < hi:
        raise ParameterError(f"empty bracket [{lo}, {hi}]")
    f = _objective(pair, p, target)
    segs = _segments(lo, hi, _kappa_singularities(pair))
    if branch is Branch.MINUS:
        segs.reverse()
    for a, b in segs:
        found = _first_sign_change(f, a, b, outward_from=0.0)
        if found is None:
            continue
        x0, x1 = found
        if x0 == x1:
            root = x0
        else:
            x0, x1 = min(x0, x1), max(x0, x1)
            while not math.isfinite(f(x1)):
                mid = 0.5 * (x0 + x1)
                (x0, x1) = (mid, x1) if f(mid) < 0 else (x0, mid)
            root = brentq(f, x0, x1, xtol=1e-15, rtol=1e-15, maxiter=500)
        return _result(scenario, p, root, branch, True)
    raise NoSignChangeError(
        f"no {branch.value}-branch root of kappa^2(E) = {target:.6g} for {scenario.value} in [{lo}, {hi}]"
    )


# --- derived quantities ------------------------------------------------------


def gap_width_case1(p: ModelParams, q: QuantumNumbers) -> float:
    """``E_plus - E_minus`` for the first scenario."""
    rad = case1_radicand(p, q)
    if rad < 0:
        raise UnphysicalError(f"case1 radicand is negative ({rad})")
    return 2.0 * math.sqrt(rad) / _case1_denominator(p)


def cutoff_omega_case3(p: ModelParams, q: QuantumNumbers) -> float:
    """Frequency above which the case-3 minus branch ceases to exist.

    Returns 0.0 when ``M >= 1/eps`` (the minus branch is never physical).
    ``p.omega`` is ignored.
    """
    if p.epsilon <= 0:
        raise ParameterError("cutoff frequency requires epsilon > 0")
    shape = q.abs_j(p.alpha) + 2 * q.n
    if shape == 0:
        raise NoCutoffError("m = n = 0: the case-3 energy does not depend on omega")
    num = 1.0 / p.epsilon**2 - p.mass**2
    if num <= 0:
        return 0.0
    return num / (2.0 * p.mass * shape)


def minus_branch_exists_case3(p: ModelParams, q: QuantumNumbers, far: float = 60.0) -> bool:
    """Whether ``kappa~^2`` on ``E < 0`` can reach the quantized target.

    ``kappa~^2`` grows monotonically towards ``E -> -inf``; its value at
    ``E = -far/eps`` stands in for the supremum.
    """
    pair = p.pair(Scenario.CASE3)
    sup = kappa_sq(pair, -far / p.epsilon, p.mass, p.omega)
    return sup > kappa_sq_target(p, q)


def cutoff_omega_case3_bisect(
    p: ModelParams, q: QuantumNumbers, omega_hi: float | None = None, tol: float = 1e-13
) -> float:
    """Locate the case-3 cutoff by bisection on the existence of a minus root."""
    def exists(w: float) -> bool:
        return minus_branch_exists_case3(replace(p, omega=w), q)

    lo = 1e-300
    if not exists(lo):
        return 0.0
    hi = omega_hi or 1.0
    while exists(hi):
        hi *= 2.0
        if hi > 1e300:
            raise NoCutoffError("minus branch exists at every omega")
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if exists(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# --- parameter grid used by the invariant checks ------------------------------

GRID_EPSILON = (0.0, 0.2, 0.5, 1.0)
GRID_ALPHA = (0.2, 0.5, 0.8, 1.0)
GRID_MASS = (0.1, 0.5, 0.8)
GRID_OMEGA = (0.01, 0.1, 1.0, 5.0)
GRID_N = (0, 1, 2)
GRID_M = (-2, -1, 0, 1, 2)


def parameter_grid():
    """Yield ``(ModelParams, QuantumNumbers)`` over the 2880-tuple check grid."""
    for eps, alpha, mass, omega, n, m in itertools.product(
        GRID_EPSILON, GRID_ALPHA, GRID_MASS, GRID_OMEGA, GRID_N, GRID_M
    ):
        yield ModelParams(mass, omega, eps, alpha), QuantumNumbers(n, m)
