"""Rainbow-function pairs, the modified dispersion relation and the conical metric.

All energies are measured in Planck units, so the rainbow argument ``x``
is simply the probe energy ``E``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError, ParameterError

# below this |eps*x| the exponential pair is evaluated from its Taylor series
_SERIES_CUTOFF = 1e-4


class Scenario(str, enum.Enum):
    IDENTITY = "identity"
    CASE1 = "case1"
    CASE2 = "case2"
    CASE3 = "case3"

    @classmethod
    def parse(cls, value) -> "Scenario":
        """Accept a Scenario, its name/value, or the case number 0..3."""
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {"0": "identity", "1": "case1", "2": "case2", "3": "case3"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ParameterError(f"unknown scenario {value!r}") from None


@dataclass(frozen=True)
class RainbowPair:
    """The pair ``(g0, g1)`` of one scenario at a fixed ``epsilon``.

    * case1: ``g0 = g1 = 1/(1 - eps x)``
    * case2: ``g0 = 1``, ``g1 = sqrt(1 - eps x^2)``
    * case3: ``g0 = (exp(eps x) - 1)/(eps x)``, ``g1 = 1``
    """

    scenario: Scenario
    epsilon: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "scenario", Scenario.parse(self.scenario))
        eps = float(self.epsilon)
        if not math.isfinite(eps) or eps < 0:
            raise ParameterError(f"epsilon must be finite and >= 0, got {self.epsilon}")
        object.__setattr__(self, "epsilon", eps)

    def g0(self, x: float) -> float:
        return eval_g0(self, x)

    def g1(self, x: float) -> float:
        return eval_g1(self, x)

    def singular_points(self) -> tuple[float, ...]:
        """Energies where ``g0``/``g1`` stop being finite and real."""
        eps = self.epsilon
        if eps == 0:
            return ()
        if self.scenario is Scenario.CASE1:
            return (1.0 / eps,)
        if self.scenario is Scenario.CASE2:
            edge = 1.0 / math.sqrt(eps)
            return (-edge, edge)
        return ()


IDENTITY = RainbowPair(Scenario.IDENTITY)


def _case1_factor(pair: RainbowPair, x: float) -> float:
    den = 1.0 - pair.epsilon * x
    if den == 0.0:
        raise DomainError(f"case1 rainbow pole at x = 1/epsilon = {x}")
    return 1.0 / den


def eval_g0(pair: RainbowPair, x: float) -> float:
    x = float(x)
    sc = pair.scenario
    if sc is Scenario.CASE1:
        return _case1_factor(pair, x)
    if sc is Scenario.CASE3:
        y = pair.epsilon * x
        if abs(y) < _SERIES_CUTOFF:
            return 1.0 + y * (0.5 + y * (1.0 / 6.0 + y / 24.0))
        return math.expm1(y) / y
    return 1.0


def eval_g1(pair: RainbowPair, x: float) -> float:
    x = float(x)
    sc = pair.scenario
    if sc is Scenario.CASE1:
        return _case1_factor(pair, x)
    if sc is Scenario.CASE2:
        rad = 1.0 - pair.epsilon * x * x
        if rad <= 0.0:
            raise DomainError(f"case2 requires epsilon*x^2 < 1, got {pair.epsilon * x * x}")
        return math.sqrt(rad)
    return 1.0


def mdr_residual(pair: RainbowPair, E: float, p: float, M: float) -> float:
    """``E^2 g0^2 - p^2 g1^2 - M^2``; zero on the modified mass shell."""
    g0 = eval_g0(pair, E)
    g1 = eval_g1(pair, E)
    return E * E * g0 * g0 - p * p * g1 * g1 - M * M


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 < alpha <= 1.0):
        raise ParameterError(f"alpha must lie in (0, 1], got {alpha}")
    return alpha


def deficit_angle(alpha: float) -> float:
    """Deficit angle ``2 pi (1 - alpha)`` of the cosmic string."""
    return 2.0 * math.pi * (1.0 - check_alpha(alpha))


@dataclass(frozen=True)
class MetricDiagonal:
    g_tt: float
    g_rr: float
    g_phiphi: float
    g_zz: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.g_tt, self.g_rr, self.g_phiphi, self.g_zz)


def metric_at(pair: RainbowPair, x: float, r: float, alpha: float) -> MetricDiagonal:
    """Diagonal of the energy-dependent cosmic-string metric in (t, r, phi, z)."""
    alpha = check_alpha(alpha)
    if not r > 0:
        raise DomainError(f"r must be positive, got {r}")
    g0 = eval_g0(pair, x)
    g1 = eval_g1(pair, x)
    inv1 = 1.0 / (g1 * g1)
    return MetricDiagonal(-1.0 / (g0 * g0), inv1, alpha * alpha * r * r * inv1, inv1)
