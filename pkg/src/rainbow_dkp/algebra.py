"""Spin-0 DKP matrices, Kemmer algebra checks, tetrads and the radial coupled system."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError
from .rainbow import RainbowPair, check_alpha, eval_g0, eval_g1

THETA = np.array([[0, 1], [1, 0]], dtype=np.int64)
TAU = (
    np.array([[-1, 0, 0], [0, 0, 0]], dtype=np.int64),
    np.array([[0, -1, 0], [0, 0, 0]], dtype=np.int64),
    np.array([[0, 0, -1], [0, 0, 0]], dtype=np.int64),
)


class Signature(str, enum.Enum):
    MOSTLY_MINUS = "mostly-minus"  # diag(+, -, -, -)
    MOSTLY_PLUS = "mostly-plus"  # diag(-, +, +, +)

    def eta(self) -> np.ndarray:
        d = [1, -1, -1, -1] if self is Signature.MOSTLY_MINUS else [-1, 1, 1, 1]
        return np.diag(np.array(d, dtype=np.int64))


def _build_flat() -> tuple[np.ndarray, ...]:
    b0 = np.zeros((5, 5), dtype=np.int64)
    b0[:2, :2] = THETA
    out = [b0]
    for tau in TAU:
        b = np.zeros((5, 5), dtype=np.int64)
        b[:2, 2:] = tau
        b[2:, :2] = -tau.T
        out.append(b)
    for b in out:
        b.setflags(write=False)
    return tuple(out)


_FLAT = _build_flat()


def beta_flat(a: int) -> np.ndarray:
    """Flat-space 5x5 DKP matrix ``beta^a`` (read-only integer array)."""
    if a not in (0, 1, 2, 3):
        raise IndexError(f"DKP index must be 0..3, got {a}")
    return _FLAT[a]


def eta0() -> np.ndarray:
    b0 = _FLAT[0]
    return 2 * (b0 @ b0) - np.eye(5, dtype=np.int64)


def kemmer_residual(a: int, b: int, c: int, signature=Signature.MOSTLY_MINUS) -> np.ndarray:
    """``b^a b^b b^c + b^c b^b b^a - eta^{ab} b^c - eta^{bc} b^a`` in integer arithmetic."""
    eta = Signature(signature).eta()
    ba, bb, bc = beta_flat(a), beta_flat(b), beta_flat(c)
    return ba @ bb @ bc + bc @ bb @ ba - eta[a, b] * bc - eta[b, c] * ba


def kemmer_summary(signature=Signature.MOSTLY_MINUS) -> tuple[int, list[tuple[int, int, int]]]:
    """Count of triples obeying the algebra and the list of failing ones."""
    failing = [
        t for t in itertools.product(range(4), repeat=3) if np.any(kemmer_residual(*t, signature))
    ]
    return 64 - len(failing), failing


def affine_connection(alpha: float) -> np.ndarray:
    """The only nonzero connection matrix, ``Gamma_phi``."""
    alpha = check_alpha(alpha)
    g = np.zeros((5, 5))
    g[2, 3] = alpha
    g[3, 2] = -alpha
    return g


@dataclass(frozen=True)
class TetradSet:
    e_down: tuple[float, float, float, float]
    e_up: tuple[float, float, float, float]

    def metric(self) -> tuple[float, float, float, float]:
        # g_{mu mu} = (e^a_mu)^2 eta_aa with eta = diag(-, +, +, +)
        sig = (-1.0, 1.0, 1.0, 1.0)
        return tuple(s * e * e for s, e in zip(sig, self.e_down))


def tetrads(pair: RainbowPair, x: float, r: float, alpha: float) -> TetradSet:
    alpha = check_alpha(alpha)
    if not r > 0:
        raise DomainError(f"r must be positive, got {r}")
    g0 = eval_g0(pair, x)
    g1 = eval_g1(pair, x)
    return TetradSet(
        e_down=(1.0 / g0, 1.0 / g1, alpha * r / g1, 1.0 / g1),
        e_up=(g0, g1, g1 / (alpha * r), g1),
    )


_COORD = {"t": 0, "r": 1, "phi": 2, "z": 3}


def curved_beta(mu, pair: RainbowPair, x: float, r: float, alpha: float) -> np.ndarray:
    """``beta^mu = e^mu_a beta^a`` for coordinate ``mu`` in t, r, phi, z."""
    idx = _COORD.get(mu, mu)
    if idx not in (0, 1, 2, 3):
        raise ParameterError(f"unknown coordinate {mu!r}")
    alpha = check_alpha(alpha)
    if idx == 0:
        scale = eval_g0(pair, x)
    elif idx == 2:
        if not r > 0:
            raise DomainError("beta^phi is singular at r = 0")
        scale = eval_g1(pair, x) / (r * alpha)
    else:
        scale = eval_g1(pair, x)
    return scale * beta_flat(idx).astype(float)


def bilinear_current(psi, beta: np.ndarray) -> float:
    """``(1/2) psi^dagger eta0 beta psi`` for a complex 5-spinor."""
    psi = np.asarray(psi, dtype=complex)
    val = 0.5 * np.conj(psi) @ (eta0() @ beta) @ psi
    return float(val.real)


def coupled_system_terms(
    phi,
    dphi1: float,
    dphi3: float,
    *,
    energy: float,
    pair: RainbowPair,
    r: float,
    alpha: float,
    omega: float,
    mass: float,
    m: int,
    kz: float = 0.0,
    x: float | None = None,
) -> list[tuple[float, ...]]:
    """Individual terms of each of the five radial DKP equations."""
    if not r > 0:
        raise DomainError(f"r must be positive, got {r}")
    p1, p2, p3, p4, p5 = (float(v) for v in phi)
    x = energy if x is None else x
    g0 = eval_g0(pair, x)
    g1 = eval_g1(pair, x)
    E, M, w, a = energy, mass, omega, alpha
    return [
        (
            -r * a * M * p1,
            E * g0 * r * a * p2,
            a * g1 * p3,
            a * g1 * r * dphi3,
            -a * g1 * M * w * r * r * p3,
            g1 * m * p4,
            g1 * kz * r * a * p5,
        ),
        (E * g0 * p1, -M * p2),
        (g1 * r * M * w * p1, g1 * dphi1, -M * p3),
        (-g1 * m * p1, -r * a * M * p4),
        (g1 * kz * p1, M * p5),
    ]


def coupled_system_residual(phi, dphi1: float, dphi3: float, **kw) -> np.ndarray:
    """Left-hand sides of the five radial DKP equations.

    ``phi`` holds real radial profiles; ``phi[2]`` is the third component
    divided by the imaginary unit, and ``dphi3`` its radial derivative.
    Keywords: ``energy, pair, r, alpha, omega, mass, m`` and optionally ``kz, x``.
    """
    return np.array([sum(t) for t in coupled_system_terms(phi, dphi1, dphi3, **kw)])


def coupled_system_scale(phi, dphi1: float, dphi3: float, **kw) -> np.ndarray:
    """Sum of term magnitudes per equation, the natural size of each residual."""
    return np.array([sum(abs(v) for v in t) for t in coupled_system_terms(phi, dphi1, dphi3, **kw)])
