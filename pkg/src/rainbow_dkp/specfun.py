"""Pochhammer symbols, Kummer's confluent hypergeometric function and Laguerre polynomials."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, ParameterError

SERIES_RTOL = 1e-16
SERIES_MAX_TERMS = 100_000
_INTEGER_TOL = 1e-12


@dataclass(frozen=True)
class KummerParams:
    a: float
    b: float
    z: float

    def __post_init__(self):
        if nonpositive_integer(self.b) is not None:
            raise ParameterError(f"1F1 second parameter must not be a non-positive integer, got {self.b}")


def nonpositive_integer(a: float, tol: float = _INTEGER_TOL) -> int | None:
    """Return ``n`` if ``a`` equals ``-n`` (n >= 0) within ``tol``, else None."""
    n = round(-a)
    if n >= 0 and abs(a + n) < tol:
        return int(n)
    return None


def pochhammer(a: float, n: int) -> float:
    """Rising factorial ``a (a+1) ... (a+n-1)``."""
    if n < 0:
        raise ParameterError(f"pochhammer order must be >= 0, got {n}")
    out = 1.0
    for k in range(n):
        out *= a + k
    return out


def _as_output(values: np.ndarray, scalar: bool):
    return float(values) if scalar else values


def kummer_1f1(a: float, b: float, z):
    """Kummer's function ``1F1(a; b; z)`` for real arguments.

    A non-positive integer ``a = -n`` gives the exact degree-n polynomial.
    Otherwise the power series is summed until the running term is below
    ``1e-16`` of the partial sum; negative ``z`` goes through Kummer's
    transformation first.  ``z`` may be a scalar or an array.
    """
    KummerParams(a, b, 0.0)
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=float)

    n = nonpositive_integer(a)
    if n is not None:
        return _as_output(_kummer_polynomial(n, b, z), scalar)

    out = np.empty_like(z)
    neg = z < 0
    if np.any(~neg):
        out[~neg] = _kummer_series(a, b, z[~neg])
    if np.any(neg):
        # Kummer's transformation removes the alternating signs for z < 0
        zn = z[neg]
        out[neg] = np.exp(zn) * _kummer_series(b - a, b, -zn)
    return _as_output(out, scalar)


def _kummer_polynomial(n: int, b: float, z: np.ndarray) -> np.ndarray:
    """``1F1(-n; b; z)`` from the contiguous relation in the first parameter.

    ``c M(c+1) = (2c - b + z) M(c) + (b - c) M(c-1)`` stepped from ``c = 0``
    down to ``c = -n``; unlike the explicit sum it does not cancel for large z.
    """
    prev = np.ones_like(z)
    if n == 0:
        return prev
    cur = (b - z) / b
    for k in range(1, n):
        c = -float(k)
        prev, cur = cur, (c * prev - (2.0 * c - b + z) * cur) / (b - c)
    return cur


def _kummer_series(a: float, b: float, z: np.ndarray) -> np.ndarray:
    zmax = float(np.max(np.abs(z))) if z.size else 0.0
    term = np.ones_like(z)
    total = np.ones_like(z)
    for k in range(SERIES_MAX_TERMS):
        term = term * ((a + k) / (b + k)) * z / (k + 1)
        total = total + term
        # a tiny (a+k) factor can shrink one term early; only stop once the ratio decays
        if k + 1 > zmax + abs(a) and np.all(np.abs(term) <= SERIES_RTOL * np.abs(total)):
            return total
    raise ConvergenceError(f"1F1({a}; {b}; z) did not converge in {SERIES_MAX_TERMS} terms")


def kummer_1f1_derivatives(a: float, b: float, z, order: int = 2):
    """``[F, F', F'', ...]`` up to ``order`` using ``d/dz 1F1(a;b;z) = (a/b) 1F1(a+1;b+1;z)``."""
    n = nonpositive_integer(a)
    if n is not None:
        a = float(-n)  # keep every derivative on the terminating branch
    out = []
    coef = 1.0
    for k in range(order + 1):
        out.append(coef * kummer_1f1(a + k, b + k, z) if coef != 0.0 else 0.0 * np.asarray(z, float))
        coef *= (a + k) / (b + k)
    return out


def laguerre(n: int, a: float, z):
    """Generalized Laguerre polynomial ``L_n^{(a)}(z)`` by the three-term recurrence."""
    if n < 0:
        raise ParameterError(f"degree must be >= 0, got {n}")
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=float)
    prev = np.zeros_like(z)
    cur = np.ones_like(z)
    for k in range(n):
        prev, cur = cur, ((2 * k + 1 + a - z) * cur - (k + a) * prev) / (k + 1)
    return _as_output(cur, scalar)


def laguerre_via_kummer(n: int, a: float, z):
    """``((a+1)_n / n!) 1F1(-n; a+1; z)``, the hypergeometric form of ``L_n^{(a)}``."""
    return pochhammer(a + 1.0, n) / math.factorial(n) * kummer_1f1(-n, a + 1.0, z)
