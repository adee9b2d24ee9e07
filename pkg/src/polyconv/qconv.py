"""Weighted convolutions on the unit-circle ray of q-binomials.

The coefficient table C_k^(n)(lambda) is computed by the real sine-ratio
product (cancellation free, positive on the open interval) rather than via
complex Gaussian binomials.  Tables are cached per (n, lambda bits).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import OutOfRange
from .poly import LambdaParam, Polynomial


def _check_lambda(n, lam, allow_upper=False):
    upper = 2.0 * math.pi / n
    hi = upper if allow_upper else upper - 1e-15
    if not 0.0 <= lam <= hi + (1e-15 if allow_upper else 0.0):
        raise OutOfRange(f"lambda={lam} outside admissible range for n={n}")


@lru_cache(maxsize=4096)
def _table(n, lam_bits):
    lam = np.frombuffer(lam_bits, dtype=float)[0]
    if lam == 0.0:
        return np.array([float(math.comb(n, k)) for k in range(n + 1)])
    upper = 2.0 * math.pi / n
    if abs(lam - upper) <= 1e-15:
        vals = np.zeros(n + 1)
        vals[0] = vals[n] = 1.0
        return vals
    vals = np.empty(n + 1)
    vals[0] = 1.0
    # C_k = C_{k-1} * sin((n-k+1) lam/2) / sin(k lam/2), accumulated in order
    for k in range(1, n + 1):
        vals[k] = vals[k - 1] * math.sin((n - k + 1) * lam / 2.0) / math.sin(k * lam / 2.0)
    return vals


def q_coefficient(n, k, lam):
    """C_k^(n)(lambda): sine-ratio product; binomial at lambda=0; 1/0 table
    at the upper endpoint 2*pi/n."""
    if not 0 <= k <= n:
        raise OutOfRange(f"k={k} outside 0..{n}")
    _check_lambda(n, lam, allow_upper=True)
    return float(_table(n, np.float64(lam).tobytes())[k])


@dataclass(frozen=True)
class QCoefficientTable:
    """The full row C_0..C_n at a given (n, lambda)."""

    n: int
    lam: float
    values: tuple

    @classmethod
    def build(cls, n, lam):
        _check_lambda(n, lam, allow_upper=True)
        return cls(n, lam, tuple(_table(n, np.float64(lam).tobytes())))


def q_extremal(n, lam):
    """Q_n(lambda; z) = prod_{j=1}^n (1 + e^{i(2j-n-1) lambda/2} z).

    The expanded coefficients are real and equal to C_k^(n)(lambda); the
    product expansion is cross-checked against the sine-ratio table and the
    real part is returned.
    """
    _check_lambda(n, lam, allow_upper=True)
    c = np.array([1.0 + 0.0j])
    for j in range(1, n + 1):
        f = cmath.exp(1j * (2 * j - n - 1) * lam / 2.0)
        nxt = np.zeros(c.size + 1, dtype=complex)
        nxt[: c.size] += c
        nxt[1:] += f * c
        c = nxt
    table = _table(n, np.float64(lam).tobytes())
    scale = max(1.0, float(np.max(np.abs(table))))
    if np.max(np.abs(c - table)) > 1e-12 * scale:
        raise AssertionError("expanded product disagrees with sine-ratio table")
    return Polynomial(table.astype(complex), n)


def gauss_product(n, q):
    """R_n(q; z) = prod_{j=1}^n (1 + q^{j-1} z), expanded."""
    c = np.array([1.0 + 0.0j])
    for j in range(1, n + 1):
        f = complex(q) ** (j - 1)
        nxt = np.zeros(c.size + 1, dtype=complex)
        nxt[: c.size] += c
        nxt[1:] += f * c
        c = nxt
    return Polynomial(c, n)


def grace_szego(f, g):
    """Binomial-weighted coefficientwise product: coeff_k(f) coeff_k(g) / C(n,k)."""
    f._check_degree(g)
    n = f.nominal_degree
    w = np.array([float(math.comb(n, k)) for k in range(n + 1)])
    return Polynomial(f.coeffs * g.coeffs / w, n)


def lambda_convolve(f, g, lp: LambdaParam):
    """Suffridge-weighted convolution: coeff_k(f) coeff_k(g) / C_k^(n)(lambda).

    The upper endpoint lambda = 2*pi/n is rejected: the interior weights
    vanish there.
    """
    f._check_degree(g)
    if f.nominal_degree != lp.n:
        raise OutOfRange(f"lambda parameter is for n={lp.n}, polynomials have n={f.nominal_degree}")
    _check_lambda(lp.n, lp.lam, allow_upper=False)
    w = _table(lp.n, np.float64(lp.lam).tobytes())
    return Polynomial(f.coeffs * g.coeffs / w, lp.n)


def delta(f, lp: LambdaParam):
    """The q-difference operator of step lambda, in coefficient form.

    coeff'_k = coeff_{k+1} * C_k^(n-1)(lambda) / C_{k+1}^(n)(lambda) for
    lambda > 0, and F'/n at lambda = 0.  Result has nominal degree n-1.
    """
    n = lp.n
    if f.nominal_degree != n:
        raise OutOfRange(f"lambda parameter is for n={n}, polynomial has n={f.nominal_degree}")
    if n < 1:
        raise OutOfRange("need n >= 1")
    _check_lambda(n, lp.lam, allow_upper=False)
    if lp.lam == 0.0:
        return Polynomial(f.derivative().coeffs / n, n - 1)
    big = _table(n, np.float64(lp.lam).tobytes())
    if n == 1:
        small = np.array([1.0])
    else:
        small = _table(n - 1, np.float64(lp.lam).tobytes())
    out = f.coeffs[1:] * small / big[1:]
    return Polynomial(out, n - 1)


def pre_lift(f, lp: LambdaParam):
    """Hadamard product with Q_n(lambda; .): the pre-coefficient class lift."""
    if f.nominal_degree != lp.n:
        raise OutOfRange(f"lambda parameter is for n={lp.n}, polynomial has n={f.nominal_degree}")
    _check_lambda(lp.n, lp.lam, allow_upper=False)
    w = _table(lp.n, np.float64(lp.lam).tobytes())
    return Polynomial(f.coeffs * w, lp.n)
