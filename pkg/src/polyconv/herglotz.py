"""Constructive convex-combination approximation of positive-real-part
functions by Möbius kernels.

From the Taylor coefficients of f (normalized f(0) = 1) the truncation
S_k(rz) is folded into the self-inversive polynomial
P(z) = S_k(rz) + z^k (S_k(rz))^{*k} of degree m = 2k; the values of P at the
m-th roots of unity, divided by 2m, are the weights of a convex combination
of kernels (1 + w z)/(1 - w z) that approximates f on compact subsets of the
disk as k grows and r tends to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import HypothesisViolated, OutOfDomain, OutOfRange, PositivityLost
from .poly import LambdaParam, Polynomial

#: deterministic default schedule: k = 2^j paired with r = 1 - 2^(-j/2)
def default_schedule(j):
    return 2 ** j, 1.0 - 2.0 ** (-j / 2.0)


@dataclass(frozen=True)
class HerglotzApproximant:
    """Convex combination sum_j weights[j] (1 + nodes[j] z)/(1 - nodes[j] z)."""

    m: int
    weights: tuple  # of positive reals summing to 1
    nodes: tuple  # the m-th roots of unity, in index order

    def __post_init__(self):
        if self.m < 2 or self.m % 2 != 0:
            raise OutOfRange(f"m={self.m} must be even and >= 2")
        if any(w <= 0 for w in self.weights):
            raise PositivityLost("all weights must be strictly positive")
        if abs(sum(self.weights) - 1.0) > 1e-10:
            raise PositivityLost(f"weights sum to {sum(self.weights)!r}, not 1")


def build_approximant(coeffs, k, r):
    """Weights and nodes from the degree-k truncation evaluated at radius r.

    Requires at least k+1 Taylor coefficients with coeffs[0] = 1 and
    Re S_k(rz) > 0 on the circle (checked on a 4m-point grid).  The weight
    sum equals 1 by the partial-fraction identity; it is asserted, never
    rescaled, so a failure flags a genuine numerical breakdown.
    """
    c = np.asarray(list(coeffs), dtype=complex)
    if c.size < k + 1:
        raise OutOfRange(f"need at least {k + 1} coefficients, got {c.size}")
    if abs(c[0] - 1.0) > 1e-12:
        raise HypothesisViolated("normalization f(0) = 1 required")
    if not 0.0 < r < 1.0:
        raise OutOfRange(f"r={r} outside (0, 1)")
    m = 2 * k
    s = c[: k + 1] * r ** np.arange(k + 1)  # S_k(r z)

    grid = np.exp(2j * np.pi * np.arange(4 * m) / (4 * m))
    vals = np.polyval(s[::-1], grid)
    worst = float(np.min(vals.real))
    if worst <= 0.0:
        raise PositivityLost(
            f"Re S_k(rz) reaches {worst:.3e} on the circle; raise k or lower r")

    # z^k S^{*k} at an m-th root of unity w is w^m conj(S(w)) = conj(S(w)),
    # so P(w) = 2 Re S(w) there.  The residue of P(z)/(1-z^m) at the pole w
    # carries the kernel 1/(1 - conj(w) z): each weight P(w)/(2m) pairs with
    # the conjugate node, which matters whenever f has non-real coefficients.
    pts = np.exp(2j * np.pi * np.arange(1, m + 1) / m)
    sv = np.polyval(s[::-1], pts)
    weights = sv.real / m
    nodes = np.conj(pts)
    return HerglotzApproximant(m, tuple(float(w) for w in weights),
                               tuple(complex(w) for w in nodes))


def folded_polynomial(coeffs, k, r):
    """The self-inversive P(z) = S_k(rz) + z^k (S_k(rz))^{*k} itself."""
    c = np.asarray(list(coeffs), dtype=complex)
    if c.size < k + 1:
        raise OutOfRange(f"need at least {k + 1} coefficients, got {c.size}")
    s = c[: k + 1] * r ** np.arange(k + 1)
    S = Polynomial(s, k)
    return Polynomial(np.concatenate([S.coeffs, np.zeros(k)]), 2 * k) + \
        Polynomial(np.concatenate([np.zeros(k), S.n_inverse().coeffs]), 2 * k)


def evaluate_approximant(h, z):
    """Value of the convex kernel combination at z in the open disk."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise OutOfDomain(f"|z|={abs(z)} >= 1")
    w = np.asarray(h.nodes)
    return complex(np.sum(np.asarray(h.weights) * (1.0 + w * z) / (1.0 - w * z)))


def evaluate_approximant_many(h, zs):
    zs = np.asarray(zs, dtype=complex)
    if np.any(np.abs(zs) >= 1.0):
        raise OutOfDomain("evaluation points must lie in the open unit disk")
    w = np.asarray(h.nodes)
    s = np.asarray(h.weights)
    return np.sum(s * (1.0 + np.outer(zs, w)) / (1.0 - np.outer(zs, w)), axis=1)


def disk_limit_check(p, lp: LambdaParam, grid=512):
    """Half-plane check for the n-inverse on an inner circle.

    For a candidate p with leading coefficient 1, verifies
    Re((p^{*n}(z) - conj(a_0) z^n)/(1 - conj(a_0) z^n)) > 1/2 on the circle
    of radius 1 - 1/grid.
    """
    n = lp.n
    c = p.coeffs
    if abs(c[n] - 1.0) > 1e-10:
        raise HypothesisViolated("leading coefficient must be 1")
    a0bar = np.conj(c[0])
    if abs(a0bar) >= 1.0:
        raise HypothesisViolated(f"need |a_0| < 1, got {abs(a0bar)}")
    rad = 1.0 - 1.0 / grid
    z = rad * np.exp(2j * np.pi * np.arange(grid) / grid)
    pstar = p.n_inverse()
    num = pstar.eval_many(z) - a0bar * z**n
    den = 1.0 - a0bar * z**n
    return bool(np.min(np.real(num / den)) > 0.5)
