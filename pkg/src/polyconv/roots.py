"""Root finding and unit-circle classification.

Aberth-Ehrlich simultaneous iteration from deterministic initial guesses
(scaled roots of unity offset by a golden-angle phase), Newton polish, and
geometric clustering for multiplicities.  Deterministic given its options.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NoConvergence, NotOnCircle

CIRCLE_TOL = 1e-7
GOLDEN_ANGLE = 2.0 * math.pi * (1.0 - 2.0 / (1.0 + math.sqrt(5.0)))

INSIDE = "INSIDE"
ON = "ON"
OUTSIDE = "OUTSIDE"


@dataclass(frozen=True)
class RootSet:
    """Roots with multiplicities plus circle classification tags."""

    roots: tuple  # of (location: complex, multiplicity: int)
    residual: float
    circle_tol: float = CIRCLE_TOL

    def tags(self):
        out = []
        for z, m in self.roots:
            r = abs(z)
            if abs(r - 1.0) <= self.circle_tol:
                out.append(ON)
            elif r < 1.0:
                out.append(INSIDE)
            else:
                out.append(OUTSIDE)
        return out

    @property
    def total_multiplicity(self):
        return sum(m for _, m in self.roots)

    def all_on_circle(self):
        return all(t == ON for t in self.tags())

    def all_inside(self):
        return all(t == INSIDE for t in self.tags())

    def all_in_closed_disk(self):
        return all(t != OUTSIDE for t in self.tags())

    def min_boundary_margin(self):
        """Smallest | |z| - 1 | over all roots."""
        return min(abs(abs(z) - 1.0) for z, _ in self.roots) if self.roots else math.inf

    def to_csv(self):
        lines = []
        for (z, m), t in zip(self.roots, self.tags()):
            lines.append(f"{z.real:.17g},{z.imag:.17g},{m},{t}")
        return "\n".join(lines)


def _aberth(coeffs, max_iter, tol):
    """All roots of the ascending-coefficient polynomial (exact degree form)."""
    d = coeffs.size - 1
    if d == 1:
        return np.array([-coeffs[0] / coeffs[1]])
    lead = coeffs[-1]
    mon = coeffs / lead
    dcoef = mon[1:] * np.arange(1, d + 1)
    # Cauchy-style radius keeps the start comparable to the root moduli
    radius = 1.0 + float(np.max(np.abs(mon[:-1]))) ** (1.0 / d)
    radius = min(max(radius, 0.5), 4.0)
    z = radius * np.exp(1j * (2.0 * np.pi * np.arange(d) / d + GOLDEN_ANGLE))
    rev = mon[::-1]
    drev = dcoef[::-1]
    for _ in range(max_iter):
        pv = np.polyval(rev, z)
        dv = np.polyval(drev, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = np.where(dv != 0, pv / dv, 0.0)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            sums = np.sum(1.0 / diff, axis=1)
            w = newton / (1.0 - newton * sums)
        w = np.where(np.isfinite(w), w, 0.0)
        z = z - w
        if np.max(np.abs(w)) < tol:
            break
    return z


def _link(indices, points, radius):
    """Single-linkage groups of the given point indices at the given radius."""
    groups = [[i] for i in indices]
    merged = True
    while merged and len(groups) > 1:
        merged = False
        for a in range(len(groups)):
            for b in range(a + 1, len(groups)):
                if any(
                    abs(points[i] - points[j]) < radius
                    for i in groups[a]
                    for j in groups[b]
                ):
                    groups[a] += groups[b]
                    del groups[b]
                    merged = True
                    break
            if merged:
                break
    return groups


def _refine_multiple(derivs, z, m, radius):
    """Newton on the (m-1)-th derivative, where an m-fold root is simple."""
    g = derivs[m - 1]
    dg = np.polyder(g)
    z0 = z
    for _ in range(20):
        dgv = np.polyval(dg, z0)
        if abs(dgv) < 1e-300:
            break
        step = np.polyval(g, z0) / dgv
        if abs(step) > 0.1:
            break
        z0 = z0 - step
        if abs(step) < 1e-15 * max(1.0, abs(z0)):
            break
    return z0 if abs(z0 - z) < radius else z


def _is_multiple(derivs, z0, m, rel_tol=1e-7):
    """Do p and its first m-1 derivatives all vanish at z0 (relatively)?

    Discriminates a genuine m-fold root (derivative values at rounding
    level) from a tight group of distinct roots (values of order spacing).
    """
    for j in range(m):
        c = derivs[j]
        norm = float(np.max(np.abs(c)))
        if norm == 0.0:
            continue
        size = norm * max(1.0, abs(z0)) ** (c.size - 1)
        if abs(np.polyval(c, z0)) > rel_tol * size:
            return False
    return True


def _cluster(points, cluster_tol, rev):
    """Group approximate roots into multiple roots, highest multiplicity
    first, accepting a group only when the derivative test confirms it.

    An m-fold root computed in floating point scatters into m points with
    spread of order eps**(1/m); the candidate radius grows accordingly with
    the hypothesized multiplicity, and false merges of genuinely distinct
    roots are rejected by _is_multiple.
    """
    n_pts = len(points)
    derivs = [np.asarray(rev)]
    for _ in range(n_pts):
        derivs.append(np.polyder(derivs[-1]))
    unused = set(range(n_pts))
    found = []
    for m in range(n_pts, 1, -1):
        radius = 3.0 * cluster_tol ** (1.0 / m)
        for g in _link(sorted(unused), points, radius):
            if len(g) != m:
                continue
            centroid = complex(np.mean([points[i] for i in g]))
            z0 = _refine_multiple(derivs, centroid, m, radius)
            if _is_multiple(derivs, z0, m):
                found.append((z0, m))
                unused -= set(g)
    for i in sorted(unused):
        found.append((complex(points[i]), 1))
    return found


def find_roots(p, max_iter=200, tol=1e-13, cluster_tol=1e-8, circle_tol=CIRCLE_TOL):
    """All roots of p with multiplicities, classified against the unit circle.

    Raises NoConvergence when the normalized residual at the simple roots
    stays above sqrt(tol) after the iteration budget.
    """
    d = p.exact_degree
    if p.is_zero or d < 1:
        raise ValueError("need a nonzero polynomial of exact degree >= 1")
    c = np.array(p.coeffs[: d + 1])
    # exact zeros at the origin come from vanishing low-order coefficients
    scale = float(np.max(np.abs(c)))
    k0 = 0
    while abs(c[k0]) == 0.0:
        k0 += 1
    zero_mult = k0
    c = c[k0:]
    approx = _aberth(c, max_iter, tol) if c.size > 1 else np.array([])

    # Newton polish (helps simple roots; harmless on clusters)
    rev = c[::-1] / c[-1]
    drev = (c[1:] * np.arange(1, c.size))[::-1] / c[-1]
    for _ in range(3):
        pv = np.polyval(rev, approx)
        dv = np.polyval(drev, approx)
        step = np.where(np.abs(dv) > 1e-300, pv / dv, 0.0)
        step = np.where(np.abs(step) < 0.1, step, 0.0)
        approx = approx - step

    found = _cluster(list(approx), cluster_tol, rev)
    if zero_mult:
        found.append((0.0 + 0.0j, zero_mult))

    simple = [z for z, m in found if m == 1]
    residual = 0.0
    if simple:
        # normalize by the natural size of p near each root so roots of
        # large modulus are not penalized
        vals = np.abs(p.eval_many(simple))
        sizes = scale * np.maximum(1.0, np.abs(simple)) ** d
        residual = float(np.max(vals / sizes))
        if residual > math.sqrt(tol):
            raise NoConvergence(
                f"residual {residual:.3e} above tolerance after {max_iter} iterations"
            )
    found.sort(key=lambda rm: (round(abs(rm[0]), 12), np.angle(rm[0])))
    return RootSet(tuple(found), residual, circle_tol)


def _on_circle_args(rs):
    """Arguments (with multiplicity) of an all-on-circle root set, snapped to T."""
    if not rs.all_on_circle():
        raise NotOnCircle("root set has zeros off the unit circle")
    args = []
    for z, m in rs.roots:
        args.extend([math.atan2(z.imag, z.real)] * m)
    return sorted(args)


def arg_separation(rs):
    """Minimum circular gap between consecutive root arguments.

    A multiplicity-m root counts as m coincident arguments, so any m >= 2
    gives separation 0.
    """
    args = _on_circle_args(rs)
    if any(m >= 2 for _, m in rs.roots):
        return 0.0
    if len(args) == 1:
        return 2.0 * math.pi
    gaps = [b - a for a, b in zip(args, args[1:])]
    gaps.append(2.0 * math.pi + args[0] - args[-1])
    return float(min(gaps))


def interspersed(p_roots, q_roots, strict=False, ang_tol=1e-9):
    """Do the unimodular zeros of P and Q alternate on the circle?

    Coincident zeros (one from each side, within ang_tol of argument) are
    admitted in the non-strict variant; strict additionally requires the
    zero sets to be disjoint.  Multiple zeros on either side break
    alternation and give False.
    """
    pa = _on_circle_args(p_roots)
    qa = _on_circle_args(q_roots)
    if len(pa) != len(qa):
        return False

    def circ_close(a, b):
        d = abs(a - b) % (2.0 * math.pi)
        return min(d, 2.0 * math.pi - d) <= ang_tol

    shared = any(circ_close(a, b) for a in pa for b in qa)
    if strict and shared:
        return False
    entries = [(a, 0) for a in pa] + [(a, 1) for a in qa]
    entries.sort()
    # rotate shared pairs into P,Q order so coincidence reads as alternation
    owners = []
    i = 0
    while i < len(entries):
        if (
            i + 1 < len(entries)
            and circ_close(entries[i][0], entries[i + 1][0])
            and entries[i][1] != entries[i + 1][1]
        ):
            owners.extend([0, 1])
            i += 2
        else:
            owners.append(entries[i][1])
            i += 1
    k = len(owners)
    return all(owners[i] != owners[(i + 1) % k] for i in range(k))
