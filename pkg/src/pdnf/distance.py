"""Weighted Hamming distance between venjunctions and its exact law.

Positions disagreeing between two venjunctions cost 1 when exactly one
side is the absent literal and 2 when the literals have opposite signs,
which is |a - b| on the {-1, 0, +1} coding.  For a random venjunction
against a fixed target the per-position cost is an independent random
variable on {0, 1, 2}, so the distance law is the coefficient vector of
a product of nm quadratic generating polynomials.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

import numpy as np

from .core import ShapeMismatchError, readonly
from .venjunction import ENUMERATION_CAP, Venjunction, VenjunctionMeasure


def literal_weight(a: int, b: int) -> int:
    """0 match, 1 if exactly one side is absent, 2 for a sign flip."""
    if a not in (-1, 0, 1) or b not in (-1, 0, 1):
        raise ValueError(f"literals must be -1, 0 or +1, got {a!r}, {b!r}")
    return abs(a - b)


def venjunction_distance(u: Venjunction, v: Venjunction) -> int:
    if u.shape != v.shape:
        raise ShapeMismatchError(f"shapes differ: {u.shape} vs {v.shape}")
    return int(np.abs(u.lits.astype(np.int16) - v.lits).sum())


@dataclass(frozen=True)
class DistanceDistribution:
    """Exact law of the distance S to a fixed target; coeffs[k] = P{S = k}."""

    coeffs: np.ndarray
    mu_s: float
    sigma_s: float

    @property
    def max_distance(self) -> int:
        return self.coeffs.shape[0] - 1

    def moments_from_coeffs(self) -> tuple[float, float]:
        """(mean, std) recomputed from the coefficient vector, for cross-checks."""
        k = np.arange(self.coeffs.shape[0])
        mean = float((k * self.coeffs).sum())
        var = float(((k - mean) ** 2 * self.coeffs).sum())
        return mean, math.sqrt(var)


def _cost_triples(meas: VenjunctionMeasure, target: Venjunction) -> np.ndarray:
    """(n, m, 3) array of (p0, p1, p2): per-position cost probabilities.

    Against target literal +1 the costs (0, 1, 2) come from (present,
    absent, negated); against -1 the mirror; against the absent literal
    cost 2 is impossible and both signed literals cost 1.
    """
    if target.shape != meas.shape:
        raise ShapeMismatchError(f"target shape {target.shape} does not match measure {meas.shape}")
    g = meas.grid
    p_neg, p_eps, p_pos = g[..., 0], g[..., 1], g[..., 2]
    t = target.lits
    p0 = np.where(t == 1, p_pos, np.where(t == -1, p_neg, p_eps))
    p1 = np.where(t == 0, p_neg + p_pos, p_eps)
    p2 = np.where(t == 1, p_neg, np.where(t == -1, p_pos, 0.0))
    return np.stack([p0, p1, p2], axis=-1)


def distance_distribution(meas: VenjunctionMeasure, target: Venjunction) -> DistanceDistribution:
    """Convolve the nm per-position cost quadratics into the law of S."""
    cost = _cost_triples(meas, target).reshape(-1, 3)
    coeffs = np.array([1.0])
    for triple in cost:
        coeffs = np.convolve(coeffs, triple)
    p1, p2 = cost[:, 1], cost[:, 2]
    mean_terms = p1 + 2.0 * p2
    mu = float(mean_terms.sum())
    var = float((p1 + 4.0 * p2 - mean_terms ** 2).sum())
    return DistanceDistribution(coeffs=readonly(coeffs), mu_s=mu,
                                sigma_s=math.sqrt(max(var, 0.0)))


def enumerated_histogram(meas: VenjunctionMeasure, target: Venjunction,
                         cap: int = ENUMERATION_CAP) -> np.ndarray:
    """Brute-force law of S: group every outcome's mass by its distance.

    Desk-scale oracle for distance_distribution; subject to the usual
    enumeration cap.
    """
    if target.shape != meas.shape:
        raise ShapeMismatchError(f"target shape {target.shape} does not match measure {meas.shape}")
    lits, masses = meas._enumerate_arrays(cap)
    nm = meas.n * meas.m
    dists = np.abs(lits.reshape(-1, nm).astype(np.int16) - target.lits.reshape(1, nm)).sum(axis=1)
    return np.bincount(dists, weights=masses, minlength=2 * nm + 1)


def ball_probability(dist: DistanceDistribution, rho: int) -> float:
    """P{S <= rho}: cumulative mass of the closed ball of radius rho."""
    try:
        rho = operator.index(rho)
    except TypeError:
        raise ValueError(f"rho must be an integer, got {rho!r}") from None
    if not 0 <= rho <= dist.max_distance:
        raise ValueError(f"rho must lie in [0, {dist.max_distance}], got {rho}")
    return float(dist.coeffs[: rho + 1].sum())


def normal_approx(dist: DistanceDistribution, rho: float) -> float:
    """Continuity-corrected normal estimate of P{S <= rho}."""
    if dist.sigma_s <= 0.0:
        raise ValueError("distance distribution is degenerate (sigma = 0); the exact ball is 0 or 1")
    z = (rho + 0.5 - dist.mu_s) / dist.sigma_s
    return 0.5 * (1.0 + math.erf(z / math.sqrt(2.0)))
