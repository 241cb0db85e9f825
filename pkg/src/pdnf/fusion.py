"""Bayesian fusion of ternary evidence and identification experiments.

Fusing two probability triples multiplies them componentwise and
renormalizes (uniform prior).  For the softmax family this is exactly
weight addition, which is what makes the weight-matrix vector space a
calculus of evidence; the checks below probe that equivalence and its
converse, and the coupon-collector bound says how many draws identify a
measure's whole support with high confidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .families import ProbabilityFamily, ProbTriple, SoftmaxFamily
from .venjunction import VenjunctionMeasure


class ContradictoryEvidenceError(ValueError):
    """Both triples are certain about incompatible outcomes; the product vanishes."""


def fuse(p: ProbTriple, q: ProbTriple) -> ProbTriple:
    """Componentwise product, renormalized."""
    raw = [a * b for a, b in zip(p, q)]
    s = sum(raw)
    if s <= 0.0:
        raise ContradictoryEvidenceError(
            f"evidence triples {tuple(p)} and {tuple(q)} have zero overlap"
        )
    return ProbTriple(raw[0] / s, raw[1] / s, raw[2] / s)


def _fuse_arrays(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    raw = p * q
    s = raw.sum(axis=-1, keepdims=True)
    if (s <= 0.0).any():
        raise ContradictoryEvidenceError("zero-overlap pair in fused array")
    return raw / s


def check_composition(family: SoftmaxFamily, xi: float, eta: float, j: int = 0) -> float:
    """Largest component gap between F(xi + eta) and fuse(F(xi), F(eta))."""
    fx = family.eval_array(j, np.asarray([xi, eta, xi + eta], dtype=np.float64))
    fused = _fuse_arrays(fx[0], fx[1])
    return float(np.abs(fx[2] - fused).max())


def check_characterization(family: ProbabilityFamily, grid, j: int = 0,
                           threshold: float = 1e-6):
    """Search a weight grid for a pair where fusion-additivity breaks.

    Returns (xi, eta, deviation) for the worst pair whose deviation
    exceeds ``threshold``, or None when the grid shows no violation, as a
    genuine softmax family never does.  Pairs where the product of
    triples vanishes are skipped; the interesting families are strictly
    positive on sensible grids anyway.
    """
    pts = np.asarray(grid, dtype=np.float64)
    if pts.ndim != 1 or pts.size < 2:
        raise ValueError(f"need a 1-D grid of at least 2 points, got shape {pts.shape}")
    probs = family.eval_array(j, pts)                      # (g, 3)
    sums = pts[:, None] + pts[None, :]
    combined = family.eval_array(j, sums.ravel()).reshape(pts.size, pts.size, 3)
    raw = probs[:, None, :] * probs[None, :, :]
    norm = raw.sum(axis=-1, keepdims=True)
    valid = norm[..., 0] > 0.0
    fused = np.divide(raw, norm, out=np.zeros_like(raw), where=norm > 0.0)
    dev = np.abs(combined - fused).max(axis=-1)
    dev[~valid] = 0.0
    a, b = np.unravel_index(int(dev.argmax()), dev.shape)
    if dev[a, b] > threshold:
        return float(pts[a]), float(pts[b]), float(dev[a, b])
    return None


def convergence_experiment(family: SoftmaxFamily, weight_stream, epsilon: float,
                           j: int = 0, component: int = 1) -> int:
    """Steps of accumulating evidence until the chosen literal is near-certain.

    Returns the first k with F_component(sum of the first k weights)
    exceeding 1 - epsilon.  For component +1 the stream must be positive
    (and alpha_pos strictly maximal for termination); for component -1
    the mirror applies with a negative stream.
    """
    if component not in (-1, 1):
        raise ValueError(f"component must be -1 or +1, got {component}")
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    total = 0.0
    k = 0
    for w in weight_stream:
        w = float(w)
        if component == 1 and w <= 0.0:
            raise ValueError(f"stream entries must be positive, got {w}")
        if component == -1 and w >= 0.0:
            raise ValueError(f"stream entries must be negative for the mirror case, got {w}")
        total += w
        k += 1
        p = family.eval(j, total)
        reached = p.p_pos if component == 1 else p.p_neg
        if reached > 1.0 - epsilon:
            return k
    raise ValueError(f"stream exhausted after {k} steps without reaching 1 - epsilon")


@dataclass(frozen=True)
class IdentificationBound:
    """Draw count sufficient to see every outcome with probability >= 1 - delta."""

    p_min: float
    delta: float
    n: int
    m: int
    n_draws: int

    def __post_init__(self):
        if not 0.0 < self.p_min <= 1.0:
            raise ValueError(f"p_min must be in (0, 1], got {self.p_min}")
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must be in (0, 1), got {self.delta}")
        if self.n < 1 or self.m < 1:
            raise ValueError(f"shape must be positive, got ({self.n}, {self.m})")
        if self.n_draws < 1:
            raise ValueError(f"draw count must be >= 1, got {self.n_draws}")


def coupon_bound(p_min: float, delta: float, n: int, m: int) -> IdentificationBound:
    """N = ceil((1/p_min) * ln(3^(nm) / delta)).

    The log is expanded as nm*ln 3 - ln delta so that shapes far beyond
    exact enumeration do not overflow 3^(nm).
    """
    if not 0.0 < p_min <= 1.0:
        raise ValueError(f"p_min must be in (0, 1], got {p_min}")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must be in (0, 1), got {delta}")
    if n < 1 or m < 1:
        raise ValueError(f"shape must be positive, got ({n}, {m})")
    draws = math.ceil((n * m * math.log(3.0) - math.log(delta)) / p_min)
    return IdentificationBound(p_min=p_min, delta=delta, n=n, m=m, n_draws=max(1, draws))


@dataclass(frozen=True)
class IdentificationResult:
    """Outcome of repeated try-to-cover-the-support experiments."""

    bound: IdentificationBound
    covered: tuple
    support_size: int

    @property
    def trials(self) -> int:
        return len(self.covered)

    @property
    def success_rate(self) -> float:
        return sum(self.covered) / len(self.covered)


def identification_experiment(meas: VenjunctionMeasure, rng: np.random.Generator,
                              trials: int, delta: float = 0.1,
                              p_min: float | None = None) -> IdentificationResult:
    """Draw N = coupon_bound(...) samples per trial and check support coverage.

    ``p_min`` defaults to the measure's exact minimum positive mass.  The
    guarantee is one-sided: the empirical success rate should sit at or
    above 1 - delta, minus binomial noise.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    lits, masses = meas._enumerate_arrays()
    support = np.flatnonzero(masses > 0.0)
    if p_min is None:
        p_min = float(masses[support].min())
    n, m = meas.shape
    bound = coupon_bound(p_min, delta, n, m)
    powers = 3 ** np.arange(n * m - 1, -1, -1, dtype=np.int64)
    support_set = frozenset(int(i) for i in support)
    covered = []
    for _ in range(trials):
        draws = meas.sample_array(rng, bound.n_draws)
        ranks = (draws.reshape(bound.n_draws, n * m).astype(np.int64) + 1) @ powers
        covered.append(support_set.issubset(int(r) for r in np.unique(ranks)))
    return IdentificationResult(bound=bound, covered=tuple(covered),
                                support_size=int(support.size))
