"""Weight -> probability mappings F = (F_neg, F_eps, F_pos) per variable.

Two concrete families are provided.  The softmax family puts
``F_l(xi) = exp(a_l * xi) / sum_l' exp(a_l' * xi)`` and is the one family
for which adding weights coincides with Bayesian fusion of the induced
probabilities.  The threshold family is the piecewise-linear sensor
mapping: certainly-negated below ``low``, a linear crossfade from negated
to absent on ``[low, high)``, certainly-present at and above ``high``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .core import Pdnf, readonly

_SUM_TOL = 1e-12


class ProbTriple(NamedTuple):
    """Probabilities of the three literal realisations (negated, absent, present)."""

    p_neg: float
    p_eps: float
    p_pos: float

    def validate(self, tol: float = _SUM_TOL) -> "ProbTriple":
        if min(self) < -tol or max(self) > 1 + tol:
            raise ValueError(f"triple components outside [0, 1]: {self}")
        if abs(sum(self) - 1.0) > tol:
            raise ValueError(f"triple does not sum to 1: {self} (sum {sum(self)})")
        return self

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=np.float64)


class ProbabilityFamily:
    """Base class: per-variable mapping from a weight to a ProbTriple.

    Subclasses implement :meth:`eval_array`; variable indices are 0-based.
    """

    m: int

    def eval_array(self, j: int, xi: np.ndarray) -> np.ndarray:
        """Vectorized evaluation: xi of shape S gives probabilities of shape S + (3,)."""
        raise NotImplementedError

    def eval(self, j: int, xi: float) -> ProbTriple:
        if not 0 <= j < self.m:
            raise IndexError(f"variable index {j} out of range for m={self.m}")
        if not math.isfinite(xi):
            raise ValueError(f"weight must be finite, got {xi!r}")
        p = self.eval_array(j, np.asarray([xi], dtype=np.float64))[0]
        return ProbTriple(float(p[0]), float(p[1]), float(p[2]))

    def grid(self, xi: np.ndarray) -> np.ndarray:
        """(n, m) weight matrix -> (n, m, 3) probability grid."""
        xi = np.asarray(xi, dtype=np.float64)
        if xi.ndim != 2 or xi.shape[1] != self.m:
            raise ValueError(f"expected an (n, {self.m}) weight array, got shape {xi.shape}")
        out = np.empty(xi.shape + (3,))
        for j in range(self.m):
            out[:, j, :] = self.eval_array(j, xi[:, j])
        return out

    def spec(self) -> dict:
        """JSON-serializable description, inverse of model_io parsing."""
        raise NotImplementedError


class SoftmaxFamily(ProbabilityFamily):
    """Exponential family: probabilities proportional to exp(alpha_l * xi).

    ``alpha`` holds one (a_neg, a_eps, a_pos) coefficient triple per
    variable.  A variable whose three coefficients coincide yields the
    constant uniform triple whatever the weight; such columns are legal
    but reported by :attr:`constant_variables`.
    """

    def __init__(self, alpha):
        a = np.asarray(alpha, dtype=np.float64)
        if a.ndim != 2 or a.shape[1] != 3:
            raise ValueError(f"alpha must be an (m, 3) array, got shape {a.shape}")
        if a.shape[0] < 1:
            raise ValueError("alpha needs at least one variable row")
        if not np.isfinite(a).all():
            raise ValueError("alpha coefficients must be finite")
        self._alpha = readonly(a)

    @classmethod
    def default(cls, m: int) -> "SoftmaxFamily":
        """Sign-symmetric coefficients (-1, 0, +1) for every variable."""
        return cls(np.tile(np.array([-1.0, 0.0, 1.0]), (m, 1)))

    @property
    def alpha(self) -> np.ndarray:
        return self._alpha

    @property
    def m(self) -> int:
        return self._alpha.shape[0]

    @property
    def constant_variables(self) -> list[int]:
        a = self._alpha
        return [j for j in range(self.m) if a[j, 0] == a[j, 1] == a[j, 2]]

    def eval_array(self, j: int, xi: np.ndarray) -> np.ndarray:
        xi = np.asarray(xi, dtype=np.float64)
        z = xi[..., None] * self._alpha[j]
        # max-shift keeps exp() in range; fused weights grow linearly in the
        # number of fused observations, so raw exponents overflow quickly
        z = z - z.max(axis=-1, keepdims=True)
        e = np.exp(z)
        return e / e.sum(axis=-1, keepdims=True)

    def spec(self) -> dict:
        return {"kind": "softmax", "alpha": self._alpha.tolist()}

    def __repr__(self) -> str:
        return f"SoftmaxFamily({self._alpha.tolist()!r})"

    def __eq__(self, other):
        if not isinstance(other, SoftmaxFamily):
            return NotImplemented
        return np.array_equal(self._alpha, other._alpha)

    def __hash__(self):
        return hash(("softmax", self._alpha.tobytes()))


class ThresholdFamily(ProbabilityFamily):
    """Piecewise-linear sensor family with per-variable band [low, high).

    Below ``low`` the literal is surely negated; inside the band the mass
    crossfades linearly from negated to absent; at and above ``high`` the
    literal is surely present.  The jump at ``high`` is intentional: the
    sensor either certainly triggers or it does not.
    """

    def __init__(self, low, high):
        lo = np.atleast_1d(np.asarray(low, dtype=np.float64))
        hi = np.atleast_1d(np.asarray(high, dtype=np.float64))
        if lo.ndim != 1 or lo.shape != hi.shape:
            raise ValueError(f"low/high must be equal-length vectors, got {lo.shape} and {hi.shape}")
        if not (np.isfinite(lo).all() and np.isfinite(hi).all()):
            raise ValueError("thresholds must be finite")
        if not (lo < hi).all():
            bad = int(np.argmin(hi - lo))
            raise ValueError(f"need low < high per variable; variable {bad} has [{lo[bad]}, {hi[bad]}]")
        self._low = readonly(lo)
        self._high = readonly(hi)

    @property
    def low(self) -> np.ndarray:
        return self._low

    @property
    def high(self) -> np.ndarray:
        return self._high

    @property
    def m(self) -> int:
        return self._low.shape[0]

    def eval_array(self, j: int, xi: np.ndarray) -> np.ndarray:
        xi = np.asarray(xi, dtype=np.float64)
        lo, hi = self._low[j], self._high[j]
        ramp = (xi - lo) / (hi - lo)
        out = np.zeros(xi.shape + (3,))
        below = xi < lo
        above = xi >= hi
        band = ~(below | above)
        out[below, 0] = 1.0
        out[band, 0] = 1.0 - ramp[band]
        out[band, 1] = ramp[band]
        out[above, 2] = 1.0
        return out

    def spec(self) -> dict:
        return {"kind": "threshold", "low": self._low.tolist(), "high": self._high.tolist()}

    def __repr__(self) -> str:
        return f"ThresholdFamily({self._low.tolist()!r}, {self._high.tolist()!r})"

    def __eq__(self, other):
        if not isinstance(other, ThresholdFamily):
            return NotImplemented
        return np.array_equal(self._low, other._low) and np.array_equal(self._high, other._high)

    def __hash__(self):
        return hash(("threshold", self._low.tobytes(), self._high.tobytes()))


class WarpedSoftmaxFamily(ProbabilityFamily):
    """Softmax whose positive coefficient bends with the weight.

    The exponent of the present-literal branch is ``(a_pos + gain *
    tanh(xi)) * xi`` instead of ``a_pos * xi``, which destroys the
    additivity property while keeping triples strictly positive.  Exists
    to give the characterization check a concrete counterexample family;
    it has no JSON form.
    """

    def __init__(self, alpha, gain: float = 0.5):
        self._base = SoftmaxFamily(alpha)
        if not math.isfinite(gain):
            raise ValueError("gain must be finite")
        self.gain = float(gain)

    @property
    def m(self) -> int:
        return self._base.m

    @property
    def alpha(self) -> np.ndarray:
        return self._base.alpha

    def eval_array(self, j: int, xi: np.ndarray) -> np.ndarray:
        xi = np.asarray(xi, dtype=np.float64)
        a = self._base.alpha[j].copy()
        z = xi[..., None] * a
        z[..., 2] = (a[2] + self.gain * np.tanh(xi)) * xi
        z = z - z.max(axis=-1, keepdims=True)
        e = np.exp(z)
        return e / e.sum(axis=-1, keepdims=True)

    def __repr__(self) -> str:
        return f"WarpedSoftmaxFamily({self._base.alpha.tolist()!r}, gain={self.gain})"


@dataclass(frozen=True)
class DefinitionReport:
    """Which clauses of the defining conditions hold on a sample grid.

    ``strict`` requires all four: triples normalized, F_pos nondecreasing,
    F_neg nonincreasing, and F_pos(0) = F_neg(0) = 0.  Families failing a
    clause are still usable; the report only flags them.
    """

    sums_to_one: bool
    pos_nondecreasing: bool
    neg_nonincreasing: bool
    zero_condition: bool
    failures: dict = field(default_factory=dict)

    @property
    def strict(self) -> bool:
        return (self.sums_to_one and self.pos_nondecreasing
                and self.neg_nonincreasing and self.zero_condition)


def validate_definition(family: ProbabilityFamily, grid, tol: float = 1e-9) -> DefinitionReport:
    """Check the definition clauses for every variable on a weight grid.

    ``grid`` must contain at least 100 points; it is sorted before the
    monotonicity checks.  The zero condition is evaluated at 0 exactly,
    whether or not 0 lies on the grid.
    """
    pts = np.sort(np.asarray(grid, dtype=np.float64))
    if pts.ndim != 1 or pts.size < 100:
        raise ValueError(f"need a 1-D grid of at least 100 points, got shape {pts.shape}")
    failures: dict[str, list[int]] = {"sum": [], "pos": [], "neg": [], "zero": []}
    for j in range(family.m):
        p = family.eval_array(j, pts)
        if np.abs(p.sum(axis=-1) - 1.0).max() > _SUM_TOL:
            failures["sum"].append(j)
        if np.diff(p[:, 2]).min(initial=0.0) < -tol:
            failures["pos"].append(j)
        if np.diff(p[:, 0]).max(initial=0.0) > tol:
            failures["neg"].append(j)
        at0 = family.eval(j, 0.0)
        if at0.p_pos > tol or at0.p_neg > tol:
            failures["zero"].append(j)
    return DefinitionReport(
        sums_to_one=not failures["sum"],
        pos_nondecreasing=not failures["pos"],
        neg_nonincreasing=not failures["neg"],
        zero_condition=not failures["zero"],
        failures={k: v for k, v in failures.items() if v},
    )


def entropy_grid(probs: np.ndarray) -> np.ndarray:
    """Per-position Shannon entropy (natural log) of a (..., 3) probability array."""
    p = np.asarray(probs, dtype=np.float64)
    plogp = np.zeros_like(p)
    mask = p > 0
    plogp[mask] = p[mask] * np.log(p[mask])
    return -plogp.sum(axis=-1)


def total_entropy(pdnf: Pdnf) -> float:
    """Sum of per-position entropies; 0 for a deterministic PDNF, nm*ln 3 at uniform."""
    return float(entropy_grid(pdnf.position_probs()).sum())


def partition_probs(sizes_pos: int, sizes_neg: int, sizes_eps: int) -> ProbTriple:
    """Triple from input-partition cardinalities: (neg, eps, pos) / total."""
    counts = (sizes_pos, sizes_neg, sizes_eps)
    if any(c < 0 for c in counts):
        raise ValueError(f"partition sizes must be nonnegative, got {counts}")
    total = sum(counts)
    if total == 0:
        raise ValueError("partition sizes sum to zero")
    return ProbTriple(sizes_neg / total, sizes_eps / total, sizes_pos / total)
