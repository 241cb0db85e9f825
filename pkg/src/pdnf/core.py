"""Weight matrices and the vector-space operations on them.

A probabilistic disjunctive normal form (PDNF) is identified by an n x m
real matrix of literal weights: row i holds the weights of the i-th
elementary conjunction (rows ordered by observation time), column j
belongs to variable x_j.  Entrywise addition, scalar multiplication and
the L1 norm make these matrices a normed vector space; the probabilistic
interpretation of the weights lives in :mod:`pdnf.families`.
"""

from __future__ import annotations

import numpy as np


class ShapeMismatchError(ValueError):
    """Two weight matrices (or literal matrices) cannot be aligned."""


def readonly(arr: np.ndarray) -> np.ndarray:
    """Return a C-contiguous copy of ``arr`` with the write flag cleared."""
    out = np.ascontiguousarray(arr)
    if out is arr:
        out = arr.copy()
    out.setflags(write=False)
    return out


class WeightMatrix:
    """Immutable n x m matrix of finite literal weights."""

    __slots__ = ("_xi",)

    def __init__(self, values):
        arr = np.asarray(values, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError(f"weights must be two-dimensional, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"weights need n >= 1 and m >= 1, got shape {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValueError("weights must be finite (no NaN or infinity)")
        self._xi = readonly(arr)

    @property
    def xi(self) -> np.ndarray:
        return self._xi

    @property
    def n(self) -> int:
        return self._xi.shape[0]

    @property
    def m(self) -> int:
        return self._xi.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._xi.shape

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._xi, other._xi))

    def __hash__(self):
        return hash((self.shape, self._xi.tobytes()))

    def __repr__(self) -> str:
        return f"WeightMatrix({self._xi.tolist()!r})"


def zero(n: int, m: int) -> WeightMatrix:
    """The additive identity of shape (n, m)."""
    return WeightMatrix(np.zeros((n, m)))


def pad_conjunctions(z: WeightMatrix, n: int) -> WeightMatrix:
    """Right-pad ``z`` with all-zero conjunction rows up to ``n`` rows.

    A zero row means "every variable surely absent", so padding does not
    change the induced measure's marginals on existing rows, nor the norm.
    """
    if n < z.n:
        raise ValueError(f"cannot pad {z.n} conjunctions down to {n}")
    if n == z.n:
        return z
    return WeightMatrix(np.vstack([z.xi, np.zeros((n - z.n, z.m))]))


def _aligned(a: WeightMatrix, b: WeightMatrix, strict: bool) -> tuple[np.ndarray, np.ndarray]:
    if a.m != b.m:
        raise ShapeMismatchError(
            f"variable counts differ: {a.shape} vs {b.shape}; matrices must share m"
        )
    if a.n != b.n:
        if strict:
            raise ShapeMismatchError(
                f"conjunction counts differ in strict mode: {a.shape} vs {b.shape}"
            )
        n = max(a.n, b.n)
        a, b = pad_conjunctions(a, n), pad_conjunctions(b, n)
    return a.xi, b.xi


def add(a: WeightMatrix, b: WeightMatrix, strict: bool = False) -> WeightMatrix:
    """Entrywise sum; shorter operand is zero-padded unless ``strict``."""
    xa, xb = _aligned(a, b, strict)
    return WeightMatrix(xa + xb)


def scale(alpha: float, z: WeightMatrix) -> WeightMatrix:
    """Scalar multiple ``alpha * z``."""
    if not np.isfinite(alpha):
        raise ValueError(f"scale factor must be finite, got {alpha!r}")
    return WeightMatrix(alpha * z.xi)


def norm_l1(z: WeightMatrix) -> float:
    """Sum of absolute weights; zero exactly for the zero matrix."""
    return float(np.abs(z.xi).sum())


def distance_l1(a: WeightMatrix, b: WeightMatrix, strict: bool = False) -> float:
    """L1 distance ``norm_l1(a - b)`` after the usual shape alignment."""
    xa, xb = _aligned(a, b, strict)
    return float(np.abs(xa - xb).sum())


class Pdnf:
    """A weight matrix together with the probability family interpreting it."""

    __slots__ = ("weights", "family")

    def __init__(self, weights: WeightMatrix, family):
        if family.m != weights.m:
            raise ShapeMismatchError(
                f"family covers {family.m} variables but weights have m={weights.m}"
            )
        self.weights = weights
        self.family = family

    @property
    def n(self) -> int:
        return self.weights.n

    @property
    def m(self) -> int:
        return self.weights.m

    def position_probs(self) -> np.ndarray:
        """(n, m, 3) array of per-position (p_neg, p_eps, p_pos) triples."""
        return self.family.grid(self.weights.xi)

    def __repr__(self) -> str:
        return f"Pdnf({self.weights!r}, {self.family!r})"
