"""Piecewise-constant encoders on [0, nm].

``encode`` lays the weight matrix out as a step function: position (t, j)
owns the unit segment [(t-1)*m + j - 1, (t-1)*m + j) in 1-based paper
indexing (rows concatenated in time order), and the function value on the
segment is the weight.  Because the segments have unit length, the
integral over a segment is just its height, and clamping that integral
into [-1, 1] yields literal probabilities directly.
"""

from __future__ import annotations

import numpy as np

from .core import WeightMatrix, readonly
from .families import ProbTriple


class Encoder:
    """Step function on [0, nm] given by an (n, m) matrix of segment heights."""

    __slots__ = ("_heights",)

    def __init__(self, heights):
        arr = np.asarray(heights, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"heights must be a nonempty 2-D array, got shape {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValueError("heights must be finite")
        self._heights = readonly(arr)

    @property
    def heights(self) -> np.ndarray:
        return self._heights

    @property
    def n(self) -> int:
        return self._heights.shape[0]

    @property
    def m(self) -> int:
        return self._heights.shape[1]

    def segment_bounds(self, t: int, j: int) -> tuple[float, float]:
        """Endpoints of the segment owned by position (t, j), 0-based indices."""
        n, m = self._heights.shape
        if not (0 <= t < n and 0 <= j < m):
            raise IndexError(f"position ({t}, {j}) out of range for shape {(n, m)}")
        start = t * m + j
        return float(start), float(start + 1.0)

    def value_at(self, x: float) -> float:
        """Function value at a point of [0, nm); right-continuous steps."""
        n, m = self._heights.shape
        if not 0 <= x < n * m:
            raise ValueError(f"point {x} outside [0, {n * m})")
        s = int(x)
        return float(self._heights[s // m, s % m])

    def __eq__(self, other):
        if not isinstance(other, Encoder):
            return NotImplemented
        return np.array_equal(self._heights, other._heights)

    def __hash__(self):
        return hash((self._heights.shape, self._heights.tobytes()))

    def __repr__(self) -> str:
        return f"Encoder({self._heights.tolist()!r})"


def encode(z: WeightMatrix) -> Encoder:
    """Lossless: segment heights are the weights themselves."""
    return Encoder(z.xi)


def decode(e: Encoder) -> WeightMatrix:
    return WeightMatrix(e.heights)


def clamped_triples(heights: np.ndarray) -> np.ndarray:
    """Clamped-integral probabilities for an array of segment heights.

    The unit-segment integral I equals the height.  Branches:
    I > 1 -> (0, 0, 1); 0 < I <= 1 -> (0, 1-I, I); I = 0 -> (0, 1, 0);
    -1 <= I < 0 -> (|I|, 1-|I|, 0); I < -1 -> (1, 0, 0).
    """
    h = np.asarray(heights, dtype=np.float64)
    pos = np.clip(h, 0.0, 1.0)
    neg = np.clip(-h, 0.0, 1.0)
    out = np.stack([neg, 1.0 - pos - neg, pos], axis=-1)
    return out


def segment_probs(e: Encoder, t: int, j: int) -> ProbTriple:
    """Literal probabilities carried by segment (t, j), 0-based indices."""
    e.segment_bounds(t, j)  # range check
    p = clamped_triples(e.heights[t, j])
    return ProbTriple(float(p[0]), float(p[1]), float(p[2])).validate()


def probability_grid(e: Encoder) -> np.ndarray:
    """(n, m, 3) grid of clamped-integral triples for every segment."""
    return clamped_triples(e.heights)


def l1_norm(e: Encoder) -> float:
    """Integral of |e| over [0, nm]; equals norm_l1 of the decoded matrix."""
    return float(np.abs(e.heights).sum())


def signed_parts(e: Encoder) -> tuple[Encoder, Encoder]:
    """Split into (positive part, negative part) with part_pos + part_neg = e."""
    h = e.heights
    return Encoder(np.maximum(h, 0.0)), Encoder(np.minimum(h, 0.0))


def asymmetry(e: Encoder) -> float:
    """Mass of the positive part minus mass of the negative part.

    Positive values mean the weights lean toward presence on average.
    """
    pos, neg = signed_parts(e)
    return l1_norm(pos) - l1_norm(neg)


def csv_rows(e: Encoder) -> list[tuple[float, float, float]]:
    """(segment_start, segment_end, height) rows in segment order."""
    rows = []
    for t in range(e.n):
        for j in range(e.m):
            a, b = e.segment_bounds(t, j)
            rows.append((a, b, float(e.heights[t, j])))
    return rows
