"""Venjunction outcomes and the product measure a PDNF induces on them.

A venjunction fixes one literal realisation {-1, 0, +1} per position of
the n x m grid.  Under independence across positions the measure of a
venjunction is the product of the per-position probabilities, so the
whole distribution is described by an (n, m, 3) probability grid; the
grid usually comes from a Pdnf but can be supplied directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Pdnf, ShapeMismatchError, readonly

ENUMERATION_CAP = 3 ** 12

_CHAR_OF = {-1: "-", 0: "e", 1: "+"}
_LIT_OF = {"-": -1, "e": 0, "+": 1}


class EnumerationCapError(ValueError):
    """Outcome space too large for exact enumeration; use sampling instead."""


class Venjunction:
    """Immutable n x m matrix of literals in {-1, 0, +1}."""

    __slots__ = ("_lits",)

    def __init__(self, lits):
        arr = np.asarray(lits, dtype=np.int8)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"literals must form a nonempty 2-D matrix, got shape {arr.shape}")
        if not np.isin(arr, (-1, 0, 1)).all():
            raise ValueError("literals must be -1, 0 or +1")
        self._lits = readonly(arr)

    @property
    def lits(self) -> np.ndarray:
        return self._lits

    @property
    def n(self) -> int:
        return self._lits.shape[0]

    @property
    def m(self) -> int:
        return self._lits.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._lits.shape

    def to_text(self) -> str:
        """Rows as {-, e, +} strings, most recent conjunction first, joined by the chain operator."""
        rows = ["".join(_CHAR_OF[int(v)] for v in row) for row in self._lits]
        return "∠".join(reversed(rows))

    @classmethod
    def from_text(cls, text: str) -> "Venjunction":
        rows = text.strip().split("∠")
        if not rows or not rows[0]:
            raise ValueError("empty venjunction text")
        parsed = []
        for row in reversed(rows):  # text shows latest row first
            try:
                parsed.append([_LIT_OF[c] for c in row.strip()])
            except KeyError as exc:
                raise ValueError(f"bad literal character {exc.args[0]!r} in {row!r}") from None
        widths = {len(r) for r in parsed}
        if len(widths) != 1:
            raise ValueError(f"rows have differing lengths {sorted(widths)} in {text!r}")
        return cls(parsed)

    def ravel_index(self) -> int:
        """Base-3 rank of this outcome, position (0, 0) most significant."""
        digits = (self._lits.ravel() + 1).astype(np.int64)
        idx = 0
        for d in digits:
            idx = idx * 3 + int(d)
        return idx

    def __eq__(self, other):
        if not isinstance(other, Venjunction):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._lits, other._lits))

    def __hash__(self):
        return hash((self.shape, self._lits.tobytes()))

    def __repr__(self) -> str:
        return f"Venjunction.from_text({self.to_text()!r})"


@dataclass(frozen=True)
class Language:
    """Support structure: per-position allowed literals and their product count."""

    allowed: tuple  # n rows x m positions, each a tuple of allowed literals
    local_sizes: tuple
    size: int

    def describe(self) -> str:
        """Regex-style rendering, latest conjunction first."""
        rows = []
        for row in self.allowed:
            alts = []
            for j, opts in enumerate(row):
                symbols = {-1: f"x̄{j + 1}", 0: "ε", 1: f"x{j + 1}"}
                alts.append("(" + "|".join(symbols[lit] for lit in opts) + ")")
            rows.append("∧".join(alts))
        return " ∠ ".join(reversed(rows))


def _check_grid(grid: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    g = np.asarray(grid, dtype=np.float64)
    if g.ndim != 3 or g.shape[2] != 3 or g.shape[0] < 1 or g.shape[1] < 1:
        raise ValueError(f"probability grid must have shape (n, m, 3), got {g.shape}")
    if g.min() < -tol or g.max() > 1 + tol:
        raise ValueError("grid probabilities must lie in [0, 1]")
    worst = np.abs(g.sum(axis=2) - 1.0).max()
    if worst > tol:
        raise ValueError(f"grid triples must sum to 1, worst deviation {worst:g}")
    return g


class VenjunctionMeasure:
    """Product measure over the 3^(n*m) venjunctions of a fixed shape."""

    __slots__ = ("_grid", "pdnf")

    def __init__(self, grid, pdnf: Pdnf | None = None):
        self._grid = readonly(_check_grid(grid))
        self.pdnf = pdnf

    @classmethod
    def from_pdnf(cls, pdnf: Pdnf) -> "VenjunctionMeasure":
        return cls(pdnf.position_probs(), pdnf)

    @classmethod
    def from_grid(cls, grid) -> "VenjunctionMeasure":
        return cls(grid)

    @property
    def grid(self) -> np.ndarray:
        return self._grid

    @property
    def n(self) -> int:
        return self._grid.shape[0]

    @property
    def m(self) -> int:
        return self._grid.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._grid.shape[:2]

    def _require_shape(self, v: Venjunction):
        if v.shape != self.shape:
            raise ShapeMismatchError(f"venjunction shape {v.shape} does not match measure shape {self.shape}")

    def mass(self, v: Venjunction) -> float:
        """Product of per-position probabilities of the chosen literals."""
        self._require_shape(v)
        n, m = self.shape
        picked = self._grid[np.arange(n)[:, None], np.arange(m)[None, :], v.lits + 1]
        return float(picked.prod())

    def masses(self, lits: np.ndarray) -> np.ndarray:
        """Vectorized mass for a (k, n, m) stack of literal matrices."""
        lits = np.asarray(lits)
        n, m = self.shape
        picked = self._grid[np.arange(n)[None, :, None], np.arange(m)[None, None, :], lits + 1]
        return picked.reshape(lits.shape[0], n * m).prod(axis=1)

    def _enumerate_arrays(self, cap: int = ENUMERATION_CAP) -> tuple[np.ndarray, np.ndarray]:
        """All 3^(nm) outcomes as ((M, n, m) literal stack, (M,) masses)."""
        n, m = self.shape
        nm = n * m
        total = 3 ** nm
        if total > cap:
            raise EnumerationCapError(
                f"3^{nm} = {total} outcomes exceed the enumeration cap {cap}; "
                "draw from sample() instead"
            )
        idx = np.arange(total, dtype=np.int64)
        digits = np.empty((total, nm), dtype=np.int8)
        for k in range(nm):  # column-wise to keep the int64 intermediate small
            digits[:, k] = (idx // 3 ** (nm - 1 - k)) % 3
        flat = self._grid.reshape(nm, 3)
        picked = flat[np.arange(nm)[None, :], digits]
        masses = picked.prod(axis=1)
        return digits.reshape(total, n, m) - 1, masses

    def enumerate_support(self, cap: int = ENUMERATION_CAP) -> list[tuple[Venjunction, float]]:
        """Positive-mass outcomes with their masses, in base-3 rank order."""
        lits, masses = self._enumerate_arrays(cap)
        keep = masses > 0.0
        return [(Venjunction(lits[i]), float(masses[i])) for i in np.flatnonzero(keep)]

    def total_mass(self, cap: int = ENUMERATION_CAP) -> float:
        """Sum over every outcome; equals 1 up to accumulated rounding."""
        return float(self._enumerate_arrays(cap)[1].sum())

    def min_positive_mass(self) -> float:
        """Smallest positive outcome mass.

        The measure factorizes, so the minimum over the support is the
        product over positions of each position's smallest positive
        probability; no enumeration is needed.
        """
        g = self._grid.reshape(-1, 3)
        masked = np.where(g > 0.0, g, np.inf)
        return float(masked.min(axis=1).prod())

    def sample_array(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """(count, n, m) literal draws; one uniform per position, row-major.

        Inverse-CDF on each three-way categorical with cumulative order
        (negated, absent, present), so results are reproducible across
        implementations sharing the RNG contract.
        """
        if count < 1:
            raise ValueError(f"count must be >= 1, got {count}")
        n, m = self.shape
        u = rng.random((count, n, m))
        c_neg = self._grid[:, :, 0]
        c_eps = c_neg + self._grid[:, :, 1]
        lits = (u >= c_neg).astype(np.int8) + (u >= c_eps).astype(np.int8) - 1
        return lits

    def sample(self, rng: np.random.Generator, count: int) -> list[Venjunction]:
        return [Venjunction(row) for row in self.sample_array(rng, count)]

    def language(self) -> Language:
        """Per-position allowed literals (probability > 0) and the support size."""
        n, m = self.shape
        allowed = []
        sizes = []
        for i in range(n):
            row = []
            srow = []
            for j in range(m):
                opts = tuple(lit for lit in (-1, 0, 1) if self._grid[i, j, lit + 1] > 0.0)
                row.append(opts)
                srow.append(len(opts))
            allowed.append(tuple(row))
            sizes.append(tuple(srow))
        size = 1
        for srow in sizes:
            for s in srow:
                size *= s
        return Language(allowed=tuple(allowed), local_sizes=tuple(sizes), size=size)

    def __repr__(self) -> str:
        return f"VenjunctionMeasure(shape={self.shape})"


@dataclass(frozen=True)
class HiddenEncoding:
    """Deterministic re-indexing of an observed support by ternary codes.

    Each of the M support venjunctions receives a distinct vector of l
    hidden literals, l minimal with 3^l >= M: the base-3 digits of its
    0-based rank, most significant digit first, shifted to {-1, 0, +1}.
    """

    support: tuple
    codes: np.ndarray  # (M, l) int8

    @property
    def l(self) -> int:
        return self.codes.shape[1]

    def code_text(self, r: int) -> str:
        return "".join(_CHAR_OF[int(v)] for v in self.codes[r])

    def lookup(self, code) -> Venjunction:
        """Venjunction assigned to one hidden-literal vector."""
        key = tuple(int(c) for c in code)
        for r in range(len(self.support)):
            if tuple(self.codes[r].tolist()) == key:
                return self.support[r]
        raise KeyError(f"hidden code {key} is not assigned")

    def decode(self) -> list[Venjunction]:
        """Recover the support list by walking the code table in rank order."""
        return [self.lookup(self.codes[r]) for r in range(len(self.support))]


def hidden_variable_encoding(support: list[Venjunction]) -> HiddenEncoding:
    if not support:
        raise ValueError("support must be non-empty")
    shape = support[0].shape
    if any(v.shape != shape for v in support):
        raise ShapeMismatchError("support venjunctions must share one shape")
    if len(set(support)) != len(support):
        raise ValueError("support contains duplicate venjunctions")
    big_m = len(support)
    l = 0
    while 3 ** l < big_m:
        l += 1
    codes = np.zeros((big_m, l), dtype=np.int8)
    for r in range(big_m):
        rem = r
        for k in range(l - 1, -1, -1):
            codes[r, k] = rem % 3 - 1
            rem //= 3
    return HiddenEncoding(support=tuple(support), codes=readonly(codes))


def _check_mixture(components, tol: float = 1e-9):
    if not components:
        raise ValueError("mixture needs at least one component")
    weights = np.array([w for w, _ in components], dtype=np.float64)
    if (weights < 0).any():
        raise ValueError("mixture weights must be nonnegative")
    if abs(weights.sum() - 1.0) > tol:
        raise ValueError(f"mixture weights must sum to 1, got {weights.sum()!r}")
    shapes = {meas.shape for _, meas in components}
    if len(shapes) != 1:
        raise ShapeMismatchError(f"mixture components must share one shape, got {sorted(shapes)}")
    return weights


def mixture_measure(components: list[tuple[float, VenjunctionMeasure]],
                    event) -> float:
    """P(event) under the finite mixture sum_k w_k * mu_k.

    ``event`` is an iterable of venjunctions; duplicates are counted once.
    """
    weights = _check_mixture(components)
    outcomes = list(dict.fromkeys(event))
    total = 0.0
    for k, (_, meas) in enumerate(components):
        if weights[k] == 0.0:
            continue
        total += weights[k] * sum(meas.mass(v) for v in outcomes)
    return float(min(total, 1.0))


def sample_mixture(components: list[tuple[float, VenjunctionMeasure]],
                   rng: np.random.Generator, count: int) -> list[Venjunction]:
    """Two-stage draw: pick a component by weight, then a venjunction from it.

    Consumes one uniform per draw for the component choice, then one block
    of position uniforms per component in component order.
    """
    weights = _check_mixture(components)
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    cum = np.cumsum(weights)
    cum[-1] = 1.0
    picks = np.searchsorted(cum, rng.random(count), side="right")
    n, m = components[0][1].shape
    out = np.empty((count, n, m), dtype=np.int8)
    for k, (_, meas) in enumerate(components):
        sel = picks == k
        if sel.any():
            out[sel] = meas.sample_array(rng, int(sel.sum()))
    return [Venjunction(row) for row in out]
