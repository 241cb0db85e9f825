"""Random-walk weight processes and their encoder moments.

Weights evolve as scaled lattice random walks: at each time step the
value moves by +scale, -scale or 0.  The mean and variance of the
resulting encoder process are themselves piecewise-constant functions
(arithmetic progressions per variable), and Monte Carlo averages of the
encoded trajectories converge to the analytic mean encoder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .encoder import Encoder
from .families import ProbabilityFamily
from .venjunction import Venjunction


@dataclass(frozen=True)
class StepDistribution:
    """Scaled ternary increment: +scale w.p. p_up, -scale w.p. p_down, else 0.

    ``offset`` is the walk's start level; it doubles as the default
    initial weight when a process does not override it.
    """

    p_up: float
    p_down: float
    p_stay: float
    scale: float = 1.0
    offset: float = 0.0

    def __post_init__(self):
        probs = (self.p_up, self.p_down, self.p_stay)
        if any(p < 0.0 for p in probs):
            raise ValueError(f"step probabilities must be nonnegative, got {probs}")
        if abs(sum(probs) - 1.0) > 1e-12:
            raise ValueError(f"step probabilities must sum to 1, got {sum(probs)!r}")
        if not (math.isfinite(self.scale) and math.isfinite(self.offset)):
            raise ValueError("scale and offset must be finite")

    @classmethod
    def lattice(cls, p_up: float, p_down: float, scale: float = 1.0,
                offset: float = 0.0) -> "StepDistribution":
        """Two-parameter form; the stay probability absorbs the remainder."""
        return cls(p_up=p_up, p_down=p_down, p_stay=1.0 - p_up - p_down,
                   scale=scale, offset=offset)

    @property
    def mean(self) -> float:
        return self.scale * (self.p_up - self.p_down)

    @property
    def variance(self) -> float:
        drift = self.p_up - self.p_down
        return self.scale ** 2 * (self.p_up + self.p_down - drift ** 2)


@dataclass(frozen=True)
class WalkProcess:
    """Independent per-variable walks observed for ``horizon`` time steps.

    ``init`` overrides the start levels (defaults to each step
    distribution's offset); ``init_variance`` enters the analytic
    variance and, when positive, makes simulations draw normal initial
    weights around the start level.
    """

    steps: tuple
    horizon: int
    init: tuple | None = None
    init_variance: tuple = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if not self.steps:
            raise ValueError("need at least one per-variable step distribution")
        if self.horizon < 1:
            raise ValueError(f"horizon must be >= 1, got {self.horizon}")
        object.__setattr__(self, "steps", tuple(self.steps))
        if self.init is not None:
            init = tuple(float(v) for v in self.init)
            if len(init) != len(self.steps):
                raise ValueError(f"init has {len(init)} entries for {len(self.steps)} variables")
            object.__setattr__(self, "init", init)
        var0 = self.init_variance
        if var0 is None:
            var0 = tuple(0.0 for _ in self.steps)
        else:
            var0 = tuple(float(v) for v in var0)
            if len(var0) != len(self.steps):
                raise ValueError(f"init_variance has {len(var0)} entries for {len(self.steps)} variables")
            if any(v < 0.0 for v in var0):
                raise ValueError("initial variances must be nonnegative")
        object.__setattr__(self, "init_variance", var0)

    @property
    def m(self) -> int:
        return len(self.steps)

    @property
    def start_levels(self) -> np.ndarray:
        if self.init is not None:
            return np.asarray(self.init, dtype=np.float64)
        return np.asarray([s.offset for s in self.steps], dtype=np.float64)


def mean_encoder(proc: WalkProcess) -> Encoder:
    """Heights xi0_j + t * mean_j for t = 1..horizon."""
    t = np.arange(1, proc.horizon + 1, dtype=np.float64)[:, None]
    mu = np.asarray([s.mean for s in proc.steps])
    return Encoder(proc.start_levels[None, :] + t * mu[None, :])


def variance_encoder(proc: WalkProcess) -> Encoder:
    """Heights Var(xi0_j) + t * variance_j."""
    t = np.arange(1, proc.horizon + 1, dtype=np.float64)[:, None]
    var = np.asarray([s.variance for s in proc.steps])
    var0 = np.asarray(proc.init_variance, dtype=np.float64)
    return Encoder(var0[None, :] + t * var[None, :])


def simulate_walks(proc: WalkProcess, rng: np.random.Generator, count: int) -> np.ndarray:
    """(count, horizon, m) trajectories.

    RNG contract: when any initial variance is positive, one block of
    (count, m) normal draws comes first; then one uniform per (walk, t,
    variable) in row-major order decides the steps with cumulative order
    (down, stay, up).
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    n, m = proc.horizon, proc.m
    start = np.broadcast_to(proc.start_levels, (count, m)).copy()
    var0 = np.asarray(proc.init_variance, dtype=np.float64)
    if (var0 > 0.0).any():
        start += rng.normal(0.0, np.sqrt(var0), size=(count, m))
    u = rng.random((count, n, m))
    p_down = np.asarray([s.p_down for s in proc.steps])
    p_hold = p_down + np.asarray([s.p_stay for s in proc.steps])
    scales = np.asarray([s.scale for s in proc.steps])
    increments = ((u >= p_down).astype(np.float64) + (u >= p_hold) - 1.0) * scales
    return start[:, None, :] + np.cumsum(increments, axis=1)


def monte_carlo_mean_encoder(proc: WalkProcess, rng: np.random.Generator,
                             count: int) -> Encoder:
    """Segmentwise average of the encoded trajectories."""
    return Encoder(simulate_walks(proc, rng, count).mean(axis=0))


def mean_encoder_l1_error(proc: WalkProcess, rng: np.random.Generator, count: int) -> float:
    """L1 gap between the Monte Carlo and analytic mean encoders."""
    mc = monte_carlo_mean_encoder(proc, rng, count)
    return float(np.abs(mc.heights - mean_encoder(proc).heights).sum())


def hmm_sample_many(proc: WalkProcess, family: ProbabilityFamily,
                    rng: np.random.Generator, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Two-stage draws: hidden trajectories, then one venjunction each.

    Returns (trajectories (count, n, m), literals (count, n, m)).  The
    emission draw consumes one uniform per position after all walk
    randomness, with the usual (negated, absent, present) cumulative
    order.
    """
    trajs = simulate_walks(proc, rng, count)
    n, m = proc.horizon, proc.m
    probs = np.empty((count, n, m, 3))
    for j in range(m):
        probs[:, :, j, :] = family.eval_array(j, trajs[:, :, j])
    c_neg = probs[..., 0]
    c_eps = c_neg + probs[..., 1]
    u = rng.random((count, n, m))
    lits = (u >= c_neg).astype(np.int8) + (u >= c_eps).astype(np.int8) - 1
    return trajs, lits


def hmm_sample(proc: WalkProcess, family: ProbabilityFamily,
               rng: np.random.Generator) -> tuple[np.ndarray, Venjunction]:
    """One hidden trajectory and the venjunction it emits."""
    trajs, lits = hmm_sample_many(proc, family, rng, 1)
    return trajs[0], Venjunction(lits[0])
