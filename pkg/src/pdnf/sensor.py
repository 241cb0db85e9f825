"""Two-sensor worked scenario: threshold mappings driven by random walks.

A temperature and a pressure sensor each carry a threshold family: below
the false-trigger threshold the reading is surely negated, inside the
dubious band the mass crossfades toward absent, at the trigger threshold
the literal is surely present.  The demo drives both by scaled lattice
walks, compares the averaged family components against the frequencies
of the corresponding trigger events (which replace the dubious band by a
fair error coin), and a safety-margin rule turns readings into an
act/hold decision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .families import ThresholdFamily
from .stochastic import StepDistribution, WalkProcess, simulate_walks

SENSORS = ("temperature", "pressure")


def default_theta_driver() -> StepDistribution:
    return StepDistribution.lattice(1 / 2, 1 / 3, scale=0.25, offset=20.0)


def default_p_driver() -> StepDistribution:
    return StepDistribution.lattice(1 / 2, 1 / 3, scale=0.5, offset=100.0)


@dataclass(frozen=True)
class SensorConfig:
    theta_x: float = 20.0
    theta_0: float = 22.0
    p_y: float = 105.0
    p_0: float = 106.0
    sigma_theta: float = 0.5
    sigma_p: float = 0.5
    times: tuple = tuple(range(30, 40))

    def __post_init__(self):
        if not self.theta_x < self.theta_0:
            raise ValueError(f"need theta_x < theta_0, got {self.theta_x} >= {self.theta_0}")
        if not self.p_y < self.p_0:
            raise ValueError(f"need p_y < p_0, got {self.p_y} >= {self.p_0}")
        for name, s in (("sigma_theta", self.sigma_theta), ("sigma_p", self.sigma_p)):
            if not 0.0 < s < 1.0:
                raise ValueError(f"{name} must be in (0, 1), got {s}")
        times = tuple(int(t) for t in self.times)
        if not times or any(t < 1 for t in times) or list(times) != sorted(set(times)):
            raise ValueError(f"times must be distinct ascending integers >= 1, got {self.times}")
        object.__setattr__(self, "times", times)

    @property
    def lambda_theta(self) -> float:
        return self.sigma_theta * (self.theta_0 - self.theta_x)

    @property
    def lambda_p(self) -> float:
        return self.sigma_p * (self.p_0 - self.p_y)

    def temperature_family(self) -> ThresholdFamily:
        return ThresholdFamily([self.theta_x], [self.theta_0])

    def pressure_family(self) -> ThresholdFamily:
        return ThresholdFamily([self.p_y], [self.p_0])


@dataclass(frozen=True)
class DemoRow:
    t: int
    sensor: str
    component: int
    analytic_avg: float
    empirical_freq: float
    std_err: float


@dataclass(frozen=True)
class DemoResult:
    """Averaged family components versus event frequencies, per (t, sensor, component)."""

    config: SensorConfig
    experiments: int
    analytic: np.ndarray   # (2, T, 3) indexed by (sensor, time, component+1)
    empirical: np.ndarray
    std_err: np.ndarray

    def rows(self) -> list[DemoRow]:
        out = []
        for s, sensor in enumerate(SENSORS):
            for ti, t in enumerate(self.config.times):
                for c in (-1, 0, 1):
                    out.append(DemoRow(
                        t=t, sensor=sensor, component=c,
                        analytic_avg=float(self.analytic[s, ti, c + 1]),
                        empirical_freq=float(self.empirical[s, ti, c + 1]),
                        std_err=float(self.std_err[s, ti, c + 1]),
                    ))
        return out

    def worst_gap(self) -> DemoRow:
        """Row with the largest |analytic - empirical| / std_err ratio."""
        rows = self.rows()
        def ratio(r: DemoRow) -> float:
            gap = abs(r.analytic_avg - r.empirical_freq)
            if r.std_err == 0.0:
                return 0.0 if gap == 0.0 else float("inf")
            return gap / r.std_err
        return max(rows, key=ratio)


def _events(values: np.ndarray, low: float, high: float, error_one: np.ndarray) -> np.ndarray:
    """Event indicators stacked (..., 3): components -1, 0, +1.

    Inside the dubious band [low, high) a fair coin splits the outcome:
    the negated event collects error = 0, the absent event error = 1.
    """
    below = values < low
    above = values >= high
    band = ~below & ~above
    chi_neg = below | (band & ~error_one)
    chi_eps = band & error_one
    return np.stack([chi_neg, chi_eps, above], axis=-1)


def run_demo(cfg: SensorConfig, experiments: int, rng: np.random.Generator,
             theta_driver: StepDistribution | None = None,
             p_driver: StepDistribution | None = None) -> DemoResult:
    """Simulate both sensors and tabulate analytic vs empirical components.

    RNG order: temperature walk uniforms, pressure walk uniforms, then
    one fair coin per (experiment, time) for each sensor in the same
    sensor order.  error = 1 when the coin uniform falls below 1/2.
    """
    if experiments < 1:
        raise ValueError(f"experiments must be >= 1, got {experiments}")
    theta_driver = theta_driver or default_theta_driver()
    p_driver = p_driver or default_p_driver()
    horizon = max(cfg.times)
    t_idx = np.asarray(cfg.times, dtype=np.int64) - 1
    n_t = len(cfg.times)

    values = []
    for driver in (theta_driver, p_driver):
        proc = WalkProcess(steps=(driver,), horizon=horizon)
        values.append(simulate_walks(proc, rng, experiments)[:, t_idx, 0])
    coins = [rng.random((experiments, n_t)) < 0.5 for _ in SENSORS]

    bands = ((cfg.theta_x, cfg.theta_0), (cfg.p_y, cfg.p_0))
    families = (cfg.temperature_family(), cfg.pressure_family())
    analytic = np.empty((2, n_t, 3))
    empirical = np.empty((2, n_t, 3))
    for s in range(2):
        analytic[s] = families[s].eval_array(0, values[s]).mean(axis=0)
        empirical[s] = _events(values[s], *bands[s], coins[s]).mean(axis=0)
    std_err = np.sqrt(empirical * (1.0 - empirical) / experiments)
    return DemoResult(config=cfg, experiments=experiments, analytic=analytic,
                      empirical=empirical, std_err=std_err)


@dataclass(frozen=True)
class Decision:
    action: str            # "act" or "hold"
    failed_t: int | None
    clause: str | None

    def __bool__(self) -> bool:
        return self.action == "act"


def decision_rule(cfg: SensorConfig, measured_theta, measured_p,
                  triggered: tuple[bool, bool]) -> Decision:
    """Act only if every margined reading certainly triggers and both sensors did.

    The margins shrink each reading before the certainly-present check,
    guarding against true values hiding in the dubious band; the check is
    F_pos(reading - margin) = 1, i.e. reading - margin at or above the
    trigger threshold.
    """
    theta = np.asarray(measured_theta, dtype=np.float64)
    pres = np.asarray(measured_p, dtype=np.float64)
    if theta.size == 0 or pres.size == 0:
        raise ValueError("measurement series must be non-empty")
    if theta.shape != pres.shape:
        raise ValueError(f"series lengths differ: {theta.shape} vs {pres.shape}")
    t_trig, p_trig = triggered
    if not t_trig:
        return Decision("hold", None, "temperature sensor not triggered")
    if not p_trig:
        return Decision("hold", None, "pressure sensor not triggered")
    labels = cfg.times if len(cfg.times) == theta.size else tuple(range(theta.size))
    fam_t, fam_p = cfg.temperature_family(), cfg.pressure_family()
    for i in range(theta.size):
        if fam_t.eval(0, float(theta[i]) - cfg.lambda_theta).p_pos != 1.0:
            return Decision("hold", int(labels[i]), "temperature margin")
        if fam_p.eval(0, float(pres[i]) - cfg.lambda_p).p_pos != 1.0:
            return Decision("hold", int(labels[i]), "pressure margin")
    return Decision("act", None, None)
