"""Figure rendering for the CLI report paths.

Everything here is headless: the Agg backend is forced before pyplot is
touched, figures go straight to files, and no global state leaks out.
"""

from __future__ import annotations

import numpy as np


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def distance_figure(dist, path: str) -> str:
    """Bar chart of the distance law with its cumulative curve."""
    plt = _pyplot()
    k = np.arange(dist.coeffs.size)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(k, dist.coeffs, color="tab:blue", alpha=0.8, label="P{S = k}")
    ax.step(k, np.cumsum(dist.coeffs), where="mid", color="tab:red", label="P{S <= k}")
    ax.set_xlabel("distance k")
    ax.set_ylabel("probability")
    ax.set_title(f"mean {dist.mu_s:.4g}, std {dist.sigma_s:.4g}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def sensor_figure(result, path: str) -> str:
    """Analytic component averages vs event frequencies, one panel per component."""
    plt = _pyplot()
    times = result.config.times
    fig, axes = plt.subplots(2, 3, figsize=(11, 6), sharex=True)
    for s, sensor in enumerate(("temperature", "pressure")):
        for c in range(3):
            ax = axes[s, c]
            ax.plot(times, result.analytic[s, :, c], "o-", label="averaged F")
            ax.errorbar(times, result.empirical[s, :, c],
                        yerr=3 * result.std_err[s, :, c], fmt="^--",
                        capsize=3, label="event frequency")
            ax.set_title(f"{sensor}, component {c - 1:+d}")
            if s == 1:
                ax.set_xlabel("t")
    axes[0, 0].set_ylabel("probability")
    axes[1, 0].set_ylabel("probability")
    axes[0, 0].legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def walk_figure(trajs: np.ndarray, mean_heights: np.ndarray, path: str,
                max_shown: int = 50) -> str:
    """Spaghetti plot of trajectories (variable 0) over the analytic mean."""
    plt = _pyplot()
    t = np.arange(1, trajs.shape[1] + 1)
    fig, ax = plt.subplots(figsize=(6, 4))
    for k in range(min(max_shown, trajs.shape[0])):
        ax.plot(t, trajs[k, :, 0], color="gray", alpha=0.25, lw=0.8)
    ax.plot(t, mean_heights[:, 0], color="tab:red", lw=2, label="analytic mean")
    ax.set_xlabel("t")
    ax.set_ylabel("weight")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def mean_encoder_figure(analytic, mc, path: str) -> str:
    """Step plot of the analytic and Monte Carlo mean encoders on [0, nm]."""
    plt = _pyplot()
    n, m = analytic.heights.shape
    edges = np.arange(n * m + 1, dtype=np.float64)
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.stairs(analytic.heights.ravel(), edges, color="tab:red", lw=2, label="analytic")
    if mc is not None:
        ax.stairs(mc.heights.ravel(), edges, color="tab:blue", lw=1.2, label="Monte Carlo")
    ax.set_xlabel("position on [0, nm]")
    ax.set_ylabel("height")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def identification_figure(result, path: str) -> str:
    """Running coverage rate across trials against the 1 - delta target."""
    plt = _pyplot()
    covered = np.asarray(result.covered, dtype=np.float64)
    trials = np.arange(1, covered.size + 1)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(trials, np.cumsum(covered) / trials, label="running coverage rate")
    ax.axhline(1.0 - result.bound.delta, color="tab:red", ls="--",
               label=f"target 1 - delta = {1.0 - result.bound.delta:g}")
    ax.set_xlabel("trial")
    ax.set_ylabel("rate")
    ax.set_ylim(0, 1.05)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
