"""Coupled simulation of the sine-process driving SDE.

One pair of Brownian motions drives the whole family indexed by the space
point x, which preserves the monotone coupling x -> X_x(1); the time grid is
geometric so the 1/sqrt(t) noise scale contributes equally per step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import isotonic_regression

from .pointprocess import Configuration, MonotoneFnView, lattice_preimages, TWO_PI


@dataclass(frozen=True)
class SDEConfig:
    beta: float
    x_grid: np.ndarray
    t0: float = 1e-4
    steps: int = 2000
    repair_tolerance_factor: float = 1e-3

    def __post_init__(self):
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if not (0 < self.t0 <= 1e-2):
            raise ValueError("t0 must lie in (0, 1e-2]")
        if self.steps < 1000:
            raise ValueError("need at least 1000 time steps")
        x = np.asarray(self.x_grid, dtype=float)
        if x.ndim != 1 or x.size < 1 or np.any(np.diff(x) <= 0):
            raise ValueError("x_grid must be strictly increasing")
        object.__setattr__(self, "x_grid", x)

    @property
    def time_grid(self) -> np.ndarray:
        # t_j = t0^(1 - j/M): geometric from t0 to 1, dt proportional to t
        m = self.steps
        return self.t0 ** (1.0 - np.arange(m + 1) / m)

    @property
    def repair_tolerance(self) -> float:
        span = float(self.x_grid[-1] - self.x_grid[0])
        return self.repair_tolerance_factor * span


@dataclass(frozen=True)
class MonotonePath:
    """Terminal values of the coupled family on the x grid, after monotone
    repair; the repair magnitude is recorded for diagnostics."""

    x_grid: np.ndarray
    u: np.ndarray
    repair_magnitude: float

    def as_view(self) -> MonotoneFnView:
        return MonotoneFnView(self.x_grid, self.u)


def _integrate_family(
    cfg: SDEConfig, rng: np.random.Generator, n_paths: int
) -> np.ndarray:
    """Euler-Maruyama over the geometric time grid, shared noise across the
    x grid; returns raw terminal values of shape (n_paths, len(x_grid))."""
    x = cfg.x_grid
    t = cfg.time_grid
    state = np.broadcast_to(x * t[0], (n_paths, x.size)).copy()
    scale = 2.0 / math.sqrt(cfg.beta)
    for j in range(cfg.steps):
        dt = t[j + 1] - t[j]
        sig = scale / math.sqrt(t[j])
        sqdt = math.sqrt(dt)
        db1 = rng.standard_normal(n_paths) * sqdt
        db2 = rng.standard_normal(n_paths) * sqdt
        # Im{(e^{iX} - 1)(dB1 + i dB2)} = sin(X) dB1 + (cos(X) - 1) dB2
        state += x * dt + sig * (
            np.sin(state) * db1[:, None] + (np.cos(state) - 1.0) * db2[:, None]
        )
    return state


def _repair_monotone(u: np.ndarray) -> tuple[np.ndarray, float]:
    if u.size < 2 or np.all(np.diff(u) >= 0):
        return u, 0.0
    repaired = isotonic_regression(u).x
    return repaired, float(np.max(np.abs(repaired - u)))


def simulate_sine_path(cfg: SDEConfig, rng: np.random.Generator) -> MonotonePath:
    """One coupled terminal profile x -> X_x(1) with monotone repair."""
    raw = _integrate_family(cfg, rng, 1)[0]
    u, magnitude = _repair_monotone(raw)
    if magnitude > cfg.repair_tolerance:
        raise RuntimeError(
            f"monotone repair {magnitude:.3g} exceeds tolerance "
            f"{cfg.repair_tolerance:.3g}; increase the step count"
        )
    return MonotonePath(cfg.x_grid, u, magnitude)


def simulate_sine_paths(
    cfg: SDEConfig, rng: np.random.Generator, n_paths: int, chunk: int = 4096
) -> "np.ndarray":
    """Raw terminal profiles for many independent paths, chunked for memory;
    monotone repair is left to the consumer (shape (n_paths, grid))."""
    out = np.empty((n_paths, cfg.x_grid.size))
    done = 0
    while done < n_paths:
        m = min(chunk, n_paths - done)
        out[done : done + m] = _integrate_family(cfg, rng, m)
        done += m
    return out


def sample_sine_configuration(
    cfg: SDEConfig, rng: np.random.Generator, window: tuple[float, float] | None = None
) -> Configuration:
    """Draw one configuration: lattice preimages of a uniform shift under the
    interpolated terminal profile, restricted to the window."""
    path = simulate_sine_path(cfg, rng)
    omega = rng.uniform(0.0, TWO_PI)
    config = lattice_preimages(path.as_view(), omega)
    if window is None:
        return config
    a, b = window
    if a < cfg.x_grid[0] or b > cfg.x_grid[-1]:
        raise ValueError("window must be covered by the x grid")
    pts = tuple(p for p in config.points if a <= p <= b)
    edge = tuple(p for p in config.edge_points if a <= p <= b)
    return Configuration(pts, (a, b), edge, config.flat_hits)


def configurations_from_profiles(
    x_grid: np.ndarray, profiles: np.ndarray, rng: np.random.Generator
) -> list[Configuration]:
    """Repair each raw profile, draw an independent shift, map to points."""
    configs = []
    for row in profiles:
        u, _ = _repair_monotone(row)
        view = MonotoneFnView(x_grid, u)
        configs.append(lattice_preimages(view, rng.uniform(0.0, TWO_PI)))
    return configs
