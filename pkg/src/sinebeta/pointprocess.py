"""Configurations, monotone-function views, and the lattice-preimage map that
turns a monotone function plus a uniform shift into a point configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

EDGE_TOL = 1e-9
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Configuration:
    """Finite multiset of points inside a window, kept sorted."""

    points: tuple[float, ...]
    window: tuple[float, float]
    edge_points: tuple[float, ...] = ()
    flat_hits: int = 0

    def __post_init__(self):
        if list(self.points) != sorted(self.points):
            raise ValueError("points must be sorted")
        a, b = self.window
        if any(x < a - EDGE_TOL or x > b + EDGE_TOL for x in self.points):
            raise ValueError("points must lie inside the window")

    def __len__(self) -> int:
        return len(self.points)

    def count_in(self, a: float, b: float) -> int:
        return sum(1 for x in self.points if a < x < b)


class MonotoneFnView:
    """Nondecreasing grid function with linear interpolation; inverses resolve
    flat segments to the leftmost preimage."""

    def __init__(self, x: Sequence[float], u: Sequence[float]):
        self.x = np.asarray(x, dtype=float)
        self.u = np.asarray(u, dtype=float)
        if self.x.ndim != 1 or self.x.shape != self.u.shape or self.x.size < 2:
            raise ValueError("need matching 1-d grids with at least two knots")
        if np.any(np.diff(self.x) < 0):
            raise ValueError("x grid must be sorted")
        if np.any(np.diff(self.u) < 0):
            raise ValueError("u values must be nondecreasing")

    @property
    def window(self) -> tuple[float, float]:
        return float(self.x[0]), float(self.x[-1])

    @property
    def value_range(self) -> tuple[float, float]:
        return float(self.u[0]), float(self.u[-1])

    def value(self, xq):
        return np.interp(xq, self.x, self.u)

    def inverse_leftmost(self, y: float) -> tuple[float, bool]:
        """Leftmost x with u(x) = y; second item reports a flat-segment hit."""
        lo, hi = self.value_range
        if y < lo or y > hi:
            raise ValueError(f"value {y} outside range [{lo}, {hi}]")
        i = int(np.searchsorted(self.u, y, side="left"))
        if i < self.u.size and self.u[i] == y:
            flat = i + 1 < self.u.size and self.u[i + 1] == y
            return float(self.x[i]), flat
        x0, x1 = self.x[i - 1], self.x[i]
        u0, u1 = self.u[i - 1], self.u[i]
        if x1 == x0:
            return float(x0), False
        t = (y - u0) / (u1 - u0)
        return float(x0 + t * (x1 - x0)), False


def lattice_preimages(view: MonotoneFnView, omega: float) -> Configuration:
    """Preimage configuration of the shifted lattice omega + 2*pi*Z under the
    interpolated monotone function.

    A jump knot (repeated x with increasing u) contributes one point per
    lattice value it crosses; lattice values inside an exact flat segment
    resolve to the leftmost preimage and are counted in ``flat_hits``.
    """
    lo, hi = view.value_range
    k_min = math.ceil((lo - omega) / TWO_PI)
    k_max = math.floor((hi - omega) / TWO_PI)
    pts: list[float] = []
    flats = 0
    for k in range(k_min, k_max + 1):
        x, flat = view.inverse_leftmost(omega + TWO_PI * k)
        pts.append(x)
        flats += flat
    a, b = view.window
    edge = tuple(x for x in pts if abs(x - a) < EDGE_TOL or abs(x - b) < EDGE_TOL)
    return Configuration(tuple(sorted(pts)), view.window, edge, flats)


def additive_functional(config: Configuration, f: Callable) -> complex:
    """Sum of f over the points (0 for the empty configuration)."""
    if not config.points:
        return 0.0
    return complex(np.sum(f(np.asarray(config.points))))


def regularized_additive(config: Configuration, f: Callable, f_integral: float) -> complex:
    """Additive functional minus its mean under intensity 1/(2*pi):
    S_f(X) - f_integral / (2*pi)."""
    return additive_functional(config, f) - f_integral / TWO_PI


def multiplicative_functional(config: Configuration, g: Callable) -> complex:
    """Product of (1 + g) over the points (1 for the empty configuration)."""
    if not config.points:
        return 1.0
    return complex(np.prod(1.0 + np.asarray([g(x) for x in config.points])))


def linear_interpolation(
    view: MonotoneFnView, k: int, window: tuple[float, float] | None = None
) -> MonotoneFnView:
    """Piecewise-linear interpolant through k+1 equidistributed knots of the
    window (endpoints included); the L1 gap is at most
    (half-width / k) * (u(b) - u(a))."""
    if k < 1:
        raise ValueError("k must be >= 1")
    a, b = window if window is not None else view.window
    knots = np.linspace(a, b, k + 1)
    return MonotoneFnView(knots, view.value(knots))
