"""Real test functions on the line with explicit Fourier transforms.

Transform convention: fhat(lam) = (1/2pi) * integral f(x) e^{-i lam x} dx, the
unique choice under which the circle coefficients of f(m * theta) equal
(1/m) * fhat(j/m).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from scipy import integrate

SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class LineFunction:
    """One of three families: gaussian bump, triangle bump, or tabulated grid
    samples.  `params` is family specific; see the constructors."""

    family: str
    amplitude: float = 1.0
    width: float = 1.0
    grid: Optional[np.ndarray] = None
    samples: Optional[np.ndarray] = None

    @classmethod
    def gaussian(cls, amplitude: float = 1.0, width: float = 1.0) -> "LineFunction":
        """amplitude * exp(-x^2 / (2 width^2))"""
        return cls("gaussian", amplitude, width)

    @classmethod
    def triangle(cls, amplitude: float = 1.0, halfwidth: float = 1.0) -> "LineFunction":
        """amplitude * max(0, 1 - |x| / halfwidth)"""
        return cls("triangle", amplitude, halfwidth)

    @classmethod
    def tabulated(cls, grid, samples) -> "LineFunction":
        grid = np.asarray(grid, dtype=float)
        samples = np.asarray(samples, dtype=float)
        if grid.ndim != 1 or grid.shape != samples.shape or grid.size < 2:
            raise ValueError("tabulated function needs matching 1-d arrays")
        return cls("user-tabulated", 1.0, 1.0, grid, samples)

    def value(self, x):
        x = np.asarray(x, dtype=float)
        if self.family == "gaussian":
            return self.amplitude * np.exp(-(x**2) / (2.0 * self.width**2))
        if self.family == "triangle":
            return self.amplitude * np.maximum(0.0, 1.0 - np.abs(x) / self.width)
        return np.interp(x, self.grid, self.samples, left=0.0, right=0.0)

    def fourier(self, lam):
        """fhat(lam) under the (1/2pi) forward convention."""
        lam = np.asarray(lam, dtype=float)
        if self.family == "gaussian":
            s = self.width
            return self.amplitude * s / SQRT_TWO_PI * np.exp(-(s**2) * lam**2 / 2.0)
        if self.family == "triangle":
            w = self.width
            core = np.sinc(lam * w / (2.0 * math.pi)) ** 2
            return self.amplitude * w / (2.0 * math.pi) * core
        xs, ys = self.grid, self.samples
        lam = np.atleast_1d(lam)
        vals = np.trapezoid(ys[None, :] * np.exp(-1j * lam[:, None] * xs[None, :]), xs, axis=1)
        vals = vals / (2.0 * math.pi)
        return vals if vals.size > 1 else complex(vals[0])

    def integral(self) -> float:
        if self.family == "gaussian":
            return self.amplitude * self.width * SQRT_TWO_PI
        if self.family == "triangle":
            return self.amplitude * self.width
        return float(np.trapezoid(self.samples, self.grid))

    def integral_on(self, a: float, b: float) -> float:
        val, _ = integrate.quad(lambda x: float(self.value(x)), a, b, limit=200)
        return val

    def support_halfwidth(self) -> Optional[float]:
        """Radius of compact support, or None for infinite support."""
        if self.family == "triangle":
            return self.width
        if self.family == "user-tabulated":
            return float(max(abs(self.grid[0]), abs(self.grid[-1])))
        return None

    def scale(self, c: float) -> "LineFunction":
        if self.family == "user-tabulated":
            return replace(self, samples=self.samples * c)
        return replace(self, amplitude=self.amplitude * c)

    def dilate(self, r: float) -> "LineFunction":
        """x -> f(x / r)."""
        if r <= 0:
            raise ValueError("dilation factor must be positive")
        if self.family == "user-tabulated":
            return replace(self, grid=self.grid * r)
        return replace(self, width=self.width * r)

    def tail_l2(self, w: float) -> float:
        """integral of f^2 over |x| > w."""
        if self.family == "gaussian":
            s, a = self.width, self.amplitude
            return a**2 * s * math.sqrt(math.pi) * math.erfc(w / s)
        if self.family == "triangle":
            if w >= self.width:
                return 0.0
            t = 1.0 - w / self.width
            return 2.0 * self.amplitude**2 * self.width * t**3 / 3.0
        mask = np.abs(self.grid) > w
        if not np.any(mask):
            return 0.0
        return float(np.trapezoid(np.where(mask, self.samples**2, 0.0), self.grid))

    def tail_deriv_l2(self, w: float) -> float:
        """integral of f'^2 over |x| > w."""
        if self.family == "gaussian":
            s, a = self.width, self.amplitude
            # f' = -a x / s^2 e^{-x^2/(2 s^2)}; integral via incomplete gamma
            val, _ = integrate.quad(
                lambda x: (a * x / s**2) ** 2 * math.exp(-(x**2) / s**2), w, np.inf
            )
            return 2.0 * val
        if self.family == "triangle":
            if w >= self.width:
                return 0.0
            return 2.0 * (self.amplitude / self.width) ** 2 * (self.width - w)
        dy = np.gradient(self.samples, self.grid)
        mask = np.abs(self.grid) > w
        if not np.any(mask):
            return 0.0
        return float(np.trapezoid(np.where(mask, dy**2, 0.0), self.grid))


def sobolev_seminorm_line(f: LineFunction, p: float) -> float:
    """Squared seminorm int |lam|^{2p} |fhat(lam)|^2 dlam over the line."""
    if f.family == "triangle" and p >= 1.5:
        raise ValueError("seminorm diverges for the triangle family at p >= 3/2")
    val, err = integrate.quad(
        lambda lam: 2.0 * lam ** (2.0 * p) * abs(f.fourier(lam)) ** 2,
        0.0,
        np.inf,
        limit=400,
        epsrel=1e-10,
        epsabs=0.0,
    )
    if not math.isfinite(val) or (val > 0 and err > 1e-6 * val):
        raise ValueError(f"seminorm quadrature did not converge (p = {p})")
    return val


def limit_variance(f: LineFunction, beta: float) -> float:
    """Limiting variance (4/beta) int_0^inf lam fhat(lam) fhat(-lam) dlam of the
    regularized linear statistic; dilation invariant."""
    val, _ = integrate.quad(
        lambda lam: lam * float(f.fourier(lam)) * float(f.fourier(-lam)),
        0.0,
        np.inf,
        limit=400,
        epsrel=1e-11,
        epsabs=0.0,
    )
    return 4.0 / beta * val


def normalize_for_unit_variance(f: LineFunction, beta: float) -> LineFunction:
    """Scaled copy with limiting variance exactly one."""
    var = limit_variance(f, beta)
    if var <= 0:
        raise ValueError("cannot normalize a zero-variance function")
    return f.scale(1.0 / math.sqrt(var))


def circle_restriction_coeff(f: LineFunction, m: int, j: int) -> complex:
    """Circle Fourier coefficient of theta -> f(m * theta) for large m, in
    closed form: (1/m) * fhat(j/m)."""
    return complex(f.fourier(j / m)) / m
