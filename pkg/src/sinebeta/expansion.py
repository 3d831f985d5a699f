"""Multiplicative-functional expectations of the circular beta-ensemble via
specialized Jack expansions, their Gaussian limits, and measures on partitions.

All series over partitions are truncated at a degree cap D; every truncation
comes with a computable tail term so the caller can account for it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple

from .jack import jack_basis, specialize
from .partitions import (
    check_partition,
    enumerate_partitions,
    finite_n_factor,
    hook_products,
    weight,
)


class CircleFunction:
    """A function on the unit circle with finitely many Fourier coefficients.

    Coefficients are indexed by integers j with f(theta) = sum_j fhat_j e^{ij theta}.
    """

    def __init__(self, coeffs: Mapping[int, complex]):
        self.coeffs = {int(j): complex(c) for j, c in coeffs.items() if c != 0}
        self.is_real = all(
            complex(self.coeffs.get(-j, 0)) == complex(self.coeffs.get(j, 0)).conjugate()
            for j in {abs(k) for k in self.coeffs}
        )

    @classmethod
    def from_cosines(cls, amplitudes: Mapping[int, float]) -> "CircleFunction":
        """Real trigonometric polynomial sum_k a_k * 2cos(k theta)."""
        coeffs: dict[int, complex] = {}
        for k, a in amplitudes.items():
            if k < 1:
                raise ValueError("cosine frequencies must be >= 1")
            coeffs[k] = complex(a)
            coeffs[-k] = complex(a).conjugate()
        return cls(coeffs)

    def fhat(self, j: int) -> complex:
        return self.coeffs.get(j, 0j)

    @property
    def f0(self) -> complex:
        return self.fhat(0)

    @property
    def j_max(self) -> int:
        return max((abs(j) for j in self.coeffs), default=0)

    def value(self, theta):
        """Pointwise evaluation; returns real values when the function is real."""
        import numpy as np

        theta = np.asarray(theta, dtype=float)
        out = np.zeros(theta.shape, dtype=complex)
        for j, c in self.coeffs.items():
            out += c * np.exp(1j * j * theta)
        return out.real if self.is_real else out

    def sigma_circle(self) -> complex:
        """sum_{k>=1} k fhat_k fhat_{-k} (the half-seminorm pairing)."""
        return sum(k * self.fhat(k) * self.fhat(-k) for k in range(1, self.j_max + 1))


def sobolev_seminorm_circle(f: CircleFunction, p: float) -> float:
    """Squared Sobolev seminorm sum_k |k|^{2p} |fhat_k|^2 over the support."""
    return float(
        sum(abs(j) ** (2 * p) * abs(c) ** 2 for j, c in f.coeffs.items() if j != 0)
    )


class Specialization:
    """Algebra homomorphism determined by the power-sum values p_j -> values[j].

    `default` fills the values beyond the stored support; None means a missing
    index is an error.
    """

    def __init__(self, values: Mapping[int, complex], default: complex | None = 0j):
        self.values = {int(j): v for j, v in values.items()}
        if any(j < 1 for j in self.values):
            raise ValueError("power-sum indices start at 1")
        self.default = default

    @classmethod
    def from_circle(cls, f: CircleFunction, alpha, sign: int) -> "Specialization":
        """p_j = alpha * j * fhat(sign*j)."""
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        a = float(alpha)
        vals = {j: a * j * f.fhat(sign * j) for j in range(1, f.j_max + 1)}
        return cls(vals, default=0j)

    @classmethod
    def plancherel(cls, q) -> "Specialization":
        """p_1 = sqrt(q), all higher power sums zero (q may be a Fraction with
        rational square root for exact work, else float)."""
        if isinstance(q, (Fraction, int)):
            num, den = Fraction(q).numerator, Fraction(q).denominator
            rn, rd = math.isqrt(num), math.isqrt(den)
            if rn * rn == num and rd * rd == den:
                return cls({1: Fraction(rn, rd)}, default=Fraction(0))
        return cls({1: math.sqrt(float(q))}, default=0j)

    def __getitem__(self, j: int):
        j = int(j)
        if j in self.values:
            return self.values[j]
        if self.default is None:
            raise KeyError(j)
        return self.default

    @property
    def support_max(self) -> int:
        return max((j for j, v in self.values.items() if v != 0), default=0)

    def pairing(self, other: "Specialization") -> complex:
        """sum_{k>=1} p_k(self) p_k(other) / k over the joint support."""
        top = max(self.support_max, other.support_max)
        return sum(self[k] * other[k] / k for k in range(1, top + 1)) if top else 0

    def is_conjugate_of(self, other: "Specialization") -> bool:
        top = max(self.support_max, other.support_max)
        return all(
            complex(self[k]) == complex(other[k]).conjugate() for k in range(1, top + 1)
        )


class GesselResult(NamedTuple):
    value: complex
    tail_estimate: float


def _single_spec_tail(f: CircleFunction, alpha: float, sign: int, degree_cap: int) -> float:
    # Markov bound on the |lam| > D mass of the nonnegative single-specialization
    # series: total mass exp(a * sum k|fhat|^2), mean size a * sum k^2 |fhat|^2.
    s_half = sum(k * abs(f.fhat(sign * k)) ** 2 for k in range(1, f.j_max + 1))
    s_one = sum(k**2 * abs(f.fhat(sign * k)) ** 2 for k in range(1, f.j_max + 1))
    mean_size = alpha * s_one
    total = math.exp(alpha * s_half)
    if mean_size == 0.0:
        return 0.0
    return total * mean_size / max(degree_cap, 1)


def gessel_expectation(
    f: CircleFunction, alpha, n: int, degree_cap: int = 10
) -> GesselResult:
    """Expectation of prod_j e^{f(theta_j)} under the n-point circular ensemble
    at beta = 2/alpha, as a truncated sum over partitions of weight <= degree_cap.

    Returns the truncated value (including the e^{n fhat_0} prefactor) and a
    tail estimate bounding the dropped |lam| > degree_cap mass on the same scale.
    Requires alpha >= 1.
    """
    alpha = Fraction(alpha)
    if alpha < 1:
        raise ValueError("expansion requires alpha >= 1 (beta <= 2)")
    if n < 1:
        raise ValueError("n must be positive")
    if degree_cap < 0:
        raise ValueError("degree_cap must be nonnegative")
    basis = jack_basis(alpha)
    rho_p = Specialization.from_circle(f, alpha, +1)
    rho_m = Specialization.from_circle(f, alpha, -1)
    total = 0j
    for d in range(degree_cap + 1):
        for lam in enumerate_partitions(d):
            if len(lam) > n:
                continue
            jp = basis.jack(lam)
            w = complex(specialize(jp, rho_p)) * complex(specialize(jp, rho_m))
            if w == 0:
                continue
            total += (
                w / float(basis.norm(lam)) * float(finite_n_factor(lam, alpha, n))
            )
    prefactor = cmath.exp(n * f.f0)
    a = float(alpha)
    tail = math.sqrt(
        _single_spec_tail(f, a, +1, degree_cap) * _single_spec_tail(f, a, -1, degree_cap)
    )
    return GesselResult(prefactor * total, abs(prefactor) * tail)


def limit_laplace(f: CircleFunction, beta: float) -> complex:
    """Large-n limit exp((2/beta) sum_{k>=1} k fhat_k fhat_{-k})."""
    if beta <= 0 or beta > 2:
        raise ValueError("beta must lie in (0, 2]")
    return cmath.exp((2.0 / beta) * f.sigma_circle())


def subgauss_bound(f: CircleFunction, beta: float) -> float:
    """Uniform-in-n bound exp((1/beta) * ||f||^2_{1/2}) for real f."""
    if not f.is_real:
        raise ValueError("subgaussian bound requires a real-valued function")
    if beta <= 0 or beta > 2:
        raise ValueError("beta must lie in (0, 2]")
    return math.exp(sobolev_seminorm_circle(f, 0.5) / beta)


def cbe_error_bound(f: CircleFunction, beta: float, n: int) -> float:
    """Explicit normalized-deviation bound for the 2n-point ensemble:
    (8/(beta^2 n)) exp((1/beta)||f||^2_{1/2} - (2/beta) Re sigma) ||f||^2_1."""
    if beta <= 0 or beta > 2:
        raise ValueError("beta must lie in (0, 2]")
    if n < 1:
        raise ValueError("n must be positive")
    h_half = sobolev_seminorm_circle(f, 0.5)
    h_one = sobolev_seminorm_circle(f, 1.0)
    sigma = f.sigma_circle()
    return (
        8.0
        / (beta**2 * n)
        * math.exp(h_half / beta - (2.0 / beta) * sigma.real)
        * h_one
    )


@dataclass(frozen=True)
class JackMeasure:
    """Probability weights on partitions proportional to
    J_lam(rho1) J_lam(rho2) / <J_lam, J_lam>, truncated at |lam| <= degree_cap.

    The normalization Z comes from the closed-form exponential of the
    specialization pairing, so the truncated pmf sums to 1 minus an exact,
    reported tail mass.
    """

    alpha: Fraction
    rho1: Specialization
    rho2: Specialization
    degree_cap: int
    weights: dict
    log_z: complex

    @classmethod
    def build(cls, rho1: Specialization, rho2: Specialization, alpha, degree_cap: int) -> "JackMeasure":
        alpha = Fraction(alpha)
        basis = jack_basis(alpha)
        weights = {}
        for d in range(degree_cap + 1):
            for lam in enumerate_partitions(d):
                jp = basis.jack(lam)
                w = specialize(jp, rho1) * specialize(jp, rho2)
                weights[lam] = complex(w) / float(basis.norm(lam))
        log_z = complex(rho1.pairing(rho2)) / float(alpha)
        return cls(alpha, rho1, rho2, degree_cap, weights, log_z)

    @classmethod
    def from_circle_function(cls, f: CircleFunction, alpha, degree_cap: int) -> "JackMeasure":
        alpha = Fraction(alpha)
        return cls.build(
            Specialization.from_circle(f, alpha, +1),
            Specialization.from_circle(f, alpha, -1),
            alpha,
            degree_cap,
        )

    @property
    def z(self) -> complex:
        return cmath.exp(self.log_z)

    def pmf(self, lam) -> complex:
        lam = check_partition(lam)
        if weight(lam) > self.degree_cap:
            raise ValueError(f"partition weight {weight(lam)} exceeds cap {self.degree_cap}")
        value = self.weights[lam] / self.z
        if self.rho1.is_conjugate_of(self.rho2):
            return value.real
        return value

    def truncated_mass(self) -> complex:
        total = sum(self.weights.values()) / self.z
        return total.real if self.rho1.is_conjugate_of(self.rho2) else total

    def tail_mass(self) -> complex:
        """Exact deficit of the truncated table: 1 - sum_{|lam|<=D} pmf."""
        return 1.0 - self.truncated_mass()


def jack_measure_pmf(measure: JackMeasure, lam) -> complex:
    return measure.pmf(lam)


def expected_partition_size(
    f: CircleFunction, alpha, degree_cap: int = 10
) -> tuple[float, float]:
    """Truncated mean partition size under the measure built from f, together
    with its exact limit (alpha/2) * ||f||^2_1 (real f only)."""
    if not f.is_real:
        raise ValueError("expected size is defined for real-valued functions")
    alpha = Fraction(alpha)
    measure = JackMeasure.from_circle_function(f, alpha, degree_cap)
    value = sum(
        weight(lam) * measure.pmf(lam).real for lam in measure.weights
    )
    target = float(alpha) / 2.0 * sobolev_seminorm_circle(f, 1.0)
    return value, target


def plancherel_pmf(lam, alpha) -> Fraction:
    """beta-Plancherel weight |lam|! alpha^{|lam|} / (H(lam, a) H'(lam, a))."""
    lam = check_partition(lam)
    alpha = Fraction(alpha)
    h, hp = hook_products(lam, alpha)
    return Fraction(math.factorial(weight(lam))) * alpha ** weight(lam) / (h * hp)
