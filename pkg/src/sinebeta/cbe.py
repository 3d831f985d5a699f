"""Exact sampling of the circular beta-ensemble.

The n-point ensemble is realized through independent disc-valued recursion
coefficients (theta_nu distributed), the Szego recursion for the associated
unit-circle orthogonal polynomials, and the roots of the resulting degree-n
characteristic polynomial.  The relative Blaschke phase of the recursion gives
the monotone counting function whose lattice preimages are the sample angles.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .pointprocess import TWO_PI

MODULUS_TOL = 1e-6


def sample_theta_nu(nu: float, rng: np.random.Generator, size=None):
    """Draw from the disc density (nu-1)/(2*pi) (1-|z|^2)^{(nu-3)/2}, nu > 1.

    Radius via the closed-form inverse CDF |z|^2 = 1 - U^{2/(nu-1)}, angle
    uniform.
    """
    if nu <= 1:
        raise ValueError("theta_nu requires nu > 1")
    u = rng.random(size)
    r2 = 1.0 - u ** (2.0 / (nu - 1.0))
    phi = rng.uniform(0.0, TWO_PI, size)
    return np.sqrt(r2) * np.exp(1j * phi)


@dataclass(frozen=True)
class VerblunskySeq:
    """Recursion coefficients: n-1 strictly inside the disc, final unimodular."""

    alphas: np.ndarray  # shape (n-1,), |alpha_k| < 1
    final: complex      # |final| = 1

    @property
    def n(self) -> int:
        return len(self.alphas) + 1

    def __post_init__(self):
        if np.any(np.abs(self.alphas) >= 1):
            raise ValueError("interior coefficients must lie in the open unit disc")
        if abs(abs(self.final) - 1) > 1e-12:
            raise ValueError("final coefficient must be unimodular")


def sample_verblunsky(n: int, beta: float, rng: np.random.Generator) -> VerblunskySeq:
    """Independent draws alpha_k ~ theta_{beta(k+1)+1}, k = 0..n-2, plus a
    uniform unimodular final coefficient."""
    if n < 1:
        raise ValueError("n must be positive")
    if beta <= 0:
        raise ValueError("beta must be positive")
    alphas = np.array(
        [sample_theta_nu(beta * (k + 1) + 1, rng) for k in range(n - 1)],
        dtype=complex,
    )
    final = cmath.exp(1j * rng.uniform(0.0, TWO_PI))
    return VerblunskySeq(alphas, final)


@dataclass(frozen=True)
class SzegoPair:
    """Coefficient vectors (ascending powers) of Phi_k and its reciprocal."""

    phi: np.ndarray
    phi_star: np.ndarray


def szego_recursion(alphas: np.ndarray) -> SzegoPair:
    """Run Phi_{k+1} = z Phi_k - conj(a_k) Phi*_k from Phi_0 = 1."""
    phi = np.array([1.0 + 0j])
    star = np.array([1.0 + 0j])
    for a in alphas:
        zphi = np.concatenate(([0j], phi))
        phi_next = zphi - np.conj(a) * np.concatenate((star, [0j]))
        star_next = np.concatenate((star, [0j])) - a * zphi
        phi, star = phi_next, star_next
    return SzegoPair(phi, star)


def characteristic_polynomial(v: VerblunskySeq) -> np.ndarray:
    """Monic degree-n polynomial z*Phi_{n-1}(z) - conj(final)*Phi*_{n-1}(z),
    ascending coefficients; its roots are the sample angles."""
    pair = szego_recursion(v.alphas)
    zphi = np.concatenate(([0j], pair.phi))
    return zphi - np.conj(v.final) * np.concatenate((pair.phi_star, [0j]))


@dataclass(frozen=True)
class CBESample:
    """Sorted sample angles plus sampling metadata."""

    angles: np.ndarray
    n: int
    beta: float
    modulus_deviation: float


def _roots_of_monic(coeffs_ascending: np.ndarray) -> np.ndarray:
    # batched companion-matrix eigenvalues; coeffs shape (..., n+1), monic
    c = np.asarray(coeffs_ascending)
    n = c.shape[-1] - 1
    comp = np.zeros(c.shape[:-1] + (n, n), dtype=complex)
    idx = np.arange(n - 1)
    comp[..., idx + 1, idx] = 1.0
    comp[..., :, -1] = -c[..., :-1]
    return np.linalg.eigvals(comp)


def sample_cbe(n: int, beta: float, rng: np.random.Generator) -> CBESample:
    """One exact n-point sample; resamples once if the root moduli drift, then
    fails hard."""
    for attempt in range(2):
        v = sample_verblunsky(n, beta, rng)
        roots = _roots_of_monic(characteristic_polynomial(v))
        dev = float(np.max(np.abs(np.abs(roots) - 1.0)))
        if dev <= MODULUS_TOL:
            return CBESample(np.sort(np.angle(roots)), n, beta, dev)
    raise RuntimeError(f"root moduli deviate by {dev} after resampling (n={n}, beta={beta})")


def sample_cbe_batch(
    n: int, beta: float, rng: np.random.Generator, size: int
) -> np.ndarray:
    """Sorted angle matrix of shape (size, n); vectorized over samples."""
    ks = np.arange(n - 1)
    nus = beta * (ks + 1) + 1
    u = rng.random((size, n - 1))
    r = np.sqrt(1.0 - u ** (2.0 / (nus - 1.0)))
    phases = rng.uniform(0.0, TWO_PI, (size, n - 1))
    alphas = r * np.exp(1j * phases)
    final = np.exp(1j * rng.uniform(0.0, TWO_PI, size))

    phi = np.zeros((size, n + 1), dtype=complex)
    star = np.zeros((size, n + 1), dtype=complex)
    phi[:, 0] = 1.0
    star[:, 0] = 1.0
    deg = 0
    for k in range(n - 1):
        a = alphas[:, k][:, None]
        zphi = np.roll(phi, 1, axis=1)
        zphi[:, 0] = 0.0
        new_phi = zphi - np.conj(a) * star
        new_star = star - a * zphi
        phi, star = new_phi, new_star
        deg += 1
    zphi = np.roll(phi, 1, axis=1)
    zphi[:, 0] = 0.0
    coeffs = zphi - np.conj(final)[:, None] * star

    roots = _roots_of_monic(coeffs)
    dev = np.max(np.abs(np.abs(roots) - 1.0), axis=1)
    bad = np.flatnonzero(dev > MODULUS_TOL)
    angles = np.sort(np.angle(roots), axis=1)
    for i in bad:  # rare; redo individually with the hard-error path
        angles[i] = sample_cbe(n, beta, rng).angles
    return angles


def multiplicative_mean(
    f, n: int, beta: float, samples: int, rng: np.random.Generator, chunk: int = 20000
) -> tuple[float, float]:
    """Monte-Carlo mean and standard error of prod_j e^{f(theta_j)} for a real
    CircleFunction (or any callable of angle arrays)."""
    evaluate = f.value if hasattr(f, "value") else f
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        angles = sample_cbe_batch(n, beta, rng, m)
        vals = np.exp(np.sum(evaluate(angles), axis=1)).real
        total += float(np.sum(vals))
        total_sq += float(np.sum(vals**2))
        done += m
    mean = total / samples
    var = max(total_sq / samples - mean**2, 0.0)
    return mean, math.sqrt(var / samples)


# ---------------------------------------------------------------------------
# The monotone phase function of the recursion
# ---------------------------------------------------------------------------

def _blaschke_phase_fn(v: VerblunskySeq):
    pair = szego_recursion(v.alphas)
    phi_c = pair.phi
    star_c = pair.phi_star

    def b(theta):
        z = np.exp(1j * np.asarray(theta, dtype=float))
        num = z * np.polynomial.polynomial.polyval(z, phi_c)
        den = np.polynomial.polynomial.polyval(z, star_c)
        return num / den

    return b


def prufer_phase(
    v: VerblunskySeq, theta_grid: np.ndarray, max_depth: int = 48
) -> np.ndarray:
    """Continuous nondecreasing branch of arg(B(e^{i theta})/B(1)) along the
    grid, anchored at phase 0 for theta = 0.

    The grid must be sorted and contain 0.  Increments are resolved by
    bisecting any step whose principal argument reaches pi/2.
    """
    theta_grid = np.asarray(theta_grid, dtype=float)
    if np.any(np.diff(theta_grid) <= 0):
        raise ValueError("theta grid must be strictly increasing")
    zero_pos = np.flatnonzero(np.isclose(theta_grid, 0.0, atol=1e-15))
    if zero_pos.size != 1:
        raise ValueError("theta grid must contain 0 exactly once")
    b = _blaschke_phase_fn(v)

    def increment(t0, t1, b0, b1, depth) -> float:
        step = cmath.phase(complex(b1 / b0))
        if -1e-9 <= step < math.pi / 2:
            return max(step, 0.0)
        if depth >= max_depth:
            raise RuntimeError(f"phase jump on [{t0}, {t1}] not resolved by bisection")
        tm = 0.5 * (t0 + t1)
        bm = complex(b(tm))
        return increment(t0, tm, b0, bm, depth + 1) + increment(tm, t1, bm, b1, depth + 1)

    bvals = np.asarray(b(theta_grid), dtype=complex)
    steps = np.empty(theta_grid.size - 1)
    for i in range(theta_grid.size - 1):
        steps[i] = increment(
            theta_grid[i], theta_grid[i + 1], complex(bvals[i]), complex(bvals[i + 1]), 0
        )
    psi = np.concatenate(([0.0], np.cumsum(steps)))
    return psi - psi[int(zero_pos[0])]


def lattice_shift(v: VerblunskySeq) -> float:
    """Shift omega in [0, 2*pi) whose lattice preimages under the phase
    function reproduce the sample angles: the roots solve
    B(e^{i theta}) = conj(final), i.e. phase = -arg(final) - arg B(1)."""
    pair = szego_recursion(v.alphas)
    b1 = complex(
        np.polynomial.polynomial.polyval(1.0 + 0j, pair.phi)
        / np.polynomial.polynomial.polyval(1.0 + 0j, pair.phi_star)
    )
    return (-cmath.phase(v.final) - cmath.phase(b1)) % TWO_PI
