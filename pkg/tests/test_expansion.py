import cmath
import math
from fractions import Fraction as F

import numpy as np
import pytest

from sinebeta.expansion import (
    CircleFunction,
    JackMeasure,
    Specialization,
    cbe_error_bound,
    expected_partition_size,
    gessel_expectation,
    jack_measure_pmf,
    limit_laplace,
    plancherel_pmf,
    sobolev_seminorm_circle,
    subgauss_bound,
)
from sinebeta.jack import jack_basis, specialize
from sinebeta.partitions import conjugate, enumerate_partitions, hook_products, weight

F1 = CircleFunction.from_cosines({1: 0.2})
F2 = CircleFunction.from_cosines({1: 0.1, 2: 0.1})
ZERO = CircleFunction({})


# ---------------------------------------------------------------------------
# Independent oracles for the expansion
# ---------------------------------------------------------------------------

def quadrature_expectation(f: CircleFunction, beta: float, n: int, points: int = 1201):
    """Direct quadrature of E prod e^{f(theta_j)} for n = 1, 2."""
    theta = np.linspace(-np.pi, np.pi, points)
    vals = np.exp(f.value(theta))
    if n == 1:
        return np.trapezoid(vals, theta) / (2 * np.pi)
    t1 = theta[:, None]
    t2 = theta[None, :]
    density = np.abs(np.exp(1j * t1) - np.exp(1j * t2)) ** beta
    num = np.trapezoid(np.trapezoid(density * vals[:, None] * vals[None, :], theta), theta)
    den = np.trapezoid(np.trapezoid(density, theta), theta)
    return num / den


def toeplitz_expectation(f: CircleFunction, n: int, modes: int = 512):
    """beta = 2 oracle: E prod e^f equals the n x n Toeplitz determinant of e^f."""
    theta = 2 * np.pi * np.arange(modes) / modes
    g = np.exp(f.value(theta))
    ghat = np.fft.fft(g) / modes  # ghat[k] = (1/2pi) int g e^{-ik theta}
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % modes
    return complex(np.linalg.det(ghat[idx]))


def test_sobolev_seminorm_circle_examples():
    const = CircleFunction({0: 3.0})
    assert sobolev_seminorm_circle(const, 0.5) == 0.0
    two_cos = CircleFunction.from_cosines({1: 1.0})
    assert sobolev_seminorm_circle(two_cos, 0.5) == pytest.approx(2.0)
    assert sobolev_seminorm_circle(two_cos, 1.0) == pytest.approx(2.0)


def test_gessel_zero_function_trivial():
    for n in (1, 5, 20):
        value, tail = gessel_expectation(ZERO, F(2), n)
        assert value == 1.0
        assert tail == 0.0


def test_gessel_rejects_alpha_below_one():
    with pytest.raises(ValueError):
        gessel_expectation(F1, F(1, 2), 4)


def test_gessel_matches_single_point_quadrature():
    # one circle point is uniform for every beta, so alpha only enters the
    # expansion's internals; the answer is the Bessel-type integral of e^f
    ref = quadrature_expectation(F1, 2.0, 1)
    for alpha in (F(1), F(2), F(3)):
        value, tail = gessel_expectation(F1, alpha, 1, degree_cap=12)
        assert value.imag == pytest.approx(0.0, abs=1e-12)
        assert abs(value.real - ref) <= 1e-8 + tail


@pytest.mark.parametrize("beta", [1.0, 2.0])
def test_gessel_matches_two_point_quadrature(beta):
    alpha = F(2) if beta == 1.0 else F(1)
    for f in (F1, F2):
        ref = quadrature_expectation(f, beta, 2)
        value, tail = gessel_expectation(f, alpha, 2, degree_cap=12)
        assert abs(value.real - ref) <= 2e-4 + tail


@pytest.mark.parametrize("n", [3, 4, 6])
def test_gessel_matches_toeplitz_determinant_at_beta_two(n):
    for f in (F1, F2):
        ref = toeplitz_expectation(f, n)
        value, tail = gessel_expectation(f, F(1), n, degree_cap=12)
        assert abs(value - ref) <= 1e-10 + tail


def test_gessel_approaches_strong_szego_limit():
    f = CircleFunction.from_cosines({1: 0.3, 2: 0.1})
    lim = limit_laplace(f, 2.0)
    value, tail = gessel_expectation(f, F(1), 40, degree_cap=10)
    assert abs(value - lim) < 1e-9 + tail


def test_limit_laplace_examples():
    assert limit_laplace(ZERO, 2.0) == 1.0
    for c in (0.2, 0.5):
        f = CircleFunction.from_cosines({1: c})
        assert limit_laplace(f, 2.0) == pytest.approx(math.exp(c**2))
        assert limit_laplace(f, 1.0) == pytest.approx(math.exp(2 * c**2))


def test_subgauss_bound_examples():
    assert subgauss_bound(ZERO, 2.0) == 1.0
    two_cos = CircleFunction.from_cosines({1: 1.0})
    assert subgauss_bound(two_cos, 2.0) == pytest.approx(math.e)
    assert subgauss_bound(two_cos, 1.0) == pytest.approx(math.e**2)
    with pytest.raises(ValueError):
        subgauss_bound(CircleFunction({1: 1.0}), 2.0)


def test_cbe_error_bound_examples():
    assert cbe_error_bound(ZERO, 2.0, 4) == 0.0
    two_cos = CircleFunction.from_cosines({1: 1.0})
    assert cbe_error_bound(two_cos, 2.0, 4) == pytest.approx(1.0)
    assert cbe_error_bound(two_cos, 2.0, 8) == pytest.approx(0.5)
    # beta = 1, n = 4: (8 / (1 * 4)) * exp(2 - 2) * 2 = 4
    assert cbe_error_bound(two_cos, 1.0, 4) == pytest.approx(4.0)


def test_jack_measure_empty_partition_and_positivity():
    m = JackMeasure.from_circle_function(F2, F(2), 8)
    assert jack_measure_pmf(m, ()) == pytest.approx(abs(1.0 / m.z))
    for lam in m.weights:
        assert m.pmf(lam) >= -1e-15
    total = m.truncated_mass() + m.tail_mass()
    assert total == pytest.approx(1.0, abs=1e-12)
    assert 0 <= m.tail_mass() < 1e-6


def test_jack_measure_cap_enforced():
    m = JackMeasure.from_circle_function(F1, F(2), 4)
    with pytest.raises(ValueError):
        m.pmf((5,))


def test_plancherel_specialized_measure_matches_hooks_exactly():
    # exact identity: J_lam(p1=sqrt(q))^2 / <J,J> * H(lam',a) H'(lam',a) = q^{|lam|}
    q = F(9, 16)
    rho = Specialization.plancherel(q)
    for alpha in (F(1, 2), F(1), F(2)):
        basis = jack_basis(alpha)
        for n in range(6):
            for lam in enumerate_partitions(n):
                w = specialize(basis.jack(lam), rho) ** 2 / basis.norm(lam)
                h, hp = hook_products(conjugate(lam), alpha)
                assert w * h * hp == q ** weight(lam), (lam, alpha)


def test_plancherel_specialized_measure_poissonizes():
    # pmf(lam) = e^{-q/alpha} (q/alpha)^{|lam|} |lam|! alpha^{|lam|} /
    #            (H(lam',a) H'(lam',a)) / |lam|!  -- checked in float form
    q = 0.49
    alpha = F(2)
    rho = Specialization.plancherel(q)
    m = JackMeasure.build(rho, rho, alpha, 6)
    for lam in [(), (1,), (2,), (1, 1), (2, 1), (3, 1)]:
        h, hp = hook_products(conjugate(lam), alpha)
        expected = math.exp(-q / 2) * q ** weight(lam) / float(h * hp)
        assert m.pmf(lam) == pytest.approx(expected, rel=1e-12)
    # degree-n slices are Poisson(q/alpha) weights
    for n in range(5):
        slice_sum = sum(m.pmf(lam) for lam in enumerate_partitions(n))
        ref = math.exp(-q / 2) * (q / 2) ** n / math.factorial(n)
        assert slice_sum == pytest.approx(ref, rel=1e-12)


def test_plancherel_pmf_examples_and_normalization():
    assert plancherel_pmf((), F(2)) == 1
    for alpha in (F(1, 2), F(1), F(2)):
        assert plancherel_pmf((1,), alpha) == 1
        for n in range(1, 7):
            assert sum(plancherel_pmf(lam, alpha) for lam in enumerate_partitions(n)) == 1


def test_expected_partition_size():
    value, target = expected_partition_size(ZERO, F(2))
    assert value == 0.0 and target == 0.0
    for c in (0.2, 0.3):
        f = CircleFunction.from_cosines({1: c})
        _, target = expected_partition_size(f, F(1))
        assert target == pytest.approx(c**2)
    f = CircleFunction.from_cosines({1: 0.3})
    value, target = expected_partition_size(f, F(2), degree_cap=8)
    assert abs(value - target) < 1e-4


def test_specialization_from_circle_values():
    rho = Specialization.from_circle(F2, F(2), +1)
    assert rho[1] == pytest.approx(2 * 1 * 0.1)
    assert rho[2] == pytest.approx(2 * 2 * 0.1)
    assert rho[5] == 0j
    strict = Specialization({1: 1.0}, default=None)
    with pytest.raises(KeyError):
        strict[3]
