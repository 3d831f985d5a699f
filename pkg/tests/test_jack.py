from fractions import Fraction as F

import numpy as np
import pytest

from sinebeta.jack import (
    JackBasis,
    SymPoly,
    inner_product_alpha,
    is_dominance_triangular,
    jack_basis,
    jack_hook_norm_check,
    jack_in_powersums,
    jack_norm,
    jack_table_from_json,
    jack_table_json,
    power_sum,
    schur_in_powersums,
    sn_character,
    specialize,
    sympoly_from_dict,
    sympoly_to_dict,
)
from sinebeta.partitions import enumerate_partitions, weight, z_lambda

ALPHAS = [F(1, 2), F(1), F(2), F(3)]

# character table of S_4; classes ordered (1,1,1,1), (2,1,1), (2,2), (3,1), (4)
S4_TABLE = {
    (4,): [1, 1, 1, 1, 1],
    (3, 1): [3, 1, -1, 0, -1],
    (2, 2): [2, 0, 2, -1, 0],
    (2, 1, 1): [3, -1, -1, 0, 1],
    (1, 1, 1, 1): [1, -1, 1, 1, -1],
}
S4_CLASSES = [(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)]


def test_characters_match_s4_table():
    for lam, row in S4_TABLE.items():
        assert [sn_character(lam, mu) for mu in S4_CLASSES] == row


def test_schur_degree_two():
    half = F(1, 2)
    assert schur_in_powersums((2,)) == SymPoly({(1, 1): half, (2,): half})
    assert schur_in_powersums((1, 1)) == SymPoly({(1, 1): half, (2,): -half})
    assert schur_in_powersums((1,)) == power_sum((1,))


def bialternant(lam, xs):
    """Independent oracle: s_lam as a ratio of alternants at concrete points."""
    n = len(xs)
    lam = tuple(lam) + (0,) * (n - len(lam))
    num = np.linalg.det(np.array([[x ** (lam[j] + n - 1 - j) for j in range(n)] for x in xs]))
    den = np.linalg.det(np.array([[x ** (n - 1 - j) for j in range(n)] for x in xs]))
    return num / den


@pytest.mark.parametrize("lam", [(2,), (1, 1), (3, 1), (2, 2, 1), (4, 2), (3, 3, 1)])
def test_schur_vs_bialternant(lam):
    rng = np.random.default_rng(7)
    xs = rng.uniform(0.4, 1.6, size=max(len(lam) + 1, 4)) + 1j * rng.uniform(-0.3, 0.3, size=max(len(lam) + 1, 4))
    rho = {j: complex(np.sum(xs**j)) for j in range(1, weight(lam) + 1)}
    val = specialize(schur_in_powersums(lam), rho)
    ref = bialternant(lam, xs)
    assert abs(val - ref) < 1e-9 * max(1.0, abs(ref))


def test_schur_orthonormal_alpha_one():
    for n in range(7):
        parts = enumerate_partitions(n)
        for i, lam in enumerate(parts):
            for mu in parts[i:]:
                ip = inner_product_alpha(schur_in_powersums(lam), schur_in_powersums(mu), F(1))
                assert ip == (1 if lam == mu else 0)


def test_inner_product_examples():
    for alpha in ALPHAS:
        p1, p2 = power_sum((1,)), power_sum((2,))
        p21, p11 = power_sum((2, 1)), power_sum((1, 1))
        assert inner_product_alpha(p1, p1, alpha) == alpha
        assert inner_product_alpha(p2, p11, alpha) == 0
        assert inner_product_alpha(p21, p21, alpha) == 2 * alpha**2


def test_jack_degree_one_is_p1():
    for alpha in ALPHAS:
        assert jack_in_powersums((1,), alpha) == power_sum((1,))
        assert jack_norm((1,), alpha) == alpha


def test_jack_alpha_one_is_schur():
    for n in range(7):
        for lam in enumerate_partitions(n):
            assert jack_in_powersums(lam, F(1)) == schur_in_powersums(lam)
            assert jack_norm(lam, F(1)) == 1


def test_jack_degree_two_closed_form():
    # hand Gram-Schmidt: J_(2) = (p_1^2 + alpha p_2)/(1+alpha), J_(11) = s_(11)
    for alpha in ALPHAS:
        j2 = jack_in_powersums((2,), alpha)
        assert j2 == SymPoly({(1, 1): 1 / (1 + alpha), (2,): alpha / (1 + alpha)})
        assert jack_norm((2,), alpha) == 2 * alpha**2 / (1 + alpha)
        assert jack_in_powersums((1, 1), alpha) == schur_in_powersums((1, 1))
        assert jack_norm((1, 1), alpha) == alpha * (alpha + 1) / 2


def test_jack_orthogonality_and_triangularity_through_degree_six():
    for alpha in ALPHAS:
        basis = jack_basis(alpha)
        for n in range(7):
            parts = enumerate_partitions(n)
            for i, lam in enumerate(parts):
                assert is_dominance_triangular(lam, basis.schur_coefficients(lam))
                for mu in parts[i + 1 :]:
                    ip = inner_product_alpha(basis.jack(lam), basis.jack(mu), alpha)
                    assert ip == 0, (lam, mu, alpha)


def test_jack_hook_norm_cross_check():
    for alpha in ALPHAS:
        for n in range(7):
            for lam in enumerate_partitions(n):
                assert jack_hook_norm_check(lam, alpha), (lam, alpha)


def test_jack_basis_independent_of_sweep_order():
    for alpha in (F(1, 2), F(2)):
        a = JackBasis(alpha, order="lex")
        b = JackBasis(alpha, order="conjugate-lex")
        for n in range(6):
            for lam in enumerate_partitions(n):
                assert a.jack(lam) == b.jack(lam)


def test_cauchy_identity_small_degrees():
    # degree-by-degree reproducing-kernel identity in the tensor-square basis
    for alpha in ALPHAS:
        basis = jack_basis(alpha)
        for k in range(5):
            lhs: dict = {}
            for lam in enumerate_partitions(k):
                poly = basis.jack(lam)
                nrm = basis.norm(lam)
                for mu, cm in poly.coeffs.items():
                    for nu, cn in poly.coeffs.items():
                        key = (mu, nu)
                        lhs[key] = lhs.get(key, F(0)) + cm * cn / nrm
            lhs = {k2: v for k2, v in lhs.items() if v}
            rhs = {
                (mu, mu): 1 / (z_lambda(mu) * alpha ** len(mu))
                for mu in enumerate_partitions(k)
            }
            assert lhs == rhs


def test_specialize_examples_and_homomorphism():
    rho = {1: 3.0}
    assert specialize(power_sum((1,)) * power_sum((1,)), rho) == 9.0
    assert specialize(schur_in_powersums((2,)), {1: 1, 2: 0}) == F(1, 2)
    rng = np.random.default_rng(3)
    vals = {j: complex(rng.normal(), rng.normal()) for j in range(1, 7)}
    for lam, mu in [((2, 1), (3,)), ((1, 1), (2, 2)), ((3,), (1, 1, 1))]:
        p, q = schur_in_powersums(lam), schur_in_powersums(mu)
        lhs = specialize(p * q, vals)
        rhs = specialize(p, vals) * specialize(q, vals)
        assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(rhs))


def test_specialize_missing_value_raises():
    with pytest.raises(ValueError):
        specialize(power_sum((2,)), {1: 1.0})


def test_specialize_plancherel_homogeneity():
    # p_1 = sqrt(q), higher zero: picks out the p_1^k coefficient times q^{k/2}
    alpha = F(2)
    q = 0.49
    for lam in [(2,), (2, 1), (3, 1)]:
        k = weight(lam)
        top = jack_in_powersums(lam, alpha).coeff((1,) * k)
        val = specialize(jack_in_powersums(lam, alpha), {j: (q**0.5 if j == 1 else 0.0) for j in range(1, k + 1)})
        assert abs(val - float(top) * q ** (k / 2)) < 1e-14


GOLDEN_DEGREE_TWO_ALPHA_TWO = {
    "2": {"powersum_coeffs": {"1,1": [1, 3], "2": [2, 3]}, "norm": [8, 3]},
    "1,1": {"powersum_coeffs": {"1,1": [1, 2], "2": [-1, 2]}, "norm": [3, 1]},
}


def test_serialization_round_trip_and_golden_content():
    text = jack_table_json(F(2), 3)
    alpha, table = jack_table_from_json(text)
    assert alpha == F(2)
    for key, entry in GOLDEN_DEGREE_TWO_ALPHA_TWO.items():
        lam = tuple(int(x) for x in key.split(","))
        poly, nrm = table[lam]
        assert sympoly_to_dict(poly) == entry["powersum_coeffs"]
        assert [nrm.numerator, nrm.denominator] == entry["norm"]
    for lam in enumerate_partitions(3):
        poly, nrm = table[lam]
        assert poly == jack_in_powersums(lam, F(2))
        assert nrm == jack_norm(lam, F(2))


def test_sympoly_dict_round_trip():
    p = SymPoly({(3, 1): F(2, 7), (2, 2): F(-5, 3), (): F(1)})
    assert sympoly_from_dict(sympoly_to_dict(p)) == p
