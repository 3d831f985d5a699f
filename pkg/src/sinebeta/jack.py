"""Exact symmetric-function algebra on the power-sum basis.

Conventions
-----------
A symmetric function is stored as a map {partition mu -> Fraction} giving its
coefficients on the power sums p_mu = prod_j p_{mu_j}.  The deformed scalar
product is <p_lam, p_mu> = delta_{lam,mu} * z_lam * alpha^{len(lam)} for a
fixed positive rational alpha.

Jack polynomials are normalized to be monic over the Schur basis
(J_lam = s_lam + dominance-lower Schur terms) and are computed by exact
Gram-Schmidt inside each degree block, in a fixed linear extension of
dominance order.  Tables are immutable once built and safe to share across
threads; build them eagerly via :func:`jack_basis` before fanning out.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .partitions import (
    check_partition,
    conjugate,
    dominance_leq,
    Dominance,
    enumerate_partitions,
    hook_products,
    weight,
    z_lambda,
)

Part = tuple[int, ...]


class JackComputationError(RuntimeError):
    """Raised when a Gram-Schmidt pivot degenerates (nonpositive norm)."""


class SymPoly:
    """A symmetric function with exact rational coefficients on {p_mu}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[Part, Fraction] | None = None):
        self.coeffs: dict[Part, Fraction] = {}
        if coeffs:
            for mu, c in coeffs.items():
                c = Fraction(c)
                if c:
                    self.coeffs[check_partition(mu)] = c

    @property
    def degree(self) -> int:
        return max((weight(mu) for mu in self.coeffs), default=0)

    def coeff(self, mu: Sequence[int]) -> Fraction:
        return self.coeffs.get(tuple(mu), Fraction(0))

    def __add__(self, other: "SymPoly") -> "SymPoly":
        out = dict(self.coeffs)
        for mu, c in other.coeffs.items():
            out[mu] = out.get(mu, Fraction(0)) + c
        return SymPoly(out)

    def __sub__(self, other: "SymPoly") -> "SymPoly":
        return self + other.scale(Fraction(-1))

    def scale(self, c: Fraction) -> "SymPoly":
        c = Fraction(c)
        return SymPoly({mu: v * c for mu, v in self.coeffs.items()})

    def __mul__(self, other: "SymPoly") -> "SymPoly":
        out: dict[Part, Fraction] = {}
        for mu, cm in self.coeffs.items():
            for nu, cn in other.coeffs.items():
                key = tuple(sorted(mu + nu, reverse=True))
                out[key] = out.get(key, Fraction(0)) + cm * cn
        return SymPoly(out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SymPoly) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        terms = ", ".join(f"{mu}: {c}" for mu, c in sorted(self.coeffs.items()))
        return f"SymPoly({{{terms}}})"


P_ONE = SymPoly({(): Fraction(1)})


def power_sum(mu: Sequence[int]) -> SymPoly:
    return SymPoly({check_partition(mu): Fraction(1)})


def inner_product_alpha(p: SymPoly, q: SymPoly, alpha: Fraction) -> Fraction:
    """Bilinear extension of <p_lam, p_mu> = delta * z_lam * alpha^len(lam)."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    total = Fraction(0)
    small, large = (p.coeffs, q.coeffs) if len(p.coeffs) <= len(q.coeffs) else (q.coeffs, p.coeffs)
    for mu, c in small.items():
        d = large.get(mu)
        if d is not None:
            total += c * d * z_lambda(mu) * alpha ** len(mu)
    return total


# ---------------------------------------------------------------------------
# Symmetric-group characters via border-strip (beta-set) recursion
# ---------------------------------------------------------------------------

def _beta_set(lam: Part, rows: int) -> tuple[int, ...]:
    # first-column hook lengths lam_i + rows - i, padded with a staircase
    return tuple(
        (lam[i] if i < len(lam) else 0) + rows - 1 - i for i in range(rows)
    )


def _partition_from_beta(beta: Sequence[int]) -> Part:
    # k-th smallest bead sits in the k-th row from the bottom
    parts = sorted((b - k for k, b in enumerate(sorted(beta))), reverse=True)
    return tuple(p for p in parts if p > 0)


@lru_cache(maxsize=None)
def sn_character(lam: Part, mu: Part) -> int:
    """Irreducible character value chi^lam at cycle type mu (border strips)."""
    if weight(lam) != weight(mu):
        raise ValueError("character needs |lam| = |mu|")
    if not lam:
        return 1
    r = mu[0]
    rest = mu[1:]
    rows = len(lam)
    beta = _beta_set(lam, rows)
    beta_set = set(beta)
    total = 0
    for b in beta:
        c = b - r
        if c < 0 or c in beta_set:
            continue
        height = sum(1 for x in beta if c < x < b)
        sub = _partition_from_beta(tuple(x for x in beta if x != b) + (c,))
        total += (-1) ** height * sn_character(sub, rest)
    return total


@lru_cache(maxsize=None)
def schur_in_powersums(lam: Part) -> SymPoly:
    """Schur function s_lam = sum_mu chi^lam_mu / z_mu * p_mu."""
    lam = check_partition(lam)
    coeffs: dict[Part, Fraction] = {}
    for mu in enumerate_partitions(weight(lam)):
        chi = sn_character(lam, mu)
        if chi:
            coeffs[mu] = Fraction(chi, z_lambda(mu))
    return SymPoly(coeffs)


# ---------------------------------------------------------------------------
# Jack polynomials by Gram-Schmidt over the Schur basis
# ---------------------------------------------------------------------------

def _order_lex(parts: list[Part]) -> list[Part]:
    # ascending lexicographic: a linear extension of dominance, smallest first
    return sorted(parts)


def _order_conjugate_lex(parts: list[Part]) -> list[Part]:
    # descending lex on conjugates: a different valid extension (order
    # independence of the resulting basis is property-tested)
    return sorted(parts, key=conjugate, reverse=True)


_ORDERS = {"lex": _order_lex, "conjugate-lex": _order_conjugate_lex}


class JackBasis:
    """Monic-over-Schur Jack polynomials at a fixed rational alpha.

    Degree blocks are built lazily and cached; the finished tables are
    read-only.  `order` fixes the linear extension of dominance used in the
    Gram-Schmidt sweep and does not affect the resulting basis.
    """

    def __init__(self, alpha: Fraction, order: str = "lex"):
        alpha = Fraction(alpha)
        if alpha <= 0:
            raise ValueError("alpha must be positive")
        if order not in _ORDERS:
            raise ValueError(f"unknown order {order!r}")
        self.alpha = alpha
        self.order = order
        self._jack: dict[Part, SymPoly] = {(): P_ONE}
        self._schur_coeffs: dict[Part, dict[Part, Fraction]] = {(): {(): Fraction(1)}}
        self._norm: dict[Part, Fraction] = {(): Fraction(1)}
        self._built = {0}

    def _build_degree(self, n: int) -> None:
        if n in self._built:
            return
        parts = _ORDERS[self.order](enumerate_partitions(n))
        schur = {mu: schur_in_powersums(mu) for mu in parts}
        gram = {
            (mu, nu): inner_product_alpha(schur[mu], schur[nu], self.alpha)
            for i, mu in enumerate(parts)
            for nu in parts[i:]
        }

        def g(mu: Part, nu: Part) -> Fraction:
            return gram[(mu, nu)] if (mu, nu) in gram else gram[(nu, mu)]

        done: list[Part] = []
        coord: dict[Part, dict[Part, Fraction]] = {}
        norms: dict[Part, Fraction] = {}
        for lam in parts:
            vec = {lam: Fraction(1)}
            for mu in done:
                # <s_lam, J_mu> in schur coordinates
                proj = sum((c * g(lam, nu) for nu, c in coord[mu].items()), Fraction(0))
                if proj:
                    c = proj / norms[mu]
                    for nu, cv in coord[mu].items():
                        vec[nu] = vec.get(nu, Fraction(0)) - c * cv
            nrm = sum(
                (cm * cn * g(mu, nu) for mu, cm in vec.items() for nu, cn in vec.items()),
                Fraction(0),
            )
            if nrm <= 0:
                raise JackComputationError(
                    f"degenerate Gram-Schmidt pivot at {lam} (alpha = {self.alpha})"
                )
            coord[lam] = {mu: c for mu, c in vec.items() if c}
            norms[lam] = nrm
            done.append(lam)

        for lam in parts:
            poly = SymPoly()
            for mu, c in coord[lam].items():
                poly = poly + schur[mu].scale(c)
            self._jack[lam] = poly
            self._schur_coeffs[lam] = coord[lam]
            self._norm[lam] = norms[lam]
        self._built.add(n)

    def jack(self, lam: Sequence[int]) -> SymPoly:
        lam = check_partition(lam)
        self._build_degree(weight(lam))
        return self._jack[lam]

    def norm(self, lam: Sequence[int]) -> Fraction:
        lam = check_partition(lam)
        self._build_degree(weight(lam))
        return self._norm[lam]

    def schur_coefficients(self, lam: Sequence[int]) -> dict[Part, Fraction]:
        """Expansion of J_lam over the Schur basis (unit coefficient on lam)."""
        lam = check_partition(lam)
        self._build_degree(weight(lam))
        return dict(self._schur_coeffs[lam])


_BASES: dict[tuple[Fraction, str], JackBasis] = {}


def jack_basis(alpha: Fraction, order: str = "lex") -> JackBasis:
    """Shared per-alpha table of Jack polynomials."""
    key = (Fraction(alpha), order)
    if key not in _BASES:
        _BASES[key] = JackBasis(*key)
    return _BASES[key]


def jack_in_powersums(lam: Sequence[int], alpha: Fraction) -> SymPoly:
    return jack_basis(alpha).jack(lam)


def jack_norm(lam: Sequence[int], alpha: Fraction) -> Fraction:
    """<J_lam, J_lam>_alpha; equals H(lam', a)H'(lam', a) * (p_1-coefficient)^2
    of the top power-sum term, which the tests cross-check exactly."""
    return jack_basis(alpha).norm(lam)


def jack_hook_norm_check(lam: Sequence[int], alpha: Fraction) -> bool:
    """Exact hook-product cross-check of the Gram-Schmidt norm:
    J_lam(p_1=1, p_{>=2}=0)^2 * H(lam', a) * H'(lam', a) == <J_lam, J_lam>."""
    lam = check_partition(lam)
    alpha = Fraction(alpha)
    basis = jack_basis(alpha)
    top = basis.jack(lam).coeff((1,) * weight(lam))
    h, hp = hook_products(conjugate(lam), alpha)
    return top * top * h * hp == basis.norm(lam)


def specialize(p: SymPoly, rho) -> complex | Fraction:
    """Evaluate the ring homomorphism sending p_j -> rho[j].

    `rho` is any mapping-like object supporting rho[j] for j >= 1; values may
    be Fractions (result stays exact) or complex numbers.  A missing value
    raises ValueError.
    """
    total = None
    for mu, c in p.coeffs.items():
        term = c
        for j in mu:
            try:
                v = rho[j]
            except (KeyError, IndexError) as exc:
                raise ValueError(f"specialization does not supply p_{j}") from exc
            term = term * v
        total = term if total is None else total + term
    if total is None:
        return Fraction(0)
    return total


# ---------------------------------------------------------------------------
# Serialization (partition -> numerator/denominator pairs)
# ---------------------------------------------------------------------------

def _part_key(mu: Part) -> str:
    return ",".join(str(p) for p in mu)


def _part_from_key(key: str) -> Part:
    return tuple(int(p) for p in key.split(",")) if key else ()


def sympoly_to_dict(p: SymPoly) -> dict[str, list[int]]:
    return {
        _part_key(mu): [c.numerator, c.denominator]
        for mu, c in sorted(p.coeffs.items())
    }


def sympoly_from_dict(d: Mapping[str, Sequence[int]]) -> SymPoly:
    return SymPoly({_part_from_key(k): Fraction(v[0], v[1]) for k, v in d.items()})


def jack_table_json(alpha: Fraction, max_degree: int) -> str:
    """Serialize the Jack tables up to max_degree as JSON text."""
    alpha = Fraction(alpha)
    basis = jack_basis(alpha)
    entries = {}
    for n in range(max_degree + 1):
        for lam in enumerate_partitions(n):
            poly = basis.jack(lam)
            nrm = basis.norm(lam)
            entries[_part_key(lam)] = {
                "powersum_coeffs": sympoly_to_dict(poly),
                "norm": [nrm.numerator, nrm.denominator],
            }
    doc = {
        "alpha": [alpha.numerator, alpha.denominator],
        "max_degree": max_degree,
        "jack": entries,
    }
    return json.dumps(doc, sort_keys=True, indent=1)


def jack_table_from_json(text: str) -> tuple[Fraction, dict[Part, tuple[SymPoly, Fraction]]]:
    doc = json.loads(text)
    alpha = Fraction(doc["alpha"][0], doc["alpha"][1])
    table = {}
    for key, entry in doc["jack"].items():
        poly = sympoly_from_dict(entry["powersum_coeffs"])
        nrm = Fraction(entry["norm"][0], entry["norm"][1])
        table[_part_from_key(key)] = (poly, nrm)
    return alpha, table


def is_dominance_triangular(lam: Part, schur_coeffs: Mapping[Part, Fraction]) -> bool:
    """True when the Schur expansion has unit top coefficient and support only
    strictly dominance-below lam."""
    for mu, c in schur_coeffs.items():
        if mu == lam:
            if c != 1:
                return False
        elif c and dominance_leq(mu, lam) != Dominance.LEQ:
            return False
    return True
