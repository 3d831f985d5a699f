"""Integer partition combinatorics: enumeration, dominance order, hook products.

Partitions are plain tuples of weakly decreasing positive integers; the empty
partition is ``()``.  All arithmetic here is exact (ints / fractions.Fraction).
"""

from __future__ import annotations

import enum
from fractions import Fraction
from math import factorial
from typing import Iterator, Sequence


def check_partition(parts: Sequence[int]) -> tuple[int, ...]:
    """Validate and normalize a partition to a tuple."""
    lam = tuple(int(p) for p in parts)
    for i, p in enumerate(lam):
        if p < 1:
            raise ValueError(f"partition parts must be positive, got {lam}")
        if i + 1 < len(lam) and lam[i + 1] > p:
            raise ValueError(f"partition parts must be weakly decreasing, got {lam}")
    return lam


def weight(lam: Sequence[int]) -> int:
    return sum(lam)


def length(lam: Sequence[int]) -> int:
    return len(lam)


def enumerate_partitions(n: int) -> list[tuple[int, ...]]:
    """All partitions of n in reverse-lexicographic order, (n) first."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    out: list[tuple[int, ...]] = []

    def rec(remaining: int, cap: int, prefix: tuple[int, ...]) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(min(cap, remaining), 0, -1):
            rec(remaining - part, part, prefix + (part,))

    rec(n, n, ())
    return out


class Dominance(enum.Enum):
    """Relation of mu to nu in dominance order on partitions of equal weight."""

    LEQ = "less-or-equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


def dominance_leq(mu: Sequence[int], nu: Sequence[int]) -> Dominance:
    """Compare mu against nu in dominance order (partial sums)."""
    mu = check_partition(mu)
    nu = check_partition(nu)
    if weight(mu) != weight(nu):
        raise ValueError(f"dominance order needs equal weights: {mu} vs {nu}")
    le = ge = True
    sm = sn = 0
    for k in range(max(len(mu), len(nu))):
        sm += mu[k] if k < len(mu) else 0
        sn += nu[k] if k < len(nu) else 0
        if sm > sn:
            le = False
        if sm < sn:
            ge = False
    if le:
        return Dominance.LEQ
    if ge:
        return Dominance.GREATER
    return Dominance.INCOMPARABLE


def conjugate(lam: Sequence[int]) -> tuple[int, ...]:
    """Transposed Young diagram."""
    lam = tuple(lam)
    if not lam:
        return ()
    cols = [0] * lam[0]
    for p in lam:
        for j in range(p):
            cols[j] += 1
    return tuple(cols)


def cells(lam: Sequence[int]) -> Iterator[tuple[int, int]]:
    """Diagram cells (i, j), 1-based, row i of length lam[i-1]."""
    for i, p in enumerate(lam, start=1):
        for j in range(1, p + 1):
            yield i, j


def z_lambda(lam: Sequence[int]) -> int:
    """Centralizer size prod_i i^{m_i} m_i!, m_i = multiplicity of part i."""
    lam = check_partition(lam)
    mult: dict[int, int] = {}
    for p in lam:
        mult[p] = mult.get(p, 0) + 1
    z = 1
    for part, m in mult.items():
        z *= part**m * factorial(m)
    return z


def hook_products(lam: Sequence[int], theta: Fraction) -> tuple[Fraction, Fraction]:
    """Upper/lower hook products (H, H'), H = prod(arm + leg*theta + 1),
    H' = prod(arm + leg*theta + theta) over the diagram cells."""
    lam = check_partition(lam)
    theta = Fraction(theta)
    if theta <= 0:
        raise ValueError("theta must be positive")
    conj = conjugate(lam)
    h = hp = Fraction(1)
    for i, j in cells(lam):
        arm = lam[i - 1] - j
        leg = conj[j - 1] - i
        h *= arm + leg * theta + 1
        hp *= arm + leg * theta + theta
    return h, hp


def finite_n_factor(lam: Sequence[int], alpha: Fraction, n: int) -> Fraction:
    """Finite-n correction prod over cells of (1 - (alpha-1)/(n + j*alpha - i)).

    Requires length(lam) <= n so every denominator is positive; equals 1 at
    alpha = 1 and lies in (0, 1] for alpha >= 1.
    """
    lam = check_partition(lam)
    alpha = Fraction(alpha)
    if n < 1:
        raise ValueError("n must be a positive integer")
    if len(lam) > n:
        raise ValueError(f"partition length {len(lam)} exceeds n = {n}")
    out = Fraction(1)
    for i, j in cells(lam):
        out *= 1 - (alpha - 1) / (n + j * alpha - i)
    return out
