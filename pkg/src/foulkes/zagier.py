"""Cycle counts of tau sigma for tau uniform in a class of S_n and sigma a fixed n-cycle."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .characters import char_poly_of_class, eps_coeff_matrix, hook_eps_values_sn
from .errors import ConsistencyError
from .groups import Permutation, WreathElement, WreathType, group_table, partitions
from .numerics import TruncatedSeries, rational_to_str
from .report import Check


def _normalize(K: Sequence[int]) -> tuple[int, ...]:
    K = tuple(sorted((int(p) for p in K), reverse=True))
    if not K or any(p <= 0 for p in K):
        raise ValueError(f"not a partition: {K}")
    return K


@dataclass(frozen=True)
class CycleCountDistribution:
    n: int
    K: tuple[int, ...]
    p: tuple[Fraction, ...]  # p[i - 1] = P(tau sigma has i cycles)

    def __post_init__(self):
        if len(self.p) != self.n:
            raise ValueError("need one probability per cycle count 1..n")
        if any(v < 0 for v in self.p) or sum(self.p) != 1:
            raise ConsistencyError(f"not a probability vector: {self.p}")

    def at(self, i: int) -> Fraction:
        return self.p[i - 1]

    def to_json(self) -> dict:
        return {"n": self.n, "class": list(self.K), "p": {str(i + 1): rational_to_str(v) for i, v in enumerate(self.p)}}


def parity_class(K: Sequence[int]) -> int:
    """ell(tau sigma) mod 2, read off the signs of tau and sigma."""
    return (len(K) - sum(K) + 1) % 2


def p_distribution(K: Sequence[int]) -> CycleCountDistribution:
    """Solve sum_i p_i phi(C_i) = wp(K, X) / (1 - X) with the inverse table."""
    K = _normalize(K)
    n = sum(K)
    lam = eps_coeff_matrix(1, n)
    e = [(-1) ** k * v for k, v in enumerate(hook_eps_values_sn(K))]
    p = [Fraction(0)] * n
    for j in range(n):
        p[n - j - 1] = sum((lam[k][j] * e[k] for k in range(n)), Fraction(0))
    parity = parity_class(K)
    for i, v in enumerate(p, start=1):
        if i % 2 != parity and v != 0:
            raise ConsistencyError(f"p_{i} = {v} breaks the parity constraint")
    return CycleCountDistribution(n, K, tuple(p))


def standard_ncycle(n: int) -> Permutation:
    """sigma = (1 2 ... n)."""
    return Permutation(tuple(list(range(2, n + 1)) + [1]))


def p_bruteforce(K: Sequence[int], sigma: Permutation | None = None, cap: int | None = None) -> CycleCountDistribution:
    """Tally ell(tau sigma) over the whole class."""
    K = _normalize(K)
    n = sum(K)
    sigma = standard_ncycle(n) if sigma is None else sigma
    if sigma.n != n or sigma.cycle_type() != (n,):
        raise ValueError("sigma must be an n-cycle")
    G = group_table(1, n, cap)
    members = G.members(WreathType((K,)))
    s = G.index_of(WreathElement(sigma, (0,) * n, 1))
    ells = G.ell[G.right_mul(s, members)]
    counts = np.bincount(ells, minlength=n + 1)
    return CycleCountDistribution(n, K, tuple(Fraction(int(counts[i]), len(members)) for i in range(1, n + 1)))


def P_series(i: int, order: int) -> TruncatedSeries:
    """sum_{k >= 1} k^i X^(k-1)."""
    return TruncatedSeries((k**i for k in range(1, order + 1)), order)


def verify_zagier_identity(K: Sequence[int], order: int | None = None) -> list[Check]:
    """sum_i p_i(K) P_i(X) = wp(K, X) / (1 - X)^(n+2), coefficientwise to the given order."""
    K = _normalize(K)
    n = sum(K)
    order = 2 * n + 4 if order is None else order
    if order < n + 2:
        raise ValueError(f"truncation order {order} below n + 2 = {n + 2}")
    dist = p_distribution(K)
    lhs = TruncatedSeries((), order)
    for i, p in enumerate(dist.p, start=1):
        lhs = lhs + P_series(i, order) * p
    rhs = TruncatedSeries.from_polynomial(char_poly_of_class(K), order) * TruncatedSeries.geometric(order) ** (n + 2)
    bad = [k for k in range(order) if lhs.coeff(k) != rhs.coeff(k)]
    detail = f"order {order}" + (f", first mismatch at X^{bad[0]}" if bad else "")
    return [Check(f"series identity for class {','.join(map(str, K))}", not bad, detail)]


def all_classes(n: int) -> list[tuple[int, ...]]:
    return list(partitions(n))
