"""Descent sums and Eulerian idempotents in the rational group algebra."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

from .characters import eps_coeff_matrix
from .groups import GroupTable, group_table
from .numerics import Scalar, as_rational, identity_matrix, matmul, transpose
from .products import c_spectral
from .report import Check
from .tables import phi_table, top_index


class GroupAlgebraElement:
    """Dense sum over the group: integer numerators over one positive denominator."""

    __slots__ = ("group", "num", "den")

    def __init__(self, group: GroupTable, num: np.ndarray, den: int = 1):
        if den <= 0:
            raise ValueError("denominator must be positive")
        num = np.asarray(num, dtype=object)
        if num.shape != (group.order,):
            raise ValueError("coefficient vector does not match the group order")
        g = den
        for v in num:
            if v:
                g = gcd(g, int(v))
                if g == 1:
                    break
        self.group = group
        self.num = num // g if g > 1 else num
        self.den = den // g

    @classmethod
    def zero(cls, group: GroupTable) -> "GroupAlgebraElement":
        return cls(group, np.zeros(group.order, dtype=object))

    @classmethod
    def identity(cls, group: GroupTable) -> "GroupAlgebraElement":
        num = np.zeros(group.order, dtype=object)
        num[group.identity] = 1
        return cls(group, num)

    @classmethod
    def indicator(cls, group: GroupTable, mask: np.ndarray) -> "GroupAlgebraElement":
        return cls(group, np.where(mask, 1, 0).astype(object))

    @classmethod
    def combination(cls, group: GroupTable, coeffs: Sequence[Scalar], elements: Sequence["GroupAlgebraElement"]):
        out = cls.zero(group)
        for c, e in zip(coeffs, elements):
            out = out + e * as_rational(c)
        return out

    @property
    def r(self) -> int:
        return self.group.r

    @property
    def n(self) -> int:
        return self.group.n

    def coeff(self, idx: int) -> Fraction:
        return Fraction(int(self.num[idx]), self.den)

    def coefficients(self) -> list[Fraction]:
        return [Fraction(int(v), self.den) for v in self.num]

    def is_zero(self) -> bool:
        return not any(self.num)

    def _same(self, other: "GroupAlgebraElement") -> None:
        if other.group is not self.group:
            raise ValueError("elements of different group algebras")

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._same(other)
        d = lcm(self.den, other.den)
        return GroupAlgebraElement(self.group, self.num * (d // self.den) + other.num * (d // other.den), d)

    def __neg__(self) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.group, -self.num, self.den)

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + (-other)

    def __mul__(self, other) -> "GroupAlgebraElement":
        if isinstance(other, GroupAlgebraElement):
            return self.convolve(other)
        c = as_rational(other)
        return GroupAlgebraElement(self.group, self.num * c.numerator, self.den * c.denominator)

    def __rmul__(self, other) -> "GroupAlgebraElement":
        return self * other

    def convolve(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        """(ab)(g) = sum_h a(h) b(h^-1 g)."""
        self._same(other)
        T = self.group.multiplication_table()
        out = np.zeros(self.group.order, dtype=object)
        for h in np.flatnonzero(self.num):
            out[T[h]] += self.num[h] * other.num
        return GroupAlgebraElement(self.group, out, self.den * other.den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return other.group is self.group and self.den == other.den and bool(np.all(self.num == other.num))

    __hash__ = None

    def __repr__(self) -> str:
        return f"GroupAlgebraElement(G({self.r},1,{self.n}), support={int(np.count_nonzero(self.num))}, den={self.den})"


def descent_sums(r: int, n: int, cap: int | None = None) -> list[GroupAlgebraElement]:
    """D_i = sum of the elements with i descents."""
    G = group_table(r, n, cap)
    return [GroupAlgebraElement.indicator(G, G.des == i) for i in range(top_index(r, n) + 1)]


def eulerian_idempotents(r: int, n: int, cap: int | None = None) -> list[GroupAlgebraElement]:
    """[E_0, ..., E_top], read off the binomial generating identity in the descent sums.

    E_t is the coefficient of X^(t+1) (r = 1) or X^t (r >= 2) in
    sum_i C((X-1)/r + n - i, n) D_i.
    """
    G = group_table(r, n, cap)
    D = descent_sums(r, n, cap)
    lam = eps_coeff_matrix(r, n)
    shift = 1 if r == 1 else 0
    out = []
    for t in range(top_index(r, n) + 1):
        col = n - shift - t  # column of X^(t + shift)
        out.append(GroupAlgebraElement.combination(G, [lam[i][col] for i in range(len(D))], D))
    return out


def expand_in_descent_basis(x: GroupAlgebraElement) -> list[Fraction] | None:
    """Coefficients of x in the D_i, or None when x is not constant on descent classes."""
    G = x.group
    out = []
    for k in range(top_index(G.r, G.n) + 1):
        vals = set(x.num[G.des == k].tolist())
        if len(vals) != 1:
            return None
        out.append(Fraction(int(vals.pop()), x.den))
    return out


def projector_rank(e: GroupAlgebraElement) -> Fraction:
    """Trace of left multiplication by e on the group algebra: |G| times the identity coefficient."""
    return e.group.order * e.coeff(e.group.identity)


def verify_transition(r: int, n: int, cap: int | None = None) -> list[Check]:
    """Named pass/fail checks for the descent-sum and idempotent identities."""
    G = group_table(r, n, cap)
    D = descent_sums(r, n, cap)
    E = eulerian_idempotents(r, n, cap)
    table = phi_table(r, n)
    m = len(D)
    shift = 1 if r == 1 else 0
    checks = []

    bad = [(i, j) for i in range(m) for j in range(m) if E[i] * E[j] != (E[i] if i == j else GroupAlgebraElement.zero(G))]
    checks.append(Check("idempotents orthogonal", not bad, f"failing pairs {bad}" if bad else ""))

    total = GroupAlgebraElement.zero(G)
    for e in E:
        total = total + e
    checks.append(Check("idempotents sum to 1", total == GroupAlgebraElement.identity(G)))

    # D_i = sum_j phi_i(C_{n-j}) E_{n - shift - j}
    bad = []
    for i in range(m):
        rebuilt = GroupAlgebraElement.combination(G, table.entries[i], [E[n - shift - j] for j in range(m)])
        if rebuilt != D[i]:
            bad.append(i)
    checks.append(Check("descent sums from idempotents", not bad, f"failing rows {bad}" if bad else ""))

    prod = matmul(eps_coeff_matrix(r, n), transpose(table.as_lists()))
    checks.append(Check("eps matrix inverts table transpose", prod == identity_matrix(m)))

    c = c_spectral(r, n)
    bad = []
    for i in range(m):
        for j in range(m):
            coeffs = expand_in_descent_basis(D[i] * D[j])
            if coeffs is None or coeffs != [Fraction(c[i, j, k]) for k in range(m)]:
                bad.append((i, j))
    checks.append(Check("descent span closed with product constants", not bad, f"failing pairs {bad}" if bad else ""))

    ranks = [projector_rank(e) for e in E]
    ok = all(v.denominator == 1 and v > 0 for v in ranks)
    checks.append(Check("projector ranks positive integers", ok, ",".join(str(v) for v in ranks)))
    return checks
