"""Foulkes character tables of S_n and G(r,1,n), built by independent routes.

Column ``j`` of a table holds values on the length class ``C_{n-j}``, so
lengths decrease left to right and column 0 is the identity class.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Sequence

import numpy as np

from .characters import eps_coeff_matrix
from .errors import ConsistencyError
from .groups import group_table, length_range
from .numerics import (
    Polynomial,
    Scalar,
    TruncatedSeries,
    apply_euler_operator,
    as_rational,
    binom_shift_poly,
    rational_to_str,
)


def top_index(r: int, n: int) -> int:
    """Largest Foulkes index: n - 1 for S_n, n otherwise."""
    return n - 1 if r == 1 else n


@dataclass(frozen=True)
class LengthClassFunction:
    """A class function depending only on ell; ``values[t]`` is the value at ell = low + t."""

    r: int
    n: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(as_rational(v) for v in self.values)
        if len(vals) != len(length_range(self.r, self.n)):
            raise ValueError(f"expected {len(length_range(self.r, self.n))} values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    @property
    def low(self) -> int:
        return 1 if self.r == 1 else 0

    @property
    def lengths(self) -> list[int]:
        return list(range(self.low, self.n + 1))

    def at(self, ell: int) -> Fraction:
        return self.values[ell - self.low]

    def columns(self) -> list[Fraction]:
        """Values in table-column order (ell descending)."""
        return list(reversed(self.values))

    @classmethod
    def from_columns(cls, r: int, n: int, cols: Sequence[Scalar]) -> "LengthClassFunction":
        return cls(r, n, tuple(reversed([as_rational(c) for c in cols])))

    @classmethod
    def from_function(cls, r: int, n: int, f: Callable[[int], Scalar]) -> "LengthClassFunction":
        low = 1 if r == 1 else 0
        return cls(r, n, tuple(as_rational(f(l)) for l in range(low, n + 1)))

    @classmethod
    def power(cls, r: int, n: int, base: Scalar) -> "LengthClassFunction":
        """The character ell -> base**ell."""
        return cls.from_function(r, n, lambda l: as_rational(base) ** l)

    def _same_group(self, other: "LengthClassFunction") -> None:
        if (self.r, self.n) != (other.r, other.n):
            raise ValueError("class functions on different groups")

    def __add__(self, other: "LengthClassFunction") -> "LengthClassFunction":
        self._same_group(other)
        return LengthClassFunction(self.r, self.n, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "LengthClassFunction") -> "LengthClassFunction":
        self._same_group(other)
        return LengthClassFunction(self.r, self.n, tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, other) -> "LengthClassFunction":
        if isinstance(other, LengthClassFunction):
            self._same_group(other)
            return LengthClassFunction(self.r, self.n, tuple(a * b for a, b in zip(self.values, other.values)))
        c = as_rational(other)
        return LengthClassFunction(self.r, self.n, tuple(a * c for a in self.values))

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {"lengths": self.lengths, "values": [rational_to_str(v) for v in self.values]}


@dataclass(frozen=True)
class FoulkesTable:
    r: int
    n: int
    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return top_index(self.r, self.n) + 1

    @property
    def column_lengths(self) -> list[int]:
        return length_range(self.r, self.n)

    @property
    def degrees(self) -> list[int]:
        return [row[0] for row in self.entries]

    def row(self, i: int) -> LengthClassFunction:
        return LengthClassFunction.from_columns(self.r, self.n, self.entries[i])

    def rows(self) -> list[LengthClassFunction]:
        return [self.row(i) for i in range(self.size)]

    def value(self, i: int, ell: int) -> int:
        return self.entries[i][self.n - ell]

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def transpose(self) -> list[list[int]]:
        return [list(col) for col in zip(*self.entries)]

    def to_json(self) -> dict:
        return {"r": self.r, "n": self.n, "column_lengths": self.column_lengths, "rows": self.as_lists()}

    def to_csv(self) -> str:
        return "\n".join(",".join(str(v) for v in row) for row in self.entries) + "\n"


def _check_group(r: int, n: int) -> None:
    if r < 1 or n < 1:
        raise ValueError(f"invalid group G({r},1,{n}): need r >= 1 and n >= 1")


def foulkes_value(r: int, n: int, i: int, ell: int) -> int:
    """sum_u (-1)^(i-u) C(n+1, i-u) (r u + 1)^ell."""
    return sum((-1) ** (i - u) * comb(n + 1, i - u) * (r * u + 1) ** ell for u in range(i + 1))


@lru_cache(maxsize=None)
def phi_table(r: int, n: int) -> FoulkesTable:
    """Closed-form table."""
    _check_group(r, n)
    lengths = length_range(r, n)
    entries = tuple(
        tuple(foulkes_value(r, n, i, l) for l in lengths) for i in range(top_index(r, n) + 1)
    )
    return FoulkesTable(r, n, entries)


@lru_cache(maxsize=None)
def eulerian_numbers(r: int, n: int) -> tuple[int, ...]:
    """Descent counts of G(r,1,n) from the insertion recurrence.

    d(n, k) = (r k + 1) d(n-1, k) + (r (n - k) + r - 1) d(n-1, k-1), with
    r = 1 giving the classical Eulerian numbers.
    """
    if n == 0:
        return (1,)
    if r == 1 and n == 1:
        return (1,)
    prev = eulerian_numbers(r, n - 1)
    size = n if r == 1 else n + 1

    def old(k):
        return prev[k] if 0 <= k < len(prev) else 0

    return tuple((r * k + 1) * old(k) + (r * (n - k) + r - 1) * old(k - 1) for k in range(size))


def descent_histogram(r: int, n: int, cap: int | None = None) -> tuple[int, ...]:
    """Descent counts by enumerating the group."""
    G = group_table(r, n, cap)
    counts = Counter(int(d) for d in G.des)
    return tuple(counts.get(k, 0) for k in range(top_index(r, n) + 1))


def validate_descent_order(r: int, n: int, cap: int | None = None) -> None:
    """Raise unless the descent histogram equals the Foulkes degrees."""
    hist = descent_histogram(r, n, cap)
    degrees = tuple(phi_table(r, n).degrees)
    if hist != degrees:
        raise ConsistencyError(
            f"descent order disagrees with Foulkes degrees for G({r},1,{n}): {hist} vs {degrees}"
        )


@lru_cache(maxsize=None)
def _recursive_entries(r: int, n: int) -> tuple[tuple[int, ...], ...]:
    if (r == 1 and n == 1) or (r > 1 and n == 0):
        return ((1,),)
    old = _recursive_entries(r, n - 1)
    size = top_index(r, n) + 1
    degrees = eulerian_numbers(r, n)

    def old_at(i, j):
        return old[i][j] if 0 <= i < len(old) else 0

    rows = []
    for i in range(size):
        # new column j (ell = n - j) comes from old column j - 1 (same ell)
        row = [degrees[i]] + [old_at(i, j - 1) - old_at(i - 1, j - 1) for j in range(1, size)]
        rows.append(tuple(row))
    return tuple(rows)


def phi_table_recursive(r: int, n: int) -> FoulkesTable:
    """Table from the size n - 1 table by the row recurrence; identity column from Eulerian numbers."""
    _check_group(r, n)
    return FoulkesTable(r, n, _recursive_entries(r, n))


def decompose_length_function(theta: LengthClassFunction) -> list[Fraction]:
    """Foulkes coefficients <theta, eps_i> / eps_i(1), so theta = sum_i coeff_i phi_i."""
    lam = eps_coeff_matrix(theta.r, theta.n)
    cols = theta.columns()
    return [sum((row[j] * cols[j] for j in range(len(cols))), Fraction(0)) for row in lam]


def reconstruct(r: int, n: int, coeffs: Sequence[Scalar]) -> LengthClassFunction:
    table = phi_table(r, n)
    cols = [sum((as_rational(coeffs[i]) * table.entries[i][j] for i in range(table.size)), Fraction(0))
            for j in range(table.size)]
    return LengthClassFunction.from_columns(r, n, cols)


def generating_row(r: int, n: int, ell: int) -> Polynomial:
    """sum_i phi_i(C_ell) X^i read from the closed-form table."""
    table = phi_table(r, n)
    return Polynomial(table.value(i, ell) for i in range(table.size))


def df_generating_row(r: int, n: int, j: int) -> Polynomial:
    """sum_i phi_i(C_j) X^i, checked against the Euler-operator formula.

    For r = 1 that is (1-X)^(n+1) (1 + X d/dX)^j 1/(1-X).  For r >= 2 the
    operator acts in Y on 1/(1-Y^r), the product with (1-Y^r)^(n+1) has to be a
    polynomial in Y^r, and substituting X = Y^r gives the row.
    """
    _check_group(r, n)
    low = 1 if r == 1 else 0
    if not low <= j <= n:
        raise ValueError(f"class index {j} outside {low}..{n}")
    row = generating_row(r, n, j)
    order = r * (2 * n + 4)
    series = apply_euler_operator(TruncatedSeries.geometric(order, step=r), j)
    factor = (1 - Polynomial.monomial(r)) ** (n + 1)
    product = TruncatedSeries.from_polynomial(factor, order) * series
    coeffs = product.coeffs
    if any(c != 0 for d, c in enumerate(coeffs) if d % r != 0 or d > r * n):
        raise ConsistencyError(f"operator formula is not a polynomial of degree <= n in Y^{r}")
    formula = Polynomial(coeffs[d] for d in range(0, order, r))
    if formula != row:
        raise ConsistencyError(f"generating row mismatch at ell={j}: {row} vs {formula}")
    return row


def inversion_transform(a: Sequence[Scalar], direction: str, r: int = 1) -> list[Fraction]:
    """Convert between the two sides of the binomial/Foulkes inversion.

    ``direction="forward"`` maps (a_i) to (b_k) with sum a_i phi(C_i) =
    sum b_k X^(k-1) (r = 1, indices from 1) or sum b_k X^k (r >= 2, indices
    from 0).  ``"backward"`` maps (b_k) to (a_i) through
    sum a_i X^i = sum b_k C(X + n - k, n), resp. C(n + (X-1)/r - k, n).
    """
    vals = [as_rational(v) for v in a]
    n = len(vals) if r == 1 else len(vals) - 1
    _check_group(r, n)
    shift = 1 if r == 1 else 0
    table = phi_table(r, n)
    if direction == "forward":
        # vals[t] is a_{t + shift}, at ell = t + shift
        return [
            sum((vals[t] * table.value(k, t + shift) for t in range(len(vals))), Fraction(0))
            for k in range(table.size)
        ]
    if direction == "backward":
        total = Polynomial()
        for t, b in enumerate(vals):
            k = t + shift
            # C(X + n - k, n) = C((X-1)/1 + n - k + 1, n)
            total = total + binom_shift_poly(n - k + shift, n, r) * b
        return [total.coeff(t + shift) for t in range(len(vals))]
    raise ValueError(f"direction must be 'forward' or 'backward', not {direction!r}")


@lru_cache(maxsize=None)
def delsarte_F(i: int, k: int, m: int) -> int:
    """Delsarte's F(i, k, m) at q = 1, seeded by Eulerian numbers of S_{m+1}."""
    if k < 0 or k > m or i < 0 or i > m:
        return 0
    if i == 0:
        return eulerian_numbers(1, m + 1)[k]
    return delsarte_F(i - 1, k, m - 1) - delsarte_F(i - 1, k - 1, m - 1)


def delsarte_matrix(n: int) -> list[list[int]]:
    """P_{n-1} = (F(i, k, n-1))_{0 <= i, k <= n-1}."""
    if n < 1:
        raise ValueError("n must be positive")
    return [[delsarte_F(i, k, n - 1) for k in range(n)] for i in range(n)]


def delsarte_table(n: int, check: bool = True) -> FoulkesTable:
    """The transpose of Delsarte's matrix as a Foulkes table of S_n."""
    P = delsarte_matrix(n)
    table = FoulkesTable(1, n, tuple(tuple(P[j][i] for j in range(n)) for i in range(n)))
    if check and table != phi_table(1, n):
        raise ConsistencyError(f"Delsarte matrix transpose differs from the Foulkes table for n={n}")
    return table


def check_branching(r: int, n: int, cap: int | None = None) -> None:
    """Restrict each phi_i to G(r,1,n-1), embedded as the elements fixing n with color 0.

    The restriction is evaluated element by element through the embedding
    and compared with (n - i) phi_{i-1} + (i + 1) phi_i for r = 1 and
    ((n+1) r - (r i + 1)) phi_{i-1} + (r i + 1) phi_i for r >= 2.
    """
    if n < 2:
        raise ValueError("branching needs n >= 2")
    big, small = group_table(r, n, cap), group_table(r, n - 1, cap)
    perms = np.hstack([small.perms, np.full((small.order, 1), n - 1)])
    colors = np.hstack([small.colors, np.zeros((small.order, 1), dtype=np.int64)])
    ell_big = big.ell[big.index(perms, colors)]
    new, old = phi_table(r, n), phi_table(r, n - 1)
    for i in range(new.size):
        lower = (n - i) if r == 1 else (n + 1) * r - (r * i + 1)
        upper = i + 1 if r == 1 else r * i + 1
        for idx in range(small.order):
            l_small = int(small.ell[idx])
            want = upper * (old.value(i, l_small) if i < old.size else 0)
            if i >= 1:
                want += lower * old.value(i - 1, l_small)
            got = new.value(i, int(ell_big[idx]))
            if got != want:
                raise ConsistencyError(f"branching fails for phi_{i} of G({r},1,{n}) at element {idx}")


def check_regular_decomposition(r: int, n: int, cap: int | None = None) -> None:
    """sum_i phi_i is the regular character, element by element, with coefficients all one."""
    G = group_table(r, n, cap)
    table = phi_table(r, n)
    totals = {l: sum(table.value(i, l) for i in range(table.size)) for l in table.column_lengths}
    for idx in range(G.order):
        want = G.order if idx == G.identity else 0
        if totals[int(G.ell[idx])] != want:
            raise ConsistencyError(f"sum of Foulkes characters is not regular at element {idx}")
    rho = LengthClassFunction.from_function(r, n, lambda l: G.order if l == n else 0)
    if decompose_length_function(rho) != [1] * table.size:
        raise ConsistencyError("regular character does not decompose with unit coefficients")
