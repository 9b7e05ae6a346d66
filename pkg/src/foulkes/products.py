"""Structure constants c_ijk of phi_i phi_j = sum_k c_ijk phi_k."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np

from .errors import ConsistencyError
from .groups import group_table, length_class_sizes
from .numerics import binom_int
from .tables import decompose_length_function, delsarte_table, phi_table, top_index


@dataclass(frozen=True)
class ProductTensor:
    r: int
    n: int
    c: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def size(self) -> int:
        return len(self.c)

    def __getitem__(self, ijk: tuple[int, int, int]) -> int:
        i, j, k = ijk
        return self.c[i][j][k]

    def slice(self, i: int, j: int) -> list[int]:
        return list(self.c[i][j])

    def as_lists(self) -> list:
        return [[list(row) for row in plane] for plane in self.c]

    def to_json(self) -> dict:
        return {"r": self.r, "n": self.n, "c": self.as_lists()}


def _freeze(arr) -> tuple:
    return tuple(tuple(tuple(int(v) for v in row) for row in plane) for plane in arr)


def _check_indices(r: int, n: int, *idx: int) -> None:
    top = top_index(r, n)
    for v in idx:
        if not 0 <= v <= top:
            raise ValueError(f"index {v} out of range 0..{top}")


def product_coefficients(r: int, n: int, i: int, j: int) -> list[int]:
    """Foulkes coefficients of the pointwise product phi_i phi_j."""
    _check_indices(r, n, i, j)
    table = phi_table(r, n)
    coeffs = decompose_length_function(table.row(i) * table.row(j))
    if any(v.denominator != 1 for v in coeffs):
        raise ConsistencyError(f"phi_{i} phi_{j} has non-integral coefficients")
    return [int(v) for v in coeffs]


@lru_cache(maxsize=None)
def _c_spectral(r: int, n: int) -> ProductTensor:
    m = top_index(r, n) + 1
    return ProductTensor(r, n, _freeze([[product_coefficients(r, n, i, j) for j in range(m)] for i in range(m)]))


def c_spectral(r: int, n: int) -> ProductTensor:
    if r < 1 or n < 1:
        raise ValueError(f"invalid group G({r},1,{n})")
    return _c_spectral(r, n)


def c_closed_form(r: int, n: int, i: int, j: int, k: int) -> int:
    """Double alternating sum of C(r u v + u + v + n - k, n)."""
    _check_indices(r, n, i, j, k)
    total = Fraction(0)
    for u in range(i + 1):
        for v in range(j + 1):
            sign = (-1) ** (i - u + j - v)
            total += sign * comb(n + 1, i - u) * comb(n + 1, j - v) * binom_int(r * u * v + u + v + n - k, n)
    return int(total)


def c_closed_form_tensor(r: int, n: int) -> ProductTensor:
    m = top_index(r, n) + 1
    return ProductTensor(
        r, n, _freeze([[[c_closed_form(r, n, i, j, k) for k in range(m)] for j in range(m)] for i in range(m)])
    )


def descent_witness(r: int, n: int, k: int, cap: int | None = None) -> int:
    """Index of the first element (enumeration order) with k descents."""
    G = group_table(r, n, cap)
    hits = np.flatnonzero(G.des == k)
    if len(hits) == 0:
        raise ValueError(f"no element of G({r},1,{n}) has {k} descents")
    return int(hits[0])


def factorization_counts(r: int, n: int, z: int, cap: int | None = None) -> np.ndarray:
    """counts[i, j] = #{x : des x = i, des(x^-1 z) = j} for the element with index z."""
    G = group_table(r, n, cap)
    m = top_index(r, n) + 1
    rest = G.des[G.right_mul(z, G.inverse)]
    return np.bincount(G.des * m + rest, minlength=m * m).reshape(m, m)


def c_combinatorial(r: int, n: int, i: int, j: int, k: int, cap: int | None = None) -> int:
    _check_indices(r, n, i, j, k)
    z = descent_witness(r, n, k, cap)
    return int(factorization_counts(r, n, z, cap)[i, j])


def c_combinatorial_tensor(r: int, n: int, cap: int | None = None) -> ProductTensor:
    m = top_index(r, n) + 1
    arr = np.zeros((m, m, m), dtype=np.int64)
    for k in range(m):
        arr[:, :, k] = factorization_counts(r, n, descent_witness(r, n, k, cap), cap)
    return ProductTensor(r, n, _freeze(arr))


def check_witness_independence(r: int, n: int, cap: int | None = None) -> None:
    """Every z with k descents gives the same factorization counts."""
    G = group_table(r, n, cap)
    reference = {}
    for z in range(G.order):
        k = int(G.des[z])
        counts = factorization_counts(r, n, z, cap)
        if k not in reference:
            reference[k] = counts
        elif not np.array_equal(reference[k], counts):
            raise ConsistencyError(f"factorization counts depend on the witness with {k} descents")


def ordinary_inner_plane(n: int) -> list[list[Fraction]]:
    """<phi_i, phi_j> = (1/n!) sum_ell |C_ell| phi_i(C_ell) phi_j(C_ell), from Delsarte's table."""
    table = delsarte_table(n, check=False)
    sizes = length_class_sizes(1, n)
    m = table.size
    return [
        [
            Fraction(sum(sizes[l] * table.value(i, l) * table.value(j, l) for l in table.column_lengths), factorial(n))
            for j in range(m)
        ]
        for i in range(m)
    ]


def c_delsarte(n: int, seed: str = "inner") -> ProductTensor:
    """S_n tensor grown from S_1 by Delsarte's difference recursion.

    The recursion fixes c_ij,k+1 from c_ij,k, so it needs the plane k = 0
    and the planes i = 0, j = 0 (c_0jk = delta_jk, c_i0k = delta_ik).  The
    k = 0 plane is <phi_i phi_j, 1> = <phi_i, phi_j> for the ordinary inner
    product (``seed="inner"``).  ``seed="delta"`` uses delta_ij instead; that
    seed is only right for n <= 2 and is kept to demonstrate the failure.
    Reads outside the previous tensor give 0.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if seed not in ("inner", "delta"):
        raise ValueError(f"unknown seed {seed!r}")
    old = np.ones((1, 1, 1), dtype=object)
    for m in range(1, n):
        size = m + 1

        def prev(i, j, k):
            return old[i, j, k] if i < m and j < m and k < m else 0

        plane = ordinary_inner_plane(size) if seed == "inner" else None
        new = np.zeros((size, size, size), dtype=object)
        for i in range(size):
            for j in range(size):
                new[i, j, 0] = plane[i][j] if plane is not None else Fraction(int(i == j))
        for j in range(size):
            for k in range(size):
                new[0, j, k] = int(j == k)
                new[j, 0, k] = int(j == k)
        for a in range(1, size):
            for b in range(1, size):
                for k in range(size - 1):
                    new[a, b, k + 1] = (
                        new[a, b, k]
                        - prev(a - 1, b - 1, k)
                        + prev(a, b - 1, k)
                        + prev(a - 1, b, k)
                        - prev(a, b, k)
                    )
        old = new
    if any(Fraction(v).denominator != 1 for v in old.flat):
        raise ConsistencyError("Delsarte recursion produced a non-integer")
    return ProductTensor(1, n, _freeze(old))
