"""Hook characters and the moments <X^ell, chi> behind every decomposition.

Two families of functions live here.  The formula side (hook-content
products, the S_n hook values read off char_poly/(1 - X)) is what the rest
of the package consumes.  The brute-force side evaluates hook characters of
G(r,1,n) directly on group elements as traces over invariant subsets; it
exists so tests can check the formulas against enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .groups import Partition, Permutation, WreathElement, WreathType, length_range
from .numerics import Polynomial, binom_shift_poly

EPSILON = "epsilon"
ETA = "eta"


@dataclass(frozen=True)
class BoxData:
    content: int
    hook: int
    delta0: int


@dataclass(frozen=True)
class HookLabel:
    """epsilon(k) or eta(s, k) for G(r,1,n); for r = 1 only epsilon(k) makes sense."""

    r: int
    n: int
    flavor: str
    k: int
    s: int = 0

    def __post_init__(self):
        if self.flavor == EPSILON:
            top = self.n - 1 if self.r == 1 else self.n
            if not 0 <= self.k <= top:
                raise ValueError(f"epsilon index {self.k} out of range 0..{top}")
        elif self.flavor == ETA:
            if not (0 <= self.k <= self.n - 1 and 0 <= self.s < self.r):
                raise ValueError(f"eta({self.s},{self.k}) out of range")
        else:
            raise ValueError(f"unknown hook flavor {self.flavor!r}")

    def shape(self) -> WreathType:
        n, k = self.n, self.k
        if self.flavor == EPSILON and self.r == 1:
            return WreathType(((n - k,) + (1,) * k,))
        if self.flavor == EPSILON:
            parts = [()] * self.r
            parts[0] = (n - k,) if n > k else ()
            parts[1] = (1,) * k
            return WreathType(tuple(parts))
        return WreathType.single(self.r, (n - k,) + (1,) * k, self.s)

    def degree(self) -> int:
        if self.flavor == EPSILON:
            return comb(self.n - 1, self.k) if self.r == 1 else comb(self.n, self.k)
        return comb(self.n - 1, self.k)


def char_poly_of_class(K: Sequence[int]) -> Polynomial:
    """prod over parts of (1 - X^part): det(1 - tau X) on the permutation module."""
    out = Polynomial.constant(1)
    for part in K:
        out = out * (1 - Polynomial.monomial(part))
    return out


def hook_eps_values_sn(K: Sequence[int]) -> tuple[int, ...]:
    """(eps_0(K), ..., eps_{n-1}(K)) for eps_k = chi_(n-k, 1^k) of S_n."""
    n = sum(K)
    quotient = char_poly_of_class(K).exact_div(Polynomial((1, -1)))
    vals = []
    for k in range(n):
        c = quotient.coeff(k) * (-1) ** k
        assert c.denominator == 1
        vals.append(int(c))
    return tuple(vals)


def _partition_boxes(lam: Partition, in_zero: bool) -> list[BoxData]:
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    return [
        BoxData(content=j - i, hook=lam[i] - j + conj[j] - i - 1, delta0=int(in_zero))
        for i, row in enumerate(lam)
        for j in range(row)
    ]


def box_data(lam: WreathType | Sequence[int]) -> list[BoxData]:
    """Boxes of every component; a plain partition counts as component 0."""
    if isinstance(lam, WreathType):
        return [b for pos, part in enumerate(lam.parts) for b in _partition_boxes(part, pos == 0)]
    return _partition_boxes(tuple(lam), True)


def hook_content_moment(r: int, lam: WreathType | Sequence[int], normalized: bool = False) -> Polynomial:
    """<X^ell, chi_lam> as a polynomial in X.

    With ``normalized`` the character is divided by its degree, which turns
    the hook-length denominator into n!.
    """
    boxes = box_data(lam)
    n = len(boxes)
    out = Polynomial.constant(1)
    x = Polynomial.x()
    for b in boxes:
        if r == 1:
            factor = x + b.content
        else:
            factor = (x - 1) * Fraction(1, r) + (b.content + b.delta0)
        out = out * (factor if normalized else factor * Fraction(1, b.hook))
    return out * Fraction(1, factorial(n)) if normalized else out


def character_degree(lam: WreathType | Sequence[int]) -> int:
    """n! / prod of hook lengths, which also covers the multinomial for r >= 2."""
    boxes = box_data(lam)
    d = Fraction(factorial(len(boxes)))
    for b in boxes:
        d /= b.hook
    return int(d)


@lru_cache(maxsize=None)
def _eps_coeff_matrix(r: int, n: int) -> tuple[tuple[Fraction, ...], ...]:
    m = n - 1 if r == 1 else n
    lengths = length_range(r, n)
    rows = []
    for k in range(m + 1):
        moment = binom_shift_poly(n - k, n, r)
        rows.append(tuple(moment.coeff(l) for l in lengths))
    return tuple(rows)


def eps_coeff_matrix(r: int, n: int) -> list[list[Fraction]]:
    """Entry (k, j) = (1/|G|) sum over C_{n-j} of eps_k / eps_k(1).

    Read off as the coefficient of X^(n-j) in C((X-1)/r + n - k, n).  This
    matrix is the inverse transpose of the Foulkes table.
    """
    if n < 1 or r < 1:
        raise ValueError(f"invalid group G({r},1,{n})")
    return [list(row) for row in _eps_coeff_matrix(r, n)]


# Brute-force character values.  Values in Z[zeta] are returned as
# length-r integer vectors: entry e is the coefficient of zeta**e.


def _invariant_subset_trace(x: WreathElement, k: int) -> list[int]:
    """sum over pi-invariant k-subsets S of sgn(pi|S) * zeta**(colors summed over S)."""
    out = [0] * x.r
    cycles = x.colored_cycles()
    for choice in itertools.product((False, True), repeat=len(cycles)):
        chosen = [c for c, take in zip(cycles, choice) if take]
        if sum(len(cyc) for cyc, _ in chosen) != k:
            continue
        sign = (-1) ** sum(len(cyc) - 1 for cyc, _ in chosen)
        color = sum(col for _, col in chosen) % x.r
        out[color] += sign
    return out


def _sn_hook_by_traces(x: WreathElement, k: int) -> int:
    # Exterior powers of the permutation module: Lambda^t = eps_t + eps_{t-1}.
    plain = WreathElement(x.perm, (0,) * x.n, 1)
    return sum((-1) ** (k - t) * _invariant_subset_trace(plain, t)[0] for t in range(k + 1))


def hook_character_value(label: HookLabel, x: WreathElement) -> list[int]:
    """Value of the hook character at x as a vector over powers of zeta.

    epsilon(k) for r >= 2 is induced from G(r,1,n-k) x G(r,1,k), trivial
    on the first factor and sign-times-color on the second, so its value is a
    sum over invariant subsets.  eta(s, k) is the S_n hook character times
    the linear character zeta**(s * total color).
    """
    if x.r != label.r or x.n != label.n:
        raise ValueError("element and character belong to different groups")
    if label.flavor == EPSILON and label.r == 1:
        return [_sn_hook_by_traces(x, label.k)]
    if label.flavor == EPSILON:
        return _invariant_subset_trace(x, label.k)
    out = [0] * x.r
    out[(label.s * sum(x.colors)) % x.r] = _sn_hook_by_traces(x, label.k)
    return out


def hook_character_on_type(label: HookLabel, t: WreathType) -> list[int]:
    """Same as :func:`hook_character_value`, evaluated at a representative of type t."""
    one_line = list(range(1, t.n + 1))
    colors = [0] * t.n
    start = 0
    for color, lam in enumerate(t.parts):
        for part in lam:
            block = list(range(start + 1, start + part + 1))
            for a, b in zip(block, block[1:] + block[:1]):
                one_line[a - 1] = b
            colors[start] = color
            start += part
    x = WreathElement(Permutation(tuple(one_line)), tuple(colors), t.r)
    return hook_character_value(label, x)
