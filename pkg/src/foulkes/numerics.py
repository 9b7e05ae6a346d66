"""Exact scalars, dense univariate polynomials and truncated power series.

Scalars are :class:`fractions.Fraction`; everything here is immutable and
never touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, isqrt
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


def as_rational(x: Scalar | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact scalar: {x!r}")


def rational_to_str(x: Scalar) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rational_sqrt(x: Scalar) -> Fraction:
    """Exact square root of a nonnegative rational square; raises otherwise."""
    x = as_rational(x)
    if x < 0:
        raise ValueError(f"negative input {x}")
    p, q = isqrt(x.numerator), isqrt(x.denominator)
    if p * p != x.numerator or q * q != x.denominator:
        raise ValueError(f"{x} is not the square of a rational")
    return Fraction(p, q)


def binom_int(m: int, k: int) -> Fraction:
    """Generalized binomial m(m-1)...(m-k+1)/k! for any integer m."""
    if k < 0:
        raise ValueError(f"binomial needs k >= 0, got k={k}")
    num = 1
    for t in range(k):
        num *= m - t
    return Fraction(num, factorial(k))


class Polynomial:
    """Dense polynomial in X with rational coefficients, lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree ``-inf``
    (reported as ``None`` by :attr:`degree`).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: Scalar = 1) -> "Polynomial":
        return cls([0] * degree + [c])

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial.constant(other)

    def __add__(self, other) -> "Polynomial":
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._lift(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = as_rational(other)
            return Polynomial(c * a for a in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative exponent")
        out, base = Polynomial.constant(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            if c:
                quot[k - dq] = c
                for t, b in enumerate(other.coeffs):
                    rem[k - dq + t] -= c * b
        return Polynomial(quot), Polynomial(rem)

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, rem = self.divmod(other)
        if not rem.is_zero():
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return q

    def compose(self, inner: "Polynomial") -> "Polynomial":
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[rational_to_str(c) for c in self.coeffs]})"

    def to_json(self) -> list[str]:
        return [rational_to_str(c) for c in self.coeffs]


def binom_shift_poly(a: int, n: int, r: int = 1) -> Polynomial:
    """The polynomial C((X-1)/r + a, n) in X."""
    if n < 0 or r < 1:
        raise ValueError(f"need n >= 0 and r >= 1, got n={n}, r={r}")
    # t = (X - 1)/r + a
    t = Polynomial((Fraction(-1, r) + a, Fraction(1, r)))
    out = Polynomial.constant(1)
    for s in range(n):
        out = out * (t - s)
    return out * Fraction(1, factorial(n))


class TruncatedSeries:
    """Power series in X known modulo X**order."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[Scalar], order: int):
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = [as_rational(c) for c in coeffs][:order]
        cs += [Fraction(0)] * (order - len(cs))
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.order = order

    @classmethod
    def from_polynomial(cls, p: Polynomial, order: int) -> "TruncatedSeries":
        return cls(p.coeffs, order)

    @classmethod
    def geometric(cls, order: int, step: int = 1) -> "TruncatedSeries":
        """1/(1 - X**step)."""
        return cls((1 if k % step == 0 else 0 for k in range(order)), order)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < self.order else Fraction(0)

    def _check(self, other: "TruncatedSeries") -> None:
        if other.order != self.order:
            raise ValueError(f"series orders differ: {self.order} vs {other.order}")

    def _lift(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        if isinstance(other, Polynomial):
            return TruncatedSeries.from_polynomial(other, self.order)
        return TruncatedSeries((other,), self.order)

    def __add__(self, other) -> "TruncatedSeries":
        other = self._lift(other)
        return TruncatedSeries((a + b for a, b in zip(self.coeffs, other.coeffs)), self.order)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries((-a for a in self.coeffs), self.order)

    def __sub__(self, other) -> "TruncatedSeries":
        return self + (-self._lift(other))

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries((a * other for a in self.coeffs), self.order)
        other = self._lift(other)
        T = self.order
        out = [Fraction(0)] * T
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(T - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return TruncatedSeries(out, T)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "TruncatedSeries":
        out = TruncatedSeries((1,), self.order)
        for _ in range(e):
            out = out * self
        return out

    def inverse(self) -> "TruncatedSeries":
        if self.coeffs[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        T = self.order
        inv = [Fraction(0)] * T
        inv[0] = 1 / self.coeffs[0]
        for k in range(1, T):
            s = sum(self.coeffs[t] * inv[k - t] for t in range(1, k + 1))
            inv[k] = -s * inv[0]
        return TruncatedSeries(inv, T)

    def euler_step(self) -> "TruncatedSeries":
        """Apply 1 + X d/dX once: coefficient k is scaled by k + 1."""
        return TruncatedSeries(((k + 1) * c for k, c in enumerate(self.coeffs)), self.order)

    def to_polynomial(self) -> Polynomial:
        return Polynomial(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncatedSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.coeffs, self.order))

    def __repr__(self) -> str:
        return f"TruncatedSeries({[rational_to_str(c) for c in self.coeffs]}, order={self.order})"


def apply_euler_operator(f: TruncatedSeries, j: int) -> TruncatedSeries:
    """Apply (1 + X d/dX) j times."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    for _ in range(j):
        f = f.euler_step()
    return f


def default_order(n: int) -> int:
    return 2 * n + 4


def identity_matrix(m: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]


def matmul(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> list[list[Fraction]]:
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [
        [sum((Fraction(row[t]) * b[t][j] for t in range(inner)), Fraction(0)) for j in range(cols)]
        for row in a
    ]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)]


def cyclotomic_polynomial(r: int) -> Polynomial:
    """The r-th cyclotomic polynomial, by dividing X**r - 1 by the smaller ones."""
    p = Polynomial.monomial(r) - 1
    for d in range(1, r):
        if r % d == 0:
            p = p.exact_div(cyclotomic_polynomial(d))
    return p


def reduce_cyclotomic(exponent_counts: Sequence[Scalar], r: int) -> Polynomial:
    """Reduce sum_e counts[e] * zeta**e modulo the r-th cyclotomic polynomial."""
    _, rem = Polynomial(exponent_counts).divmod(cyclotomic_polynomial(r))
    return rem


def solve_linear(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> list[list[Fraction]]:
    """Solve A X = B exactly by Gauss-Jordan elimination; A must be square and invertible."""
    m = len(a)
    aug = [[as_rational(v) for v in a[i]] + [as_rational(v) for v in b[i]] for i in range(m)]
    width = len(aug[0]) if aug else 0
    for col in range(m):
        pivot = next((i for i in range(col, m) if aug[i][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for i in range(m):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [u - f * v for u, v in zip(aug[i], aug[col])]
    return [row[m:width] for row in aug]


def matrix_inverse(a: Sequence[Sequence[Scalar]]) -> list[list[Fraction]]:
    return solve_linear(a, identity_matrix(len(a)))
