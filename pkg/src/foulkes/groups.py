"""Colored permutations: the full monomial groups G(r,1,n), with S_n as r = 1.

An element is stored as ``(perm, colors)`` modelling the monomial matrix
``D . A_perm`` where ``D = diag(zeta**colors[0], ..., zeta**colors[n-1])`` and
``A_perm`` sends basis vector ``e_j`` to ``e_perm(j)``.  Hence ``colors[i]`` is
the color of the nonzero entry in *row* ``i``, and column ``j`` carries the
letter ``perm(j)`` with color ``colors[perm(j) - 1]``.

Descents use the colored letter order::

    (nonzero colors, highest color first, each block increasing) < 0 < 1 < 2 < ... < n

read along the columns, with a sentinel ``0`` in front.  For r = 1 this is
the usual descent count.  Other orders that reproduce the Eulerian
histograms exist, but for r >= 3 only this family makes the descent sums
close under multiplication; :func:`foulkes.tables.validate_descent_order`
re-checks the histogram part.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Iterator, Sequence

import numpy as np

from .errors import CapExceededError

DEFAULT_GROUP_CAP = 100_000

Partition = tuple[int, ...]


@dataclass(frozen=True)
class Permutation:
    one_line: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "one_line", tuple(int(v) for v in self.one_line))
        if sorted(self.one_line) != list(range(1, len(self.one_line) + 1)):
            raise ValueError(f"not a permutation of 1..n: {self.one_line}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        img = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b
        return cls(tuple(img))

    @property
    def n(self) -> int:
        return len(self.one_line)

    def __call__(self, i: int) -> int:
        return self.one_line[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(i) = self(other(i))
        return Permutation(tuple(self.one_line[j - 1] for j in other.one_line))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.one_line, 1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * (self.n + 1)
        out = []
        for start in range(1, self.n + 1):
            if seen[start]:
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.one_line[j - 1]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> Partition:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def sign(self) -> int:
        return (-1) ** (self.n - len(self.cycles()))


@dataclass(frozen=True)
class WreathElement:
    perm: Permutation
    colors: tuple[int, ...]
    r: int = 1

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("r must be positive")
        if len(self.colors) != self.perm.n:
            raise ValueError("colors and perm have different lengths")
        object.__setattr__(self, "colors", tuple(int(c) % self.r for c in self.colors))

    @classmethod
    def identity(cls, r: int, n: int) -> "WreathElement":
        return cls(Permutation.identity(n), (0,) * n, r)

    @classmethod
    def of(cls, one_line: Sequence[int], colors: Sequence[int] | None = None, r: int = 1):
        colors = tuple(colors) if colors is not None else (0,) * len(one_line)
        return cls(Permutation(tuple(one_line)), colors, r)

    @property
    def n(self) -> int:
        return self.perm.n

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        if other.r != self.r or other.n != self.n:
            raise ValueError("elements of different groups")
        inv = self.perm.inverse().one_line
        colors = tuple(self.colors[i] + other.colors[inv[i] - 1] for i in range(self.n))
        return WreathElement(self.perm * other.perm, colors, self.r)

    def inverse(self) -> "WreathElement":
        colors = tuple(-self.colors[self.perm.one_line[i] - 1] for i in range(self.n))
        return WreathElement(self.perm.inverse(), colors, self.r)

    def matrix_entry(self, i: int, j: int) -> int | None:
        """Color exponent of entry (i, j) (1-based), or None for a zero entry."""
        return self.colors[i - 1] if self.perm(j) == i else None

    def window(self) -> tuple[tuple[int, int], ...]:
        """Column-by-column letters ``(color, value)``."""
        return tuple((self.colors[v - 1], v) for v in self.perm.one_line)

    def colored_cycles(self) -> list[tuple[tuple[int, ...], int]]:
        return [(cyc, sum(self.colors[i - 1] for i in cyc) % self.r) for cyc in self.perm.cycles()]

    def to_json(self) -> dict:
        return {"perm": list(self.perm.one_line), "colors": list(self.colors)}

    @classmethod
    def from_json(cls, data: dict, r: int) -> "WreathElement":
        return cls(Permutation(tuple(data["perm"])), tuple(data["colors"]), r)


@dataclass(frozen=True)
class WreathType:
    """Cycle lengths grouped by cycle color: ``parts[j]`` is a partition."""

    parts: tuple[Partition, ...]

    def __post_init__(self):
        norm = tuple(tuple(sorted((int(p) for p in lam), reverse=True)) for lam in self.parts)
        if any(p <= 0 for lam in norm for p in lam):
            raise ValueError(f"parts must be positive: {self.parts}")
        object.__setattr__(self, "parts", norm)

    @property
    def r(self) -> int:
        return len(self.parts)

    @property
    def n(self) -> int:
        return sum(sum(lam) for lam in self.parts)

    @property
    def ell(self) -> int:
        return len(self.parts[0])

    @classmethod
    def single(cls, r: int, partition: Sequence[int], position: int = 0) -> "WreathType":
        parts = [()] * r
        parts[position] = tuple(partition)
        return cls(tuple(parts))

    def to_json(self) -> list[list[int]]:
        return [list(lam) for lam in self.parts]

    def __str__(self) -> str:
        return "(" + ", ".join("(" + ",".join(map(str, lam)) + ")" for lam in self.parts) + ")"


def _infer_r(x, r: int | None) -> int:
    if isinstance(x, WreathElement):
        if r is not None and r != x.r:
            raise ValueError(f"element lives in r={x.r}, not r={r}")
        return x.r
    return 1 if r is None else r


def _as_wreath(x, r: int | None) -> WreathElement:
    if isinstance(x, WreathElement):
        _infer_r(x, r)
        return x
    if isinstance(x, Permutation):
        return WreathElement(x, (0,) * x.n, 1 if r is None else r)
    raise TypeError(f"not a group element: {x!r}")


def wreath_type(x: WreathElement | Permutation, r: int | None = None) -> WreathType:
    x = _as_wreath(x, r)
    parts: list[list[int]] = [[] for _ in range(x.r)]
    for cyc, color in x.colored_cycles():
        parts[color].append(len(cyc))
    return WreathType(tuple(tuple(p) for p in parts))


def ell(x: WreathElement | Permutation, r: int | None = None) -> int:
    """Cycle count for S_n; number of color-0 cycles for r >= 2."""
    return wreath_type(x, r).ell


def letter_rank(color: int, value: int, r: int, n: int) -> int:
    """Position of the colored letter ``zeta**color * value`` in the descent order.

    The sentinel 0 has rank ``(r-1)*n``.
    """
    if color == 0:
        return (r - 1) * n + value
    return (r - 1 - color) * n + (value - 1)


def des(x: WreathElement | Permutation, r: int | None = None) -> int:
    x = _as_wreath(x, r)
    ranks = [(x.r - 1) * x.n] + [letter_rank(c, v, x.r, x.n) for c, v in x.window()]
    return sum(1 for a, b in zip(ranks, ranks[1:]) if a > b)


def group_order(r: int, n: int) -> int:
    return r**n * factorial(n)


def check_cap(r: int, n: int, cap: int | None) -> None:
    cap = DEFAULT_GROUP_CAP if cap is None else cap
    size = group_order(r, n)
    if size > cap:
        raise CapExceededError(f"G({r},1,{n})", size, cap, "--max-group-size")


def enumerate_group(r: int, n: int, cap: int | None = None) -> Iterator[WreathElement]:
    """Every element of G(r,1,n) once: permutations lexicographically, then colors."""
    if r < 1 or n < 0:
        raise ValueError(f"invalid group G({r},1,{n})")
    check_cap(r, n, cap)
    for p in itertools.permutations(range(1, n + 1)):
        perm = Permutation(p)
        for cs in itertools.product(range(r), repeat=n):
            yield WreathElement(perm, cs, r)


@lru_cache(maxsize=None)
def partitions(n: int, largest: int | None = None) -> tuple[Partition, ...]:
    """Partitions of n in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def multipartitions(r: int, n: int) -> tuple[WreathType, ...]:
    """All types of size n, i.e. the conjugacy classes of G(r,1,n)."""
    out = []
    for sizes in itertools.product(range(n + 1), repeat=r):
        if sum(sizes) != n:
            continue
        for combo in itertools.product(*(partitions(s) for s in sizes)):
            out.append(WreathType(tuple(combo)))
    return tuple(out)


def class_size(t: WreathType, r: int | None = None) -> int:
    """|K_t| = r^n n! / centralizer order, centralizer = prod over (color, length) of m! (r k)^m."""
    r = t.r if r is None else r
    if r != t.r:
        raise ValueError(f"type has {t.r} components, expected {r}")
    centralizer = 1
    for lam in t.parts:
        for k, m in Counter(lam).items():
            centralizer *= factorial(m) * (r * k) ** m
    return group_order(r, t.n) // centralizer


class GroupTable:
    """The whole group as numpy arrays, for brute-force oracles.

    Elements are indexed in :func:`enumerate_group` order.
    """

    def __init__(self, r: int, n: int, cap: int | None = None):
        if r < 1 or n < 1:
            raise ValueError(f"invalid group G({r},1,{n})")
        check_cap(r, n, cap)
        self.r, self.n = r, n
        perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
        cols = np.array(list(itertools.product(range(r), repeat=n)), dtype=np.int64).reshape(-1, n)
        P, C = len(perms), len(cols)
        self.perms = np.repeat(perms, C, axis=0)
        self.colors = np.tile(cols, (P, 1))
        self.order = P * C
        self.base = n * r
        self._weights = self.base ** np.arange(n, dtype=np.int64)
        self._lookup = np.full(self.base**n if n else 1, -1, dtype=np.int64)
        self._lookup[self._codes(self.perms, self.colors)] = np.arange(self.order)
        self.perm_inv = np.argsort(self.perms, axis=1)
        self.inverse = self.index(*self._inverse_arrays())
        self._analyse_cycles()
        self.des = self._descents()

    def _codes(self, perms: np.ndarray, colors: np.ndarray) -> np.ndarray:
        if self.n == 0:
            return np.zeros(len(perms), dtype=np.int64)
        return ((perms * self.r + colors) * self._weights).sum(axis=1)

    def index(self, perms: np.ndarray, colors: np.ndarray) -> np.ndarray:
        return self._lookup[self._codes(perms, colors % self.r)]

    def _inverse_arrays(self):
        colors = -np.take_along_axis(self.colors, self.perms, axis=1) % self.r
        return self.perm_inv, colors

    def _analyse_cycles(self):
        n, r = self.n, self.r
        label = np.tile(np.arange(n), (self.order, 1))
        cur = label.copy()
        for _ in range(n):
            cur = np.take_along_axis(self.perms, cur, axis=1)
            label = np.minimum(label, cur)
        # key counts cycles by (color, length); encoded in base n + 1
        wide = (n + 1) ** (r * n) >= 2**62
        key = np.zeros(self.order, dtype=object if wide else np.int64)
        ell = np.zeros(self.order, dtype=np.int64)
        for j in range(n):
            member = label == j
            is_rep = member[:, j]
            length = member.sum(axis=1)
            color = (self.colors * member).sum(axis=1) % r
            slot = np.where(is_rep, color * n + length - 1, 0)
            weight = (n + 1) ** (slot.astype(object) if wide else slot)
            key = key + np.where(is_rep, weight, 0)
            ell = ell + (is_rep & (color == 0))
        self.ell = ell
        uniq, class_id = np.unique(key, return_inverse=True)
        self.class_id = class_id.reshape(-1)
        self.class_reps = np.array([np.flatnonzero(self.class_id == c)[0] for c in range(len(uniq))])
        self.class_types = [wreath_type(self.wreath_element(int(i))) for i in self.class_reps]
        self.class_sizes = np.bincount(self.class_id, minlength=len(uniq))
        self._type_index = {t: c for c, t in enumerate(self.class_types)}

    def _descents(self) -> np.ndarray:
        n, r = self.n, self.r
        if n == 0:
            return np.zeros(self.order, dtype=np.int64)
        letter_colors = np.take_along_axis(self.colors, self.perms, axis=1)
        values = self.perms + 1
        ranks = np.where(letter_colors == 0, (r - 1) * n + values, (r - 1 - letter_colors) * n + values - 1)
        sentinel = np.full((self.order, 1), (r - 1) * n)
        w = np.hstack([sentinel, ranks])
        return (w[:, :-1] > w[:, 1:]).sum(axis=1)

    def wreath_element(self, idx: int) -> WreathElement:
        return WreathElement(
            Permutation(tuple(int(v) + 1 for v in self.perms[idx])),
            tuple(int(c) for c in self.colors[idx]),
            self.r,
        )

    def index_of(self, x: WreathElement) -> int:
        perms = np.array([[v - 1 for v in x.perm.one_line]], dtype=np.int64)
        colors = np.array([list(x.colors)], dtype=np.int64)
        return int(self.index(perms.reshape(1, self.n), colors.reshape(1, self.n))[0])

    def class_of_type(self, t: WreathType) -> int:
        try:
            return self._type_index[t]
        except KeyError:
            raise ValueError(f"no class of type {t} in G({self.r},1,{self.n})") from None

    def members(self, t: WreathType) -> np.ndarray:
        return np.flatnonzero(self.class_id == self.class_of_type(t))

    def left_mul(self, x: int, others: np.ndarray | None = None) -> np.ndarray:
        """Indices of x * a for every a (or for the given indices)."""
        others = np.arange(self.order) if others is None else np.asarray(others)
        xp, xc, xinv = self.perms[x], self.colors[x], self.perm_inv[x]
        perms = xp[self.perms[others]]
        colors = xc[None, :] + self.colors[others][:, xinv]
        return self.index(perms, colors)

    def right_mul(self, z: int, others: np.ndarray | None = None) -> np.ndarray:
        """Indices of a * z for every a (or for the given indices)."""
        others = np.arange(self.order) if others is None else np.asarray(others)
        zp, zc = self.perms[z], self.colors[z]
        ap = self.perms[others]
        perms = ap[:, zp]
        colors = self.colors[others] + zc[self.perm_inv[others]]
        return self.index(perms, colors)

    @property
    def identity(self) -> int:
        return 0

    def multiplication_table(self) -> np.ndarray:
        """``T[h, k]`` = index of ``h * k``; quadratic memory, meant for small groups."""
        if not hasattr(self, "_mul"):
            self._mul = np.stack([self.left_mul(h) for h in range(self.order)])
        return self._mul


@lru_cache(maxsize=16)
def _cached_table(r: int, n: int) -> GroupTable:
    return GroupTable(r, n, cap=group_order(r, n))


def group_table(r: int, n: int, cap: int | None = None) -> GroupTable:
    """Shared :class:`GroupTable`, checked against ``cap`` on every call."""
    check_cap(r, n, cap)
    return _cached_table(r, n)


def length_range(r: int, n: int) -> list[int]:
    """ell values in table-column order: n, n-1, ..., down to 1 (r = 1) or 0 (r >= 2)."""
    low = 1 if r == 1 else 0
    return list(range(n, low - 1, -1))


def length_class_sizes(r: int, n: int) -> dict[int, int]:
    """|C_ell| from class sizes, without enumerating."""
    out = {l: 0 for l in length_range(r, n)}
    for t in multipartitions(r, n):
        out[t.ell] += class_size(t, r)
    return out
