"""The random-product inner products on length class functions.

A kernel ``mu[i][j]`` is the expected number of ways a random product
``k_1 ... k_m`` (``k_t`` uniform in class ``K_t``) factors as ``a b`` with
``ell(a)`` and ``ell(b)`` fixed.  Rows and columns are indexed by ascending
ell, like :class:`LengthClassFunction` values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np

from .characters import EPSILON, ETA, HookLabel, hook_character_on_type
from .errors import ConsistencyError
from .groups import GroupTable, WreathType, group_table
from .numerics import Polynomial, rational_sqrt, rational_to_str, reduce_cyclotomic
from .tables import FoulkesTable, LengthClassFunction, decompose_length_function, phi_table, top_index


@dataclass(frozen=True)
class ClassSequence:
    classes: tuple[WreathType, ...]
    r: int
    n: int

    def __post_init__(self):
        classes = tuple(self.classes)
        for t in classes:
            if t.r != self.r or t.n != self.n:
                raise ValueError(f"class {t} does not belong to G({self.r},1,{self.n})")
        object.__setattr__(self, "classes", classes)

    def __len__(self) -> int:
        return len(self.classes)

    @classmethod
    def parse(cls, text: str, r: int, n: int) -> "ClassSequence":
        """Read ``"3|;2|1"``: classes split by ';', components by '|', parts by ','."""
        classes = []
        for chunk in text.split(";"):
            comps = chunk.split("|")
            if len(comps) > r:
                raise ValueError(f"class {chunk!r} has more than {r} components")
            comps += [""] * (r - len(comps))
            parts = tuple(
                tuple(int(p) for p in comp.split(",") if p.strip()) if comp.strip() else () for comp in comps
            )
            if any(p <= 0 for lam in parts for p in lam):
                raise ValueError(f"class {chunk!r} has a nonpositive part")
            t = WreathType(parts)
            if t.n != n:
                raise ValueError(f"class {chunk!r} has size {t.n}, expected {n}")
            classes.append(t)
        return cls(tuple(classes), r, n)

    def to_json(self) -> list:
        return [t.to_json() for t in self.classes]


def _type(r: int, *components: Sequence[int]) -> WreathType:
    parts = [tuple(c) for c in components] + [()] * (r - len(components))
    return WreathType(tuple(parts))


def sequence_a(k: int, r: int, n: int) -> ClassSequence:
    """The k-th of the five sequences mixed into the canonical kernel (k = 1..5)."""
    if r < 2:
        raise ValueError("the five standard sequences need r >= 2")
    A = _type(r, (n,))
    B = _type(r, (), (n,))
    if k in (1, 2):
        return ClassSequence((A, A) if k == 1 else (A, B), r, n)
    if n < 2:
        raise ValueError(f"sequence a{k} needs n >= 2")
    C = _type(r, (n - 1,), (1,))
    D = _type(r, (n - 1, 1))
    seqs = {3: (A, C), 4: (A, A, D, D), 5: (A, A, C, D)}
    if k not in seqs:
        raise ValueError(f"no standard sequence a{k}")
    return ClassSequence(seqs[k], r, n)


def ncycle_sequence(n: int) -> ClassSequence:
    """Two n-cycles: the sequence defining the inner product on S_n."""
    t = WreathType(((n,),))
    return ClassSequence((t, t), 1, n)


@dataclass(frozen=True)
class ExpectationKernel:
    r: int
    n: int
    mu: tuple[tuple[Fraction, ...], ...]
    provenance: tuple[tuple[str, Fraction], ...] = field(default=())

    @property
    def low(self) -> int:
        return 1 if self.r == 1 else 0

    @property
    def lengths(self) -> list[int]:
        return list(range(self.low, self.n + 1))

    def entry(self, ell_a: int, ell_b: int) -> Fraction:
        return self.mu[ell_a - self.low][ell_b - self.low]

    def __add__(self, other: "ExpectationKernel") -> "ExpectationKernel":
        if (self.r, self.n) != (other.r, other.n):
            raise ValueError("kernels on different groups")
        mu = tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.mu, other.mu))
        return ExpectationKernel(self.r, self.n, mu, self.provenance + other.provenance)

    def scale(self, w: Fraction) -> "ExpectationKernel":
        mu = tuple(tuple(a * w for a in row) for row in self.mu)
        return ExpectationKernel(self.r, self.n, mu, tuple((name, c * w) for name, c in self.provenance))

    def check_invariants(self, class_sizes: Sequence[int]) -> None:
        """Symmetry, nonnegativity, marginals |C_j| and total mass |G|."""
        m = len(self.mu)
        for i in range(m):
            for j in range(m):
                if self.mu[i][j] != self.mu[j][i]:
                    raise ConsistencyError(f"kernel not symmetric at ({i},{j})")
                if self.mu[i][j] < 0:
                    raise ConsistencyError(f"negative kernel entry at ({i},{j})")
        for j in range(m):
            if sum(self.mu[i][j] for i in range(m)) != class_sizes[j]:
                raise ConsistencyError(f"column {j} of the kernel does not sum to |C|")

    def to_json(self) -> dict:
        return {
            "lengths": self.lengths,
            "mu": [[rational_to_str(v) for v in row] for row in self.mu],
            "provenance": [[name, rational_to_str(w)] for name, w in self.provenance],
        }


def length_sizes_ascending(r: int, n: int, G: GroupTable | None = None) -> list[int]:
    G = G or group_table(r, n)
    low = 1 if r == 1 else 0
    return [int((G.ell == l).sum()) for l in range(low, n + 1)]


def product_class_distribution(seq: ClassSequence, G: GroupTable) -> dict[int, Fraction]:
    """P(k_1 ... k_m lies in class c), by convolving one class at a time.

    Conditioned on its class, the partial product is uniform on that class,
    so one representative per class carries the whole distribution.
    """
    dist = {int(G.class_id[G.identity]): Fraction(1)}
    for t in seq.classes:
        members = G.members(t)
        nxt: dict[int, Fraction] = {}
        for c, p in dist.items():
            hits = np.bincount(G.class_id[G.left_mul(int(G.class_reps[c]), members)], minlength=len(G.class_reps))
            for c2 in np.flatnonzero(hits):
                nxt[int(c2)] = nxt.get(int(c2), Fraction(0)) + p * Fraction(int(hits[c2]), len(members))
        dist = nxt
    return dist


def kernel_for_sequence(seq: ClassSequence, cap: int | None = None, name: str = "") -> ExpectationKernel:
    G = group_table(seq.r, seq.n, cap)
    low = 1 if seq.r == 1 else 0
    size = seq.n + 1 - low
    mu = [[Fraction(0)] * size for _ in range(size)]
    ell_a = G.ell - low
    for c, p in product_class_distribution(seq, G).items():
        # a runs over the group, b = x a
        ell_b = G.ell[G.left_mul(int(G.class_reps[c]))] - low
        counts = np.bincount(ell_a * size + ell_b, minlength=size * size).reshape(size, size)
        for i in range(size):
            for j in range(size):
                if counts[i, j]:
                    mu[i][j] += p * int(counts[i, j])
    label = name or ";".join(str(t) for t in seq.classes)
    return ExpectationKernel(seq.r, seq.n, tuple(tuple(row) for row in mu), ((label, Fraction(1)),))


def canonical_weights(r: int, n: int) -> list[tuple[int, Fraction]]:
    """Mixture weights (k, w_k) over the standard sequences, zero weights dropped."""
    if r < 2:
        raise ValueError("mixture weights are defined for r >= 2")
    if n == 1:
        raw = [(1, Fraction(2, r)), (2, Fraction(r - 2, r))]
    else:
        raw = [
            (1, Fraction(1, r)),
            (2, Fraction(r - 2, 2 * r)),
            (3, Fraction(1, 4)),
            (4, Fraction(1, 2 * r)),
            (5, Fraction(r - 2, 4 * r)),
        ]
    return [(k, w) for k, w in raw if w != 0]


@lru_cache(maxsize=None)
def _canonical_kernel(r: int, n: int) -> ExpectationKernel:
    if r == 1:
        return kernel_for_sequence(ncycle_sequence(n), name="n-cycles")
    total = None
    for k, w in canonical_weights(r, n):
        part = kernel_for_sequence(sequence_a(k, r, n), name=f"a{k}").scale(w)
        total = part if total is None else total + part
    return total


def canonical_kernel(r: int, n: int, cap: int | None = None) -> ExpectationKernel:
    """The kernel under which the Foulkes characters are orthonormal."""
    group_table(r, n, cap)
    return _canonical_kernel(r, n)


def _check_pair(theta: LengthClassFunction, psi: LengthClassFunction) -> None:
    if (theta.r, theta.n) != (psi.r, psi.n):
        raise ValueError("class functions on different groups")


def bracket(theta: LengthClassFunction, psi: LengthClassFunction, kernel: ExpectationKernel) -> Fraction:
    """(1/|G|) sum_ij theta(C_i) psi(C_j) mu(C_i, C_j); values are rational so no conjugation."""
    _check_pair(theta, psi)
    if (kernel.r, kernel.n) != (theta.r, theta.n):
        raise ValueError("kernel and class functions on different groups")
    order = sum(sum(row) for row in kernel.mu)  # equals |G| by the marginal property
    total = sum(
        (a * b * kernel.mu[i][j] for i, a in enumerate(theta.values) for j, b in enumerate(psi.values)),
        Fraction(0),
    )
    return total / order


def bracket_spectral(theta: LengthClassFunction, psi: LengthClassFunction) -> Fraction:
    """Dot product of Foulkes coefficients."""
    _check_pair(theta, psi)
    a = decompose_length_function(theta)
    b = decompose_length_function(psi)
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _first_class_ok(seq: ClassSequence) -> bool:
    if not seq.classes:
        return False
    return any(lam == (seq.n,) for lam in seq.classes[0].parts)


def xi_values(seq: ClassSequence, cap: int | None = None) -> list[Fraction]:
    """[phi_i, phi_i]_seq for every i, after checking the off-diagonal entries vanish."""
    if not _first_class_ok(seq):
        raise ValueError("the first class must have a component equal to (n)")
    kernel = kernel_for_sequence(seq, cap)
    rows = phi_table(seq.r, seq.n).rows()
    out = []
    for i, a in enumerate(rows):
        for j, b in enumerate(rows):
            v = bracket(a, b, kernel)
            if i == j:
                out.append(v)
            elif v != 0:
                raise ConsistencyError(f"[phi_{i}, phi_{j}] = {v} for sequence {seq.to_json()}")
    return out


def xi_value(seq: ClassSequence, i: int, cap: int | None = None) -> Fraction:
    vals = xi_values(seq, cap)
    if not 0 <= i < len(vals):
        raise ValueError(f"index {i} out of range 0..{len(vals) - 1}")
    return vals[i]


def _hooks_in_block(r: int, n: int, i: int) -> list[HookLabel]:
    if r == 1:
        return [HookLabel(1, n, EPSILON, i)]
    out = []
    if i < n:
        out.append(HookLabel(r, n, ETA, i, 0))
    if i > 0:
        out.extend(HookLabel(r, n, ETA, i - 1, s) for s in range(1, r))
    return out


def _zeta_mul(a: list[int], b: list[int], r: int) -> list[int]:
    out = [0] * r
    for e, x in enumerate(a):
        if x:
            for f, y in enumerate(b):
                out[(e + f) % r] += x * y
    return out


def xi_by_characters(seq: ClassSequence, i: int) -> Fraction:
    """sum over the hook block of prod_t chi(K_t) / chi(1)^(m-2), from brute-force character values."""
    r, n, m = seq.r, seq.n, len(seq)
    # single terms may be irrational; only the block sum has to be rational
    acc = [Fraction(0)] * r
    for label in _hooks_in_block(r, n, i):
        vec = [1] + [0] * (r - 1)
        for t in seq.classes:
            vec = _zeta_mul(vec, hook_character_on_type(label, t), r)
        scale = 1 / Fraction(label.degree()) ** (m - 2)
        acc = [a + scale * v for a, v in zip(acc, vec)]
    value = reduce_cyclotomic(acc, r) if r > 1 else Polynomial(acc)
    if value.degree not in (None, 0):
        raise ConsistencyError(f"character sum for block {i} is not rational")
    return value.coeff(0)


def single_class_orthogonality(r: int, n: int, sigma: WreathType, cap: int | None = None) -> list[list[Fraction]]:
    """(1/|G|) sum_uv phi_i(C_u) phi_j(C_v) |sigma C_u cap C_v|, for sigma with a component (n) of nonzero color."""
    if r < 2 or sigma.r != r or sigma.n != n:
        raise ValueError("need r >= 2 and a class of G(r,1,n)")
    if not any(lam == (n,) for pos, lam in enumerate(sigma.parts) if pos > 0):
        raise ValueError("sigma must have lambda^s = (n) for some s > 0")
    kernel = kernel_for_sequence(ClassSequence((sigma,), r, n), cap)
    rows = phi_table(r, n).rows()
    return [[bracket(a, b, kernel) for b in rows] for a in rows]


def power_rows(r: int, n: int) -> list[LengthClassFunction]:
    """The functions ell -> (r i + 1)^ell, i = 0..top."""
    return [LengthClassFunction.power(r, n, r * i + 1) for i in range(top_index(r, n) + 1)]


def gram_schmidt(vectors: Sequence[LengthClassFunction], inner=bracket_spectral):
    """Orthonormalize in order; returns (basis, L) with basis_i = sum_j L[i][j] vectors_j.

    Norms must be squares of rationals; the sign keeps the coefficient of the
    newest vector positive.
    """
    basis: list[LengthClassFunction] = []
    coeffs: list[list[Fraction]] = []
    m = len(vectors)
    for i, v in enumerate(vectors):
        w = v
        c = [Fraction(0)] * m
        c[i] = Fraction(1)
        for e, ce in zip(basis, coeffs):
            p = inner(v, e)
            w = w - e * p
            c = [x - p * y for x, y in zip(c, ce)]
        norm = rational_sqrt(inner(w, w))
        if norm == 0:
            raise ValueError("vectors are linearly dependent")
        basis.append(w * (1 / norm))
        coeffs.append([x / norm for x in c])
    return basis, coeffs


def gram_schmidt_foulkes(r: int, n: int, with_matrix: bool = False):
    """Gram-Schmidt on the power rows; checks the result is the Foulkes table."""
    basis, L = gram_schmidt(power_rows(r, n))
    entries = []
    for f in basis:
        cols = f.columns()
        if any(v.denominator != 1 for v in cols):
            raise ConsistencyError("Gram-Schmidt produced a non-integral character")
        entries.append(tuple(int(v) for v in cols))
    table = FoulkesTable(r, n, tuple(entries))
    if table != phi_table(r, n):
        raise ConsistencyError(f"Gram-Schmidt output differs from the Foulkes table for G({r},1,{n})")
    for i, row in enumerate(L):
        for j, v in enumerate(row):
            expected = (-1) ** (i - j) * comb(n + 1, i - j) if j <= i else 0
            if v != expected:
                raise ConsistencyError(f"change of basis entry ({i},{j}) is {v}, expected {expected}")
    return (table, L) if with_matrix else table
