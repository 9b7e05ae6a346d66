"""Carries Markov chains: spectral construction, bracket form, enumeration and simulation.

``ordinary``: n numbers in base b >= 2, carries 0..n-1.
``balanced``: N (even) numbers with digits in {-(b-1)/2, ..., (b-1)/2} for odd
b >= 3, carries -N/2..N/2 stored at indices 0..N.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapExceededError, ConsistencyError
from .inner import bracket_spectral
from .numerics import matmul, rational_to_str, solve_linear, transpose
from .characters import eps_coeff_matrix
from .tables import LengthClassFunction, phi_table

ORDINARY = "ordinary"
BALANCED = "balanced"
DEFAULT_TUPLE_CAP = 10**7


@dataclass(frozen=True)
class ChainFlavor:
    kind: str
    n: int
    base: int

    def __post_init__(self):
        if self.kind == ORDINARY:
            if self.n < 1 or self.base < 2:
                raise ValueError("ordinary carries need n >= 1 and base >= 2")
        elif self.kind == BALANCED:
            if self.n < 2 or self.n % 2:
                raise ValueError("balanced carries need an even number N >= 2 of addends")
            if self.base < 3 or self.base % 2 == 0:
                raise ValueError("balanced carries need an odd base >= 3")
        else:
            raise ValueError(f"unknown chain kind {self.kind!r}")

    @classmethod
    def ordinary(cls, n: int, base: int) -> "ChainFlavor":
        return cls(ORDINARY, n, base)

    @classmethod
    def balanced(cls, N: int, base: int) -> "ChainFlavor":
        return cls(BALANCED, N, base)

    @property
    def r(self) -> int:
        return 1 if self.kind == ORDINARY else 2

    @property
    def states(self) -> list[int]:
        if self.kind == ORDINARY:
            return list(range(self.n))
        return list(range(-self.n // 2, self.n // 2 + 1))

    @property
    def digits(self) -> np.ndarray:
        if self.kind == ORDINARY:
            return np.arange(self.base)
        h = (self.base - 1) // 2
        return np.arange(-h, h + 1)

    def next_carry(self, carry, digit_sum):
        """Works elementwise on numpy arrays."""
        if self.kind == ORDINARY:
            return (carry + digit_sum) // self.base
        # kappa + sum = kappa' b + rho with rho balanced
        return (carry + digit_sum + (self.base - 1) // 2) // self.base


@dataclass(frozen=True)
class CarriesChain:
    flavor: ChainFlavor
    M: tuple[tuple[Fraction, ...], ...]
    method: str = ""

    def as_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self.M]

    def to_json(self) -> dict:
        return {
            "kind": self.flavor.kind,
            "n": self.flavor.n,
            "base": self.flavor.base,
            "states": self.flavor.states,
            "method": self.method,
            "M": [[rational_to_str(v) for v in row] for row in self.M],
        }

    def to_csv(self) -> str:
        return "\n".join(",".join(rational_to_str(v) for v in row) for row in self.M) + "\n"


def _freeze(rows) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


def chain_spectral(flavor: ChainFlavor) -> CarriesChain:
    """M = Phi^-t diag(1, 1/b, 1/b^2, ...) Phi^t."""
    r, n, b = flavor.r, flavor.n, flavor.base
    table = phi_table(r, n)
    m = table.size
    diag = [[Fraction(1, b**i) if i == j else Fraction(0) for j in range(m)] for i in range(m)]
    M = matmul(matmul(eps_coeff_matrix(r, n), diag), transpose(table.as_lists()))
    return CarriesChain(flavor, _freeze(M), "spectral")


def chain_bracket(flavor: ChainFlavor) -> CarriesChain:
    """M(i, j) = [phi_i, b^(ell - n) phi_j]."""
    r, n, b = flavor.r, flavor.n, flavor.base
    rows = phi_table(r, n).rows()
    weight = LengthClassFunction.from_function(r, n, lambda l: Fraction(b) ** (l - n))
    M = [[bracket_spectral(a, weight * c) for c in rows] for a in rows]
    return CarriesChain(flavor, _freeze(M), "bracket")


def _digit_sums(flavor: ChainFlavor, cap: int) -> np.ndarray:
    count = flavor.base**flavor.n
    if count > cap:
        raise CapExceededError("digit tuple enumeration", count, cap, "--max-tuples")
    sums = np.zeros((1,) * flavor.n, dtype=np.int64)
    for axis in range(flavor.n):
        shape = [1] * flavor.n
        shape[axis] = flavor.base
        sums = sums + flavor.digits.reshape(shape)
    return sums.reshape(-1)


def carries_enumerate(flavor: ChainFlavor, cap: int | None = None) -> CarriesChain:
    """Exact probabilities from all b^n digit tuples."""
    cap = DEFAULT_TUPLE_CAP if cap is None else cap
    sums = _digit_sums(flavor, cap)
    states = flavor.states
    offset = -states[0]
    total = len(sums)
    M = []
    for kappa in states:
        nxt = flavor.next_carry(kappa, sums) + offset
        if nxt.min() < 0 or nxt.max() >= len(states):
            raise ConsistencyError(f"carry left the state space from {kappa}")
        counts = np.bincount(nxt, minlength=len(states))
        M.append([Fraction(int(c), total) for c in counts])
    return CarriesChain(flavor, _freeze(M), "enumeration")


@dataclass(frozen=True)
class SimulationResult:
    flavor: ChainFlavor
    steps: int
    seed: int
    counts: tuple[tuple[int, ...], ...]

    @property
    def visits(self) -> list[int]:
        return [sum(row) for row in self.counts]

    def empirical(self) -> list[list[float]]:
        return [[c / v if v else 0.0 for c in row] for row, v in zip(self.counts, self.visits)]

    def z_scores(self, exact: CarriesChain) -> list[list[float]]:
        """(empirical - p) / sqrt(p (1 - p) / visits), 0 where the entry is deterministic."""
        out = []
        for row, v, prow in zip(self.counts, self.visits, exact.M):
            zrow = []
            for c, p in zip(row, prow):
                p = float(p)
                var = p * (1 - p) / v if v else 0.0
                zrow.append((c / v - p) / var**0.5 if var > 0 else (0.0 if v == 0 or c / v == p else float("inf")))
            out.append(zrow)
        return out

    def to_json(self) -> dict:
        return {
            "steps": self.steps,
            "seed": self.seed,
            "generator": "numpy PCG64 (default_rng)",
            "counts": [list(row) for row in self.counts],
            "empirical": [[repr(float(x)) for x in row] for row in self.empirical()],
        }


def carries_simulate(flavor: ChainFlavor, steps: int, seed: int, start: int | None = None) -> SimulationResult:
    """Run the carries process with fresh uniform digits at every step."""
    if steps < 1:
        raise ValueError("steps must be positive")
    rng = np.random.default_rng(seed)
    digits = flavor.digits
    sums = digits[rng.integers(0, flavor.base, size=(steps, flavor.n))].sum(axis=1)
    states = flavor.states
    offset = -states[0]
    m = len(states)
    carry = states[0] if start is None else start
    counts = np.zeros((m, m), dtype=np.int64)
    for s in sums.tolist():
        nxt = flavor.next_carry(carry, s)
        counts[carry + offset, nxt + offset] += 1
        carry = nxt
    return SimulationResult(flavor, steps, seed, tuple(tuple(int(c) for c in row) for row in counts))


def stationary_distribution(chain: CarriesChain) -> list[Fraction]:
    """The probability vector pi with pi M = pi."""
    m = len(chain.M)
    # (M^t - I) pi = 0 with the last equation replaced by sum(pi) = 1
    A = [[chain.M[j][i] - (1 if i == j else 0) for j in range(m)] for i in range(m)]
    A[-1] = [Fraction(1)] * m
    rhs = [[Fraction(0)] for _ in range(m - 1)] + [[Fraction(1)]]
    return [row[0] for row in solve_linear(A, rhs)]
