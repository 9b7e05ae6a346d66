"""Cross-check suite: every identity recomputed by at least two routes."""

from __future__ import annotations

from math import factorial
from fractions import Fraction
from typing import Callable, Iterator

from .carries import ChainFlavor, carries_enumerate, chain_bracket, chain_spectral, stationary_distribution
from .errors import ConsistencyError
from .idempotents import verify_transition
from .inner import bracket, canonical_kernel, gram_schmidt_foulkes, sequence_a, xi_by_characters, xi_values
from .products import c_closed_form_tensor, c_combinatorial_tensor, c_delsarte, c_spectral
from .report import Check
from .tables import (
    check_branching,
    check_regular_decomposition,
    delsarte_table,
    descent_histogram,
    phi_table,
    phi_table_recursive,
    validate_descent_order,
)
from .zagier import all_classes, p_bruteforce, p_distribution, verify_zagier_identity

LEVELS = {
    # largest sizes per family: (S_n n, G(r,1,n) r, G(r,1,n) n)
    "quick": {"sn": 4, "r": 2, "rn": 3},
    "full": {"sn": 6, "r": 3, "rn": 4},
}


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise ConsistencyError(msg)


def _identity(m: int) -> list[list[int]]:
    return [[int(i == j) for j in range(m)] for i in range(m)]


def _groups(level: dict) -> Iterator[tuple[int, int]]:
    for n in range(1, level["sn"] + 1):
        yield 1, n
    for r in range(2, level["r"] + 1):
        for n in range(1, level["rn"] + 1):
            yield r, n


def _tables(level):
    for r, n in _groups(level):
        _expect(phi_table(r, n) == phi_table_recursive(r, n), f"recursive table differs for G({r},1,{n})")
        if r == 1:
            delsarte_table(n)


def _degrees(level):
    for r, n in _groups(level):
        validate_descent_order(r, n)
    _expect(descent_histogram(1, 3) == (1, 4, 1), "S_3 descent histogram")


def _orthonormality(level):
    for r, n in _groups(level):
        kernel = canonical_kernel(r, n)
        rows = phi_table(r, n).rows()
        gram = [[bracket(a, b, kernel) for b in rows] for a in rows]
        _expect(gram == _identity(len(rows)), f"Foulkes rows not orthonormal for G({r},1,{n})")


def _xi(level):
    for r in range(2, level["r"] + 1):
        for n in range(2, level["rn"] + 1):
            for k in range(1, 6):
                seq = sequence_a(k, r, n)
                vals = xi_values(seq)
                _expect(vals == [xi_by_characters(seq, i) for i in range(n + 1)], f"xi mismatch a{k} G({r},1,{n})")


def _products(level):
    for r, n in _groups(level):
        spectral = c_spectral(r, n)
        _expect(spectral == c_closed_form_tensor(r, n), f"closed form differs for G({r},1,{n})")
        _expect(spectral == c_combinatorial_tensor(r, n), f"descent counts differ for G({r},1,{n})")
        if r == 1:
            _expect(spectral == c_delsarte(n), f"Delsarte recursion differs for n={n}")


def _idempotents(level):
    for r, n in _groups(level):
        failed = [c.name for c in verify_transition(r, n) if not c.passed]
        _expect(not failed, f"G({r},1,{n}): {', '.join(failed)}")


def _carries(level):
    for n in range(1, min(level["sn"], 4) + 1):
        for b in (2, 3, 10):
            f = ChainFlavor.ordinary(n, b)
            s = chain_spectral(f)
            _expect(s.M == chain_bracket(f).M == carries_enumerate(f).M, f"carries routes differ n={n} b={b}")
            want = [Fraction(d, factorial(n)) for d in phi_table(1, n).degrees]
            _expect(stationary_distribution(s) == want, f"stationary vector n={n} b={b}")
    f = ChainFlavor.balanced(2, 3)
    _expect(chain_spectral(f).M == chain_bracket(f).M == carries_enumerate(f).M, "balanced chain N=2 b=3")


def _zagier(level):
    for n in range(1, level["sn"] + 1):
        for K in all_classes(n):
            _expect(p_distribution(K) == p_bruteforce(K), f"distribution differs for class {K}")
            _expect(all(c.passed for c in verify_zagier_identity(K)), f"series identity fails for class {K}")


def _gram_schmidt(level):
    for r, n in _groups(level):
        gram_schmidt_foulkes(r, n)


def _branching(level):
    for r, n in _groups(level):
        check_regular_decomposition(r, n)
        if n >= 2:
            check_branching(r, n)


SUITE: list[tuple[str, Callable[[dict], None]]] = [
    ("tables: closed form, recursion, Delsarte", _tables),
    ("degrees equal descent histograms", _degrees),
    ("orthonormality under the canonical kernel", _orthonormality),
    ("xi values by kernel and by characters", _xi),
    ("product constants by every route", _products),
    ("idempotents and transition matrix", _idempotents),
    ("carries chains", _carries),
    ("cycle count distribution and series identity", _zagier),
    ("Gram-Schmidt recovers the table", _gram_schmidt),
    ("branching and regular decomposition", _branching),
]


def run_suite(level: str = "quick") -> list[Check]:
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}")
    sizes = LEVELS[level]
    out = []
    for name, fn in SUITE:
        try:
            fn(sizes)
            out.append(Check(name, True))
        except (ConsistencyError, ValueError) as exc:
            out.append(Check(name, False, str(exc)))
    return out
