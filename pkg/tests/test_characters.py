from fractions import Fraction
from math import comb, factorial

import pytest

from foulkes.characters import (
    EPSILON,
    ETA,
    HookLabel,
    char_poly_of_class,
    character_degree,
    eps_coeff_matrix,
    hook_character_on_type,
    hook_character_value,
    hook_content_moment,
    hook_eps_values_sn,
)
from foulkes.groups import (
    WreathElement,
    WreathType,
    class_size,
    enumerate_group,
    group_order,
    multipartitions,
    partitions,
    wreath_type,
)
from foulkes.numerics import Polynomial, binom_int, binom_shift_poly, matmul, reduce_cyclotomic, transpose
from foulkes.tables import phi_table

X = Polynomial.x()


def _to_rational(vec, r):
    """A Z[zeta] vector that must reduce to a rational number."""
    p = reduce_cyclotomic(vec, r)
    assert p.degree in (None, 0), f"not rational: {vec}"
    return p.coeff(0)


def _labels(r, n):
    if r == 1:
        return [HookLabel(1, n, EPSILON, k) for k in range(n)]
    eps = [HookLabel(r, n, EPSILON, k) for k in range(n + 1)]
    eta = [HookLabel(r, n, ETA, k, s) for s in range(r) for k in range(n)]
    return eps + eta


def test_char_poly_examples():
    for n in range(1, 6):
        assert char_poly_of_class((1,) * n) == (1 - X) ** n
        assert char_poly_of_class((n,)) == 1 - X**n
    assert char_poly_of_class((2, 1)) == Polynomial((1, -1, -1, 1))


def test_hook_eps_examples():
    for n in range(1, 7):
        assert hook_eps_values_sn((1,) * n) == tuple(comb(n - 1, k) for k in range(n))
        assert hook_eps_values_sn((n,)) == tuple((-1) ** k for k in range(n))
    assert hook_eps_values_sn((2, 1))[1] == 0


@pytest.mark.parametrize("n", range(1, 8))
def test_hook_eps_against_traces(n):
    for K in partitions(n):
        rep = WreathElement.of(_one_line(K))
        assert hook_eps_values_sn(K) == tuple(hook_character_value(HookLabel(1, n, EPSILON, k), rep)[0] for k in range(n))


def _one_line(K):
    img, start = [], 0
    for part in K:
        img += [start + i + 2 for i in range(part - 1)] + [start + 1]
        start += part
    return img


@pytest.mark.parametrize("n", range(1, 7))
def test_sn_moment_by_enumeration(n):
    # (1/n!) sum_pi X^ell(pi) eps_k(pi) = eps_k(1) * binom_shift_poly(n - k, n, 1)
    for k in range(n):
        acc = Polynomial()
        for K in partitions(n):
            acc = acc + Polynomial.monomial(len(K), class_size(_type1(K)) * hook_eps_values_sn(K)[k])
        assert acc * Fraction(1, factorial(n)) == binom_shift_poly(n - k, n, 1) * comb(n - 1, k)


def _type1(K):
    return WreathType((tuple(K),))


def test_moment_examples():
    for n in range(1, 6):
        hooks = hook_content_moment(1, (n,))
        for x in range(-3, 6):
            assert hooks(x) == binom_int(x + n - 1, n)
        assert hook_content_moment(1, (n,)) == binom_shift_poly(n, n, 1)
    assert hook_content_moment(1, (2,))(2) == 3
    for r in (2, 3):
        for n in range(1, 4):
            lam = HookLabel(r, n, EPSILON, 0).shape()
            assert hook_content_moment(r, lam, normalized=True) == binom_shift_poly(n, n, r)


@pytest.mark.parametrize("r,n", [(1, 4), (2, 2), (2, 3), (3, 2), (3, 3), (4, 2)])
def test_hook_moments_by_class_sums(r, n):
    """<X^ell, chi> from class sums of brute-force hook values equals the hook-content product."""
    order = group_order(r, n)
    for label in _labels(r, n):
        by_ell = {}
        for t in multipartitions(r, n):
            vec = by_ell.setdefault(t.ell, [0] * r)
            for e, v in enumerate(hook_character_on_type(label, t)):
                vec[e] += v * class_size(t)
        acc = Polynomial()
        for l, vec in by_ell.items():
            acc = acc + Polynomial.monomial(l, _to_rational(vec, r))
        assert acc * Fraction(1, order) == hook_content_moment(r, label.shape())
        ident = _to_rational(hook_character_value(label, WreathElement.identity(r, n)), r)
        assert ident == label.degree() == character_degree(label.shape())


def test_class_values_are_class_functions():
    for x in enumerate_group(2, 3):
        for label in _labels(2, 3):
            assert hook_character_value(label, x) == hook_character_on_type(label, wreath_type(x))


def test_eps_matrix_examples():
    assert eps_coeff_matrix(1, 2) == [[Fraction(1, 2), Fraction(1, 2)], [Fraction(1, 2), Fraction(-1, 2)]]
    for r in (1, 2, 3):
        for n in range(1, 6):
            lam = eps_coeff_matrix(r, n)
            assert [sum(row) for row in lam] == [1] + [0] * (len(lam) - 1)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_eps_matrix_inverts_table_transpose(r):
    for n in range(1, 7):
        lam = eps_coeff_matrix(r, n)
        m = len(lam)
        assert matmul(lam, transpose(phi_table(r, n).as_lists())) == [[int(i == j) for j in range(m)] for i in range(m)]


@pytest.mark.parametrize("r,n", [(1, 3), (1, 5), (2, 3), (2, 4), (3, 2), (3, 3)])
def test_phi_epsilon_orthogonality(r, n):
    """<phi_i, eps_k / eps_k(1)> = delta_ik, by class sums."""
    table = phi_table(r, n)
    order = group_order(r, n)
    for label in [l for l in _labels(r, n) if l.flavor == EPSILON]:
        deg = label.degree()
        for i in range(table.size):
            acc = [0] * r
            for t in multipartitions(r, n):
                w = class_size(t) * table.value(i, t.ell)
                acc = [a + w * v for a, v in zip(acc, hook_character_on_type(label, t))]
            assert _to_rational(acc, r) / (order * deg) == int(i == label.k)


@pytest.mark.parametrize("r,n", [(2, 3), (3, 3), (2, 4)])
def test_phi_eta_orthogonality(r, n):
    """<phi_i, eta_{s,k} / eta_{s,k}(1)> is delta_ik for s = 0 and delta_{i,k+1} otherwise."""
    table = phi_table(r, n)
    order = group_order(r, n)
    for label in [l for l in _labels(r, n) if l.flavor == ETA]:
        target = label.k if label.s == 0 else label.k + 1
        for i in range(table.size):
            acc = [0] * r
            for t in multipartitions(r, n):
                vec = hook_character_on_type(label, t)
                w = class_size(t) * table.value(i, t.ell)
                acc = [a + w * v for a, v in zip(acc, vec)]
            assert _to_rational(acc, r) / (order * label.degree()) == int(i == target)


def test_alternating_binomial_inverse():
    for n in range(0, 9):
        for u in range(0, 9):
            for v in range(0, 9):
                s = sum((-1) ** (u - j) * comb(n + 1, u - j) * comb(n + j - v, n) for j in range(0, u + 1) if n + j - v >= 0)
                assert s == int(u == v), (n, u, v)


def test_hook_label_validation():
    with pytest.raises(ValueError):
        HookLabel(1, 3, EPSILON, 3)
    with pytest.raises(ValueError):
        HookLabel(2, 3, ETA, 1, 2)
    with pytest.raises(ValueError):
        HookLabel(2, 3, "chi", 0)
