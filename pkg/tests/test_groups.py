import json
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foulkes.errors import CapExceededError
from foulkes.groups import (
    Permutation,
    WreathElement,
    WreathType,
    class_size,
    des,
    ell,
    enumerate_group,
    group_order,
    group_table,
    length_class_sizes,
    multipartitions,
    partitions,
    wreath_type,
)
from foulkes.tables import eulerian_numbers

# F_13 contains an element of order r for r in 1..4, and ell(x) = dim ker(x - 1)
# survives reduction there: an r-colored cycle fixes a line iff its color product is 0.
P = 13


def _zeta_mod_p(r):
    return pow(2, 12 // r, P)


def _rank_mod_p(rows):
    rows = [list(row) for row in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] % P), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, P)
        rows[rank] = [v * inv % P for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % P:
                f = rows[i][col]
                rows[i] = [(a - f * b) % P for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _fixed_space_dim(x: WreathElement) -> int:
    z = _zeta_mod_p(x.r)
    n = x.n
    m = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            e = x.matrix_entry(i, j)
            if e is not None:
                m[i - 1][j - 1] = pow(z, e, P)
        m[i - 1][i - 1] -= 1
    return n - _rank_mod_p(m)


def _as_matrix(x: WreathElement):
    z = _zeta_mod_p(x.r)
    return np.array(
        [[0 if x.matrix_entry(i, j) is None else pow(z, x.matrix_entry(i, j), P) for j in range(1, x.n + 1)]
         for i in range(1, x.n + 1)],
        dtype=np.int64,
    )


def test_permutation_basics():
    p = Permutation((2, 3, 1))
    assert p.cycles() == [(1, 2, 3)]
    assert p.cycle_type() == (3,)
    assert p.sign() == 1
    assert p * p.inverse() == Permutation.identity(3)
    assert Permutation.from_cycles(4, [(1, 3)]).one_line == (3, 2, 1, 4)
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))


def test_ell_and_type_examples():
    assert ell(Permutation((1, 2, 3))) == 3
    assert ell(Permutation((2, 1, 3))) == 2
    x = WreathElement.of((2, 1, 3), (1, 0, 0), r=2)  # a negative 2-cycle plus a fixed point
    assert wreath_type(x) == WreathType(((1,), (2,)))
    assert ell(x) == 1
    y = WreathElement.of((1, 2), (1, 1), r=3)
    assert wreath_type(y) == WreathType(((), (1, 1), ()))
    assert ell(y) == 0


def test_descent_examples():
    assert des(Permutation((1, 2, 3))) == 0
    assert des(Permutation((3, 2, 1))) == 2
    assert des(Permutation((2, 1, 3))) == 1
    # a colored letter sits below the sentinel, so it opens with a descent
    assert des(WreathElement.of((1, 2), (1, 0), r=2)) == 1
    assert des(WreathElement.of((1, 2), (0, 0), r=2)) == 0


def test_enumeration_counts():
    for r in range(1, 4):
        for n in range(1, 4):
            elems = list(enumerate_group(r, n))
            assert len(elems) == group_order(r, n) == len(set(elems))


def test_partition_counts():
    assert [len(partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    # conjugacy classes of B_n: number of bipartitions
    assert [len(multipartitions(2, n)) for n in range(1, 5)] == [2, 5, 10, 20]


@pytest.mark.parametrize("r,n", [(1, 4), (2, 3), (3, 2), (4, 2), (2, 1)])
def test_ell_is_fixed_space_dimension(r, n):
    for x in enumerate_group(r, n):
        assert ell(x) == _fixed_space_dim(x)


@pytest.mark.parametrize("r,n", [(1, 4), (2, 3), (3, 3), (4, 2)])
def test_class_sizes_match_enumeration(r, n):
    counts = Counter(wreath_type(x) for x in enumerate_group(r, n))
    assert set(counts) == set(multipartitions(r, n))
    for t, c in counts.items():
        assert class_size(t) == c


def test_length_class_sizes_stirling():
    # unsigned Stirling numbers of the first kind for S_4
    assert length_class_sizes(1, 4) == {4: 1, 3: 6, 2: 11, 1: 6}
    for r, n in [(2, 3), (3, 3), (4, 2)]:
        G = group_table(r, n)
        assert length_class_sizes(r, n) == {l: int(np.sum(G.ell == l)) for l in length_class_sizes(r, n)}


def test_ell_is_class_function():
    G = group_table(3, 3)
    for c in range(len(G.class_reps)):
        assert len(set(G.ell[G.class_id == c].tolist())) == 1


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_descent_histogram_matches_eulerian(r):
    for n in range(1, 5 if r < 4 else 5):
        G = group_table(r, n, cap=group_order(r, n))
        hist = tuple(np.bincount(G.des, minlength=len(eulerian_numbers(r, n))).tolist())
        assert hist == eulerian_numbers(r, n)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_multiplication_is_matrix_product(r, n, data):
    G = group_table(r, n)
    a, b = (data.draw(st.integers(0, G.order - 1)) for _ in range(2))
    x, y = G.wreath_element(a), G.wreath_element(b)
    assert np.array_equal(_as_matrix(x * y), _as_matrix(x) @ _as_matrix(y) % P)
    assert G.index_of(x * y) == G.left_mul(a)[b] == G.right_mul(b)[a]
    assert x * x.inverse() == WreathElement.identity(r, n)
    assert G.index_of(x.inverse()) == G.inverse[a]


def test_table_arrays_agree_with_scalar_functions():
    G = group_table(3, 3)
    for idx in range(0, G.order, 7):
        x = G.wreath_element(idx)
        assert G.ell[idx] == ell(x)
        assert G.des[idx] == des(x)
        assert G.class_types[G.class_id[idx]] == wreath_type(x)


def test_json_round_trip():
    x = WreathElement.of((3, 1, 2), (2, 0, 1), r=3)
    assert WreathElement.from_json(json.loads(json.dumps(x.to_json())), 3) == x


def test_cap_exceeded():
    with pytest.raises(CapExceededError, match="--max-group-size"):
        group_table(4, 5, cap=1000)
    with pytest.raises(CapExceededError):
        list(enumerate_group(2, 6, cap=10))


def test_invalid_groups_rejected():
    with pytest.raises(ValueError):
        list(enumerate_group(0, 3))
    with pytest.raises(ValueError):
        WreathElement.of((1, 2), (0,), r=2)
