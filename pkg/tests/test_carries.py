from fractions import Fraction
from math import factorial

import numpy as np
import pytest

from foulkes.carries import (
    ChainFlavor,
    carries_enumerate,
    carries_simulate,
    chain_bracket,
    chain_spectral,
    stationary_distribution,
)
from foulkes.errors import CapExceededError
from foulkes.tables import phi_table

Q = Fraction


def test_n2_b2_example():
    f = ChainFlavor.ordinary(2, 2)
    want = [[Q(3, 4), Q(1, 4)], [Q(1, 4), Q(3, 4)]]
    assert chain_spectral(f).as_lists() == want
    assert carries_enumerate(f).as_lists() == want


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("b", [2, 3, 10])
def test_three_routes_agree(n, b):
    f = ChainFlavor.ordinary(n, b)
    s = chain_spectral(f)
    assert s.M == chain_bracket(f).M == carries_enumerate(f).M


@pytest.mark.parametrize("n", [5, 6])
def test_spectral_equals_bracket_larger(n):
    for b in (2, 3, 10):
        f = ChainFlavor.ordinary(n, b)
        assert chain_spectral(f).M == chain_bracket(f).M


@pytest.mark.parametrize("n", range(1, 7))
def test_stochastic_and_stationary(n):
    for b in (2, 3, 10):
        chain = chain_spectral(ChainFlavor.ordinary(n, b))
        for row in chain.M:
            assert sum(row) == 1
            assert all(v >= 0 and (b**n) % v.denominator == 0 for v in row)
        want = [Q(d, factorial(n)) for d in phi_table(1, n).degrees]
        assert stationary_distribution(chain) == want


def test_eigenvalues():
    f = ChainFlavor.ordinary(4, 3)
    M = np.array([[float(v) for v in row] for row in chain_spectral(f).M])
    assert np.allclose(sorted(np.linalg.eigvals(M).real), sorted(3.0 ** -np.arange(4)))
    # left eigenvectors are the Foulkes rows read as vectors over the columns
    table = np.array(phi_table(1, 4).as_lists(), dtype=float)
    for j in range(4):
        col = table[:, j]
        assert np.allclose(col @ M, 3.0**-j * col)


def test_asymmetry_witness():
    M = chain_spectral(ChainFlavor.ordinary(3, 2)).M
    assert any(M[i][j] != M[j][i] for i in range(3) for j in range(3))


def test_balanced_chain():
    f = ChainFlavor.balanced(2, 3)
    assert f.states == [-1, 0, 1]
    s = chain_spectral(f)
    assert s.M == chain_bracket(f).M == carries_enumerate(f).M
    assert [sum(row) for row in s.M] == [1, 1, 1]
    for N, b in [(2, 5), (4, 3)]:
        g = ChainFlavor.balanced(N, b)
        assert chain_spectral(g).M == carries_enumerate(g).M
        want = [Q(d, 2**N * factorial(N)) for d in phi_table(2, N).degrees]
        assert stationary_distribution(chain_spectral(g)) == want


def test_flavor_validation():
    with pytest.raises(ValueError):
        ChainFlavor.ordinary(0, 2)
    with pytest.raises(ValueError):
        ChainFlavor.ordinary(2, 1)
    with pytest.raises(ValueError):
        ChainFlavor.balanced(3, 3)
    with pytest.raises(ValueError):
        ChainFlavor.balanced(2, 4)


def test_enumeration_cap():
    with pytest.raises(CapExceededError, match="--max-tuples"):
        carries_enumerate(ChainFlavor.ordinary(4, 10), cap=100)


@pytest.mark.parametrize("flavor", [ChainFlavor.ordinary(2, 2), ChainFlavor.ordinary(3, 10), ChainFlavor.balanced(2, 3)])
def test_monte_carlo_within_five_sigma(flavor):
    exact = chain_spectral(flavor)
    sim = carries_simulate(flavor, 100_000, seed=12345)
    assert sum(sim.visits) == 100_000
    z = np.abs(np.array(sim.z_scores(exact)))
    assert z.max() < 5


def test_simulation_deterministic():
    f = ChainFlavor.ordinary(3, 3)
    a, b = carries_simulate(f, 2000, seed=7), carries_simulate(f, 2000, seed=7)
    assert a.counts == b.counts
    assert a.to_json() == b.to_json()
    assert carries_simulate(f, 2000, seed=8).counts != a.counts
    with pytest.raises(ValueError):
        carries_simulate(f, 0, seed=1)
