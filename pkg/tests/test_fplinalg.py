import numpy as np
import pytest

from koszulkit import fplinalg as fl
from koszulkit.errors import ContainmentViolation, DimensionMismatch
from koszulkit.fplinalg import Subspace

from oracles import kernel_size_by_enumeration, naive_rank


@pytest.mark.parametrize("p", [2, 3, 5])
def test_rank_matches_enumerated_kernel(p):
    rng = np.random.default_rng(p)
    for _ in range(40):
        rows, cols = rng.integers(1, 5), rng.integers(1, 5)
        m = rng.integers(0, p, (rows, cols))
        k = kernel_size_by_enumeration(m, p)
        assert p ** (cols - fl.rank(m, p)) == k
        assert fl.kernel_basis(m, p).dim == cols - fl.rank(m, p)


def test_blocked_rank_agrees_with_elimination():
    rng = np.random.default_rng(7)
    for p in (2, 3, 65521):
        a = rng.integers(0, p, (300, 40)) @ rng.integers(0, p, (40, 900))
        a %= p
        assert fl._rank_blocked(a, p) == len(fl.rref(a, p)[1]) == 40


def test_matmul_exact_for_large_primes():
    p = 65521
    rng = np.random.default_rng(1)
    a = rng.integers(0, p, (5, 3000))
    b = rng.integers(0, p, (3000, 4))
    want = [[sum(int(x) * int(y) for x, y in zip(a[i], b[:, j])) % p for j in range(4)]
            for i in range(5)]
    assert fl.matmul(a, b, p).tolist() == want


def test_rref_is_canonical():
    p = 5
    rng = np.random.default_rng(3)
    m = rng.integers(0, p, (3, 6))
    g = rng.integers(0, p, (3, 3))
    while naive_rank(g, p) < 3:
        g = rng.integers(0, p, (3, 3))
    assert Subspace.span(m, p) == Subspace.span(g @ m % p, p)


def test_kernel_vectors_are_in_kernel():
    p = 3
    m = np.array([[1, 2, 0, 1], [0, 1, 1, 1]])
    k = fl.kernel_basis(m, p)
    assert not fl.matmul(m, k.basis.T, p).any()
    assert k.dim == 2


def test_inverse():
    p = 7
    m = np.array([[1, 2], [3, 4]])
    assert (fl.matmul(m, fl.inverse(m, p), p) == np.eye(2)).all()
    with pytest.raises(ValueError):
        fl.inverse([[1, 2], [2, 4]], p)


def test_subspace_algebra():
    p = 2
    U = Subspace.span([[1, 0, 0, 0], [0, 1, 0, 0]], p)
    W = Subspace.span([[0, 1, 0, 0], [0, 0, 1, 0]], p)
    assert (U + W).dim == 3
    assert U.intersection(W) == Subspace.span([[0, 1, 0, 0]], p)
    assert U.dim + W.dim == (U + W).dim + U.intersection(W).dim
    assert fl.quotient_dim(U + W, U) == 1
    with pytest.raises(ContainmentViolation):
        fl.quotient_dim(U, W)
    with pytest.raises(ContainmentViolation):
        U.coordinates([0, 0, 1, 0])
    assert U.coordinates([1, 1, 0, 0]).tolist() == [[1, 1]]


def test_orthogonal_complement_dimension_and_double_dual():
    rng = np.random.default_rng(11)
    for p in (2, 3):
        for _ in range(20):
            S = Subspace.span(rng.integers(0, p, (3, 6)), p)
            C = fl.orthogonal_complement(S)
            assert S.dim + C.dim == 6
            assert fl.orthogonal_complement(C) == S


def test_annihilator_checks_shapes():
    S = Subspace.span([[1, 0, 0]], 2)
    with pytest.raises(DimensionMismatch):
        fl.annihilator(S, np.eye(2, dtype=np.int64))


def test_zero_width_subspaces():
    Z = Subspace.zero(3, 0)
    assert Z.dim == 0
    assert Z.reduce(np.zeros((0,), dtype=np.int64)).shape == (0, 0)
    assert fl.rank(np.zeros((0, 4), dtype=np.int64), 3) == 0


@pytest.mark.parametrize("bad", [1, 4, 9, 2**16 + 1])
def test_rejects_non_primes(bad):
    with pytest.raises(ValueError):
        fl.check_prime(bad)
