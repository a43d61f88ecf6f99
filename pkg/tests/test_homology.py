from math import comb

import numpy as np
import pytest

from koszulkit.errors import AlgebraNotSymmetric, TruncationInsufficient
from koszulkit.graded import (algebra_as_module, quotient_module, residue_module,
                              submodule_from_generators, trivial_action_module, zero_module)
from koszulkit.homology import (CellCache, MinimalResolution, bar_differential, bar_space_dim,
                                homology_dim, homology_table, koszul_complex_tor)
from koszulkit.monomial import exterior_algebra, symmetric_algebra, truncation_module
from koszulkit.quadratic import QuadraticAlgebraPresentation, realize_algebra

from builders import random_quotient
from oracles import naive_bar_homology

ENGINES = ("bar", "koszul", "resolution")


def free_group_cohomology_module(p, D):
    L = exterior_algebra(2, p, D)
    H = quotient_module(algebra_as_module(L), truncation_module(2, p, D, 2, L))
    return L, H


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("method", ENGINES)
def test_free_group_module_formula(p, method):
    L, H = free_group_cohomology_module(p, 6)
    for i in range(6):
        for j in range(7):
            want = 1 if (i, j) == (0, 0) else (i if j == i + 1 and i >= 1 else 0)
            assert homology_dim(L, H, i, j, method) == want, (i, j)


def test_bar_space_dimension_example():
    L = exterior_algebra(2, 2, 4)
    assert bar_space_dim(L, residue_module(L), 2, 3) == 4


def test_engines_match_naive_bar_oracle():
    rng = np.random.default_rng(17)
    algebras = [exterior_algebra(2, 3, 4), symmetric_algebra(2, 2, 4), exterior_algebra(1, 5, 4)]
    # a non-monomial quadratic algebra without a closed-form Koszul complex
    pres = QuadraticAlgebraPresentation.from_relations(3, 2, [[1, 1, 0, 2], [0, 1, 1, 0]])
    algebras.append(realize_algebra(pres, 4))
    for A in algebras:
        mods = [trivial_action_module(A, 0, [1, 1, 0, 0, 0]),
                quotient_module(algebra_as_module(A), submodule_from_generators(
                    algebra_as_module(A), [(2, np.ones(A.dims[2], dtype=np.int64))]))]
        for _ in range(4):
            degs = [0] if rng.random() < 0.5 else [0, 1]
            mods.append(random_quotient(rng, A, degs, int(rng.integers(1, 4)), rel_span=1))
        for M in mods:
            for i in range(4):
                for j in range(i, 5):
                    want = naive_bar_homology(A, M, i, j)
                    methods = ENGINES if A.kind else ("bar", "resolution")
                    for m in methods:
                        assert homology_dim(A, M, i, j, m) == want, (A, M, i, j, m)


@pytest.mark.parametrize("p", [2, 3])
def test_exterior_residue_diagonal(p):
    for n in range(1, 4):
        L = exterior_algebra(n, p, 5)
        T = homology_table(L, residue_module(L), 5, 5)
        for (i, j), d in T.entries.items():
            assert d == (comb(n + i - 1, i) if i == j else 0)


def test_free_module_is_concentrated_in_degree_zero():
    for A in (exterior_algebra(2, 3, 4), symmetric_algebra(2, 3, 4)):
        T = homology_table(A, algebra_as_module(A), 4, 4, method="bar")
        assert T.nonzero() == {(0, 0): 1}


def test_h0_counts_generators():
    L = exterior_algebra(2, 3, 3)
    M = trivial_action_module(L, 0, [1, 2, 3, 0])
    for j in range(3):
        assert homology_dim(L, M, 0, j) == M.dim(j)
    # the free module needs only its generator
    assert homology_dim(L, algebra_as_module(L), 0, 1) == 0


def test_certification_rejects_cells_beyond_truncation():
    L = exterior_algebra(2, 3, 3)
    with pytest.raises(TruncationInsufficient):
        homology_dim(L, residue_module(L), 4, 4)
    with pytest.raises(TruncationInsufficient):
        homology_dim(L, algebra_as_module(L), 1, 5)


def test_zero_module_table_is_zero():
    L = exterior_algebra(2, 3, 3)
    assert homology_table(L, zero_module(L), 3, 3).nonzero() == {}


def test_bar_differential_squares_to_zero():
    L, H = free_group_cohomology_module(3, 5)
    for i in range(1, 4):
        for j in range(i + 1, 6):
            lo, hi = bar_differential(L, H, i, j), bar_differential(L, H, i + 1, j)
            if lo.size and hi.size:
                assert not (lo @ hi % 3).any()


def test_koszul_complex_tor_over_symmetric_algebra():
    for n in (1, 2, 3):
        S = symmetric_algebra(n, 3, 5)
        for i in range(n + 1):
            assert koszul_complex_tor(S, residue_module(S), i, i) == comb(n, i)
        assert koszul_complex_tor(S, algebra_as_module(S), 1, 1) == 0
    with pytest.raises(AlgebraNotSymmetric):
        koszul_complex_tor(exterior_algebra(2, 3, 3), residue_module(exterior_algebra(2, 3, 3)), 1, 1)


def test_minimal_resolution_counts():
    L = exterior_algebra(2, 2, 4)
    R = MinimalResolution(L, residue_module(L), 3, 3)
    assert [R.dim(i, i) for i in range(4)] == [1, 2, 3, 4]


def test_cache_round_trip_and_parallel_determinism(tmp_path):
    L, H = free_group_cohomology_module(3, 5)
    plain = homology_table(L, H, 4, 5)
    cache = CellCache(tmp_path)
    first = homology_table(L, H, 4, 5, cache=cache)
    assert any(tmp_path.iterdir())
    second = homology_table(L, H, 4, 5, cache=cache, jobs=3)
    assert plain.entries == first.entries == second.entries
    assert list(plain.entries) == list(second.entries)
