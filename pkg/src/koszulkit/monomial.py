"""Exterior and symmetric algebras with monomial bases, and modules built from them.

Basis orders are fixed so that every matrix is reproducible:

* exterior degree k: the k-subsets of ``range(n)`` in lexicographic order
  (``itertools.combinations``);
* symmetric degree k: multisets of variables in ``combinations_with_replacement``
  order, i.e. exponent vectors in descending lexicographic order.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb

import numpy as np

from . import fplinalg as fl
from .fplinalg import DTYPE, Subspace
from .graded import GradedModule, TruncatedGradedAlgebra, algebra_as_module, submodule


@lru_cache(maxsize=None)
def exterior_basis(n: int, k: int) -> tuple:
    return tuple(combinations(range(n), k))


@lru_cache(maxsize=None)
def exterior_index(n: int, k: int) -> dict:
    return {s: i for i, s in enumerate(exterior_basis(n, k))}


@lru_cache(maxsize=None)
def symmetric_basis(n: int, k: int) -> tuple:
    """Degree-k monomials as sorted tuples of variable indices."""
    return tuple(combinations_with_replacement(range(n), k))


@lru_cache(maxsize=None)
def symmetric_index(n: int, k: int) -> dict:
    return {m: i for i, m in enumerate(symmetric_basis(n, k))}


def exponent_vector(monomial, n: int) -> tuple:
    e = [0] * n
    for v in monomial:
        e[v] += 1
    return tuple(e)


def shuffle_sign(S, T) -> int:
    """(-1)^{#{(s, t) in S x T : s > t}}."""
    inversions = sum(1 for s in S for t in T if s > t)
    return -1 if inversions % 2 else 1


def wedge(S, T):
    """Product of exterior basis monomials: (sign, sorted union) or (0, None)."""
    if set(S) & set(T):
        return 0, None
    return shuffle_sign(S, T), tuple(sorted(S + T))


def exterior_algebra(n: int, p: int, D: int) -> TruncatedGradedAlgebra:
    """Lambda(F_p^n) truncated at degree D; e_i e_i = 0 also when p = 2."""
    dims = [comb(n, k) for k in range(D + 1)]
    products = {}
    for i in range(1, D + 1):
        for j in range(1, D + 1 - i):
            t = np.zeros((dims[i + j], dims[i], dims[j]), dtype=DTYPE)
            if i + j <= n:
                idx = exterior_index(n, i + j)
                for a, S in enumerate(exterior_basis(n, i)):
                    for b, T in enumerate(exterior_basis(n, j)):
                        sign, U = wedge(S, T)
                        if sign:
                            t[idx[U], a, b] = sign % p
            products[(i, j)] = fl.flat(t)
    return TruncatedGradedAlgebra.build(p, dims, products, name=f"Lambda(F_{p}^{n})",
                                        kind=("exterior", n), check=False)


def symmetric_algebra(n: int, p: int, D: int) -> TruncatedGradedAlgebra:
    """S(F_p^n) = F_p[x_0..x_{n-1}] truncated at degree D."""
    dims = [comb(n + k - 1, k) if n else int(k == 0) for k in range(D + 1)]
    products = {}
    for i in range(1, D + 1):
        for j in range(1, D + 1 - i):
            t = np.zeros((dims[i + j], dims[i], dims[j]), dtype=DTYPE)
            idx = symmetric_index(n, i + j)
            for a, S in enumerate(symmetric_basis(n, i)):
                for b, T in enumerate(symmetric_basis(n, j)):
                    t[idx[tuple(sorted(S + T))], a, b] = 1
            products[(i, j)] = fl.flat(t)
    return TruncatedGradedAlgebra.build(p, dims, products, name=f"S(F_{p}^{n})",
                                        kind=("symmetric", n), check=False)


def truncation_module(n: int, p: int, D: int, k: int,
                      exterior: TruncatedGradedAlgebra | None = None) -> GradedModule:
    """L_k: the Lambda(V)-submodule of Lambda(V) living in degrees >= k."""
    if k > D:
        raise ValueError("truncation index exceeds the truncation degree")
    L = exterior if exterior is not None else exterior_algebra(n, p, D)
    F = algebra_as_module(L)
    spaces = {d: (Subspace.full(p, L.dims[d]) if d >= k else Subspace.zero(p, L.dims[d]))
              for d in range(L.D + 1)}
    return submodule(F, spaces, name=f"L_{k}", check=False)


def free_on_degree_one(S: TruncatedGradedAlgebra) -> GradedModule:
    """S^{.-1} (x) V*: the free S-module on the variables placed in degree 1.

    Basis of degree i: pairs (monomial of degree i-1, variable), monomial major.
    """
    n = S.dims[1]
    dims = [S.dims[i - 1] * n for i in range(1, S.D + 1)]
    actions = {}
    eye = fl.identity(n)
    for i in range(1, S.D + 1):
        for t in range(1, S.D + 1 - i):
            T = S.tensor(i - 1, t)                                  # (z, f, g)
            big = np.einsum("zfg,xy->zxfyg", T, eye)                # target (z,x), source ((f,y), g)
            actions[(i, t)] = big.reshape(T.shape[0] * n, T.shape[1] * n * T.shape[2])
    return GradedModule.build(S, 1, dims, actions, name="S(-1)(x)V*", check=False)


def multiplication_to_symmetric(S: TruncatedGradedAlgebra, i: int) -> np.ndarray:
    """Matrix of S^{i-1} (x) V* -> S^i, columns indexed (monomial, variable)."""
    return S.mult[(i - 1, 1)]


def syzygy_module_J(n: int, p: int, D: int,
                    S: TruncatedGradedAlgebra | None = None) -> GradedModule:
    """J = ker(S^{.-1}(V*) (x) V* -> S^.(V*)) as a graded S(V*)-module."""
    if D < 2:
        raise ValueError("J needs truncation degree at least 2")
    S = S if S is not None else symmetric_algebra(n, p, D)
    F = free_on_degree_one(S)
    spaces = {i: fl.kernel_basis(multiplication_to_symmetric(S, i), p) for i in range(1, S.D + 1)}
    return submodule(F, spaces, name="J", check=False)


def exterior_element(n: int, terms) -> np.ndarray:
    """Coordinates of sum c * e_m for terms (c, m) with m a sorted index list."""
    terms = list(terms)
    if not terms:
        raise ValueError("empty exterior element")
    k = len(terms[0][1])
    idx = exterior_index(n, k)
    v = np.zeros(comb(n, k), dtype=DTYPE)
    for c, m in terms:
        m = tuple(m)
        if len(m) != k:
            raise ValueError("exterior element is not homogeneous")
        if list(m) != sorted(set(m)) or any(not 0 <= x < n for x in m):
            raise ValueError(f"monomial {list(m)} is not a strictly increasing index list in range({n})")
        v[idx[m]] += c
    return v
