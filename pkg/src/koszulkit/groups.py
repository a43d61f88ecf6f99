"""Mod-p cohomology algebras of elementary-type pro-p groups.

Groups are described by a small expression language::

    Zp            the p-adic integers
    F(n)          free pro-p group of rank n
    D(d)          Demushkin group of even rank d
    (e1 * e2)     free pro-p product
    (A(m) x e)    semidirect product Z_p^m x| e

Only F_p-cohomology is modelled; orientations and the Demushkin q-invariant do
not affect it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb
from typing import NamedTuple, Union

import numpy as np

from . import fplinalg as fl
from .criteria import KoszulReport, koszul_check
from .errors import GroupParseError, NotDegreeOneGenerated, OddDemushkinRank, StructureError
from .fplinalg import DTYPE, Subspace
from .graded import (GradedModule, TruncatedGradedAlgebra, algebra_as_module, check_algebra_map,
                     direct_sum, quotient_module, residue_module, restrict_scalars, shift,
                     signed_tensor_algebra, signed_tensor_module, submodule, trim)
from .monomial import exterior_algebra, exterior_index, symmetric_basis, symmetric_index, truncation_module
from .quadratic import ideal_in_exterior


# ------------------------------------------------------------------ AST

@dataclass(frozen=True)
class Zp:
    def __str__(self):
        return "Zp"


@dataclass(frozen=True)
class Free:
    n: int

    def __str__(self):
        return f"F({self.n})"


@dataclass(frozen=True)
class Demushkin:
    d: int

    def __post_init__(self):
        if self.d < 2 or self.d % 2:
            raise OddDemushkinRank(f"Demushkin rank must be even and at least 2, got {self.d}")

    def __str__(self):
        return f"D({self.d})"


@dataclass(frozen=True)
class FreeProduct:
    left: "GroupExpr"
    right: "GroupExpr"

    def __str__(self):
        return f"({self.left} * {self.right})"


@dataclass(frozen=True)
class Semidirect:
    m: int
    base: "GroupExpr"

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("the abelian factor needs rank at least 1")

    def __str__(self):
        return f"(A({self.m}) x {self.base})"


GroupExpr = Union[Zp, Free, Demushkin, FreeProduct, Semidirect]

_TOKEN = re.compile(r"\s*(?:(Zp)|([FDA])\s*\(\s*(\d+)\s*\)|(\()|(\))|(\*)|(x))")


def parse_group(text: str) -> GroupExpr:
    """Parse the group expression syntax; raises GroupParseError with a position."""
    pos = 0

    def peek():
        m = _TOKEN.match(text, pos)
        return m

    def skip_ws(i):
        # error positions point at the offending character, not the blanks before it
        return i + len(text[i:]) - len(text[i:].lstrip())

    def expect_end():
        if text[pos:].strip():
            raise GroupParseError("unexpected trailing input", text, skip_ws(pos))

    def parse_expr():
        nonlocal pos
        m = peek()
        if m is None:
            raise GroupParseError("expected a group expression", text, skip_ws(pos))
        start = skip_ws(m.start(0))
        if m.group(1):
            pos = m.end()
            return Zp()
        if m.group(2):
            pos = m.end()
            kind, k = m.group(2), int(m.group(3))
            if kind == "F":
                return Free(k)
            if kind == "D":
                return Demushkin(k)
            raise GroupParseError("A(m) may only appear as the left factor of 'x'", text, start)
        if m.group(4):
            pos = m.end()
            m2 = peek()
            if m2 is not None and m2.group(2) == "A":
                pos = m2.end()
                rank = int(m2.group(3))
                m3 = peek()
                if m3 is None or not m3.group(7):
                    raise GroupParseError("expected 'x' after A(m)", text, skip_ws(pos))
                pos = m3.end()
                node = Semidirect(rank, parse_expr())
            else:
                node = parse_expr()
                while True:
                    m3 = peek()
                    if m3 is None or not m3.group(6):
                        break
                    pos = m3.end()
                    node = FreeProduct(node, parse_expr())
            m4 = peek()
            if m4 is None or not m4.group(5):
                raise GroupParseError("expected ')'", text, skip_ws(pos))
            pos = m4.end()
            return node
        raise GroupParseError("unexpected token", text, start)

    node = parse_expr()
    expect_end()
    return node


def h1_dim(e: GroupExpr) -> int:
    if isinstance(e, Zp):
        return 1
    if isinstance(e, Free):
        return e.n
    if isinstance(e, Demushkin):
        return e.d
    if isinstance(e, FreeProduct):
        return h1_dim(e.left) + h1_dim(e.right)
    return e.m + h1_dim(e.base)


# ------------------------------------------------------------ cohomology

def demushkin_gram(d: int, p: int) -> np.ndarray:
    if d % 2:
        raise OddDemushkinRank(f"Demushkin rank must be even, got {d}")
    G = np.zeros((d, d), dtype=DTYPE)
    for i in range(d - 1):
        G[i, i + 1] = 1
        G[i + 1, i] = p - 1
    return G


def demushkin_relations(d: int, p: int) -> Subspace:
    """Kernel of the cup-product functional Lambda^2 -> F_p, e_s ^ e_t -> G[s][t]."""
    G = demushkin_gram(d, p)
    idx = exterior_index(d, 2)
    phi = np.zeros((1, comb(d, 2)), dtype=DTYPE)
    for (s, t), c in idx.items():
        phi[0, c] = G[s, t]
    return fl.kernel_basis(phi, p)


def free_algebra_cohomology(n: int, p: int, D: int) -> TruncatedGradedAlgebra:
    dims = [1, n] + [0] * (D - 1) if D >= 1 else [1]
    products = {(i, j): fl.zeros(dims[i + j], dims[i] * dims[j])
                for i in range(1, D + 1) for j in range(1, D + 1 - i)}
    return TruncatedGradedAlgebra.build(p, dims, products, name=f"H(F({n}))", check=False)


def free_product_algebra(A: TruncatedGradedAlgebra, B: TruncatedGradedAlgebra,
                         name="") -> TruncatedGradedAlgebra:
    """k in degree 0, A_k + B_k above, products across the two factors zero."""
    D = min(A.D, B.D)
    dims = [1] + [A.dims[k] + B.dims[k] for k in range(1, D + 1)]
    products = {}
    for i in range(1, D + 1):
        for j in range(1, D + 1 - i):
            t = np.zeros((dims[i + j], dims[i], dims[j]), dtype=DTYPE)
            a, b, c = A.dims[i], A.dims[j], A.dims[i + j]
            t[:c, :a, :b] = A.tensor(i, j)
            t[c:, a:, b:] = B.tensor(i, j)
            products[(i, j)] = fl.flat(t)
    return TruncatedGradedAlgebra.build(A.p, dims, products, name=name, check=False)


def cohomology_algebra(e: GroupExpr | str, p: int, D: int) -> TruncatedGradedAlgebra:
    """H^*(G, F_p) for an elementary-type group, truncated at degree D."""
    if isinstance(e, str):
        e = parse_group(e)
    fl.check_prime(p)
    if isinstance(e, Zp):
        return exterior_algebra(1, p, D)
    if isinstance(e, Free):
        return free_algebra_cohomology(e.n, p, D)
    if isinstance(e, Demushkin):
        _, B = ideal_in_exterior(e.d, p, demushkin_relations(e.d, p), D)
        expect = [1, e.d, 1] + [0] * (D - 2)
        if list(B.dims) != expect[:D + 1]:
            raise StructureError(f"Demushkin cohomology has dims {B.dims}, expected {expect}")
        return B
    if isinstance(e, FreeProduct):
        return free_product_algebra(cohomology_algebra(e.left, p, D),
                                    cohomology_algebra(e.right, p, D), name=str(e))
    if isinstance(e, Semidirect):
        return signed_tensor_algebra(cohomology_algebra(e.base, p, D),
                                     exterior_algebra(e.m, p, D), name=str(e))
    raise TypeError(f"not a group expression: {e!r}")


class PsiKernel(NamedTuple):
    psi: list
    kernel: GradedModule
    exterior: TruncatedGradedAlgebra
    cohomology: TruncatedGradedAlgebra


def psi_maps(B: TruncatedGradedAlgebra, L: TruncatedGradedAlgebra) -> list:
    """The algebra map Lambda(B_1) -> B extending the identity in degree 1.

    psi(e_S) = psi(e_{S minus max S}) * b_{max S}; multiplicativity is asserted.
    """
    n = B.dims[1] if B.D >= 1 else 0
    D = min(B.D, L.D)
    psi = [fl.identity(1)]
    if D >= 1:
        psi.append(fl.identity(n))
    for k in range(2, D + 1):
        idx = exterior_index(n, k - 1)
        col = []
        T = B.tensor(k - 1, 1)
        for S in exterior_index(n, k):
            prev = psi[k - 1][:, idx[S[:-1]]]
            col.append(T[:, :, S[-1]] @ prev)
        psi.append(np.mod(np.array(col, dtype=DTYPE).reshape(len(col), B.dims[k]).T, B.p))
    if not check_algebra_map(L, B, psi):
        raise StructureError("B is not a quotient of the exterior algebra on B_1")
    return psi


def psi_and_kernel(e: GroupExpr | str | TruncatedGradedAlgebra, p: int, D: int) -> PsiKernel:
    """psi: Lambda(H^1) -> H^*(G) and its kernel as a Lambda-submodule of Lambda."""
    B = e if isinstance(e, TruncatedGradedAlgebra) else cohomology_algebra(e, p, D)
    n = B.dims[1] if B.D >= 1 else 0
    L = exterior_algebra(n, p, B.D)
    psi = psi_maps(B, L)
    for k, m in enumerate(psi):
        if fl.rank(m, p) != B.dims[k]:
            raise NotDegreeOneGenerated(f"psi is not surjective in degree {k}")
    spaces = {k: fl.kernel_basis(m, p) for k, m in enumerate(psi)}
    ker = submodule(algebra_as_module(L), spaces, name="ker psi", check=False)
    return PsiKernel(psi, ker, L, B)


def cohomology_module(e: GroupExpr | str | TruncatedGradedAlgebra, p: int, D: int) -> GradedModule:
    """H^*(G) as a right module over Lambda(H^1) through psi."""
    pk = psi_and_kernel(e, p, D)
    return restrict_scalars(algebra_as_module(pk.cohomology), pk.exterior, pk.psi,
                            name=f"H({pk.cohomology.name})")


# ------------------------------------------------------------- Demushkin alpha

def demushkin_alpha(d: int, p: int, i: int) -> np.ndarray:
    """alpha_{i+1}: S^{i+1}(V*) -> S^{i+2}(V*) (x) V*, f -> sum_t (x_t f) (x) x_{t+1} - (x_{t+1} f) (x) x_t.

    Rows are indexed (monomial of degree i+2, variable), monomial major; columns
    by the degree-(i+1) monomials.
    """
    if d % 2 or d < 2:
        raise OddDemushkinRank(f"Demushkin rank must be even, got {d}")
    src = symmetric_basis(d, i + 1)
    tgt = symmetric_index(d, i + 2)
    out = np.zeros((len(tgt) * d, len(src)), dtype=DTYPE)
    for c, f in enumerate(src):
        for t in range(d - 1):
            out[tgt[tuple(sorted(f + (t,)))] * d + t + 1, c] += 1
            out[tgt[tuple(sorted(f + (t + 1,)))] * d + t, c] -= 1
    return np.mod(out, p)


def contract_variable(d: int, p: int, degree: int, var: int) -> np.ndarray:
    """id (x) chi_var: S^degree (x) V* -> S^degree, keeping the coefficient of x_var."""
    size = len(symmetric_basis(d, degree))
    out = np.zeros((size, size * d), dtype=DTYPE)
    out[np.arange(size), np.arange(size) * d + var] = 1
    return out


def multiplication_by_variable(d: int, p: int, degree: int, var: int) -> np.ndarray:
    """x_var * : S^degree -> S^{degree+1}."""
    src = symmetric_basis(d, degree)
    tgt = symmetric_index(d, degree + 1)
    out = np.zeros((len(tgt), len(src)), dtype=DTYPE)
    for c, f in enumerate(src):
        out[tgt[tuple(sorted(f + (var,)))], c] = 1
    return out


# ----------------------------------------------------------- Theorem C

def verify_theorem_c(e: GroupExpr | str, p: int, D: int, jobs: int = 1, cache=None) -> KoszulReport:
    """Koszul check of (ker psi)(2) over Lambda(H^1) on the rectangle (D, D).

    Everything is built two degrees higher so that the shifted kernel is known
    up to degree D.
    """
    pk = psi_and_kernel(e, p, D + 2)
    K = trim(shift(pk.kernel, 2))
    if K.lowest_nonzero is None:
        return KoszulReport((D, D), [], "KoszulUpTo", {})
    return koszul_check(pk.exterior, K, D, D, jobs=jobs, cache=cache)


# ------------------------------------------------------------ F2 x F2

class FiveTermFixture(NamedTuple):
    exterior: TruncatedGradedAlgebra
    B: GradedModule
    N: GradedModule


def free_times_free_fixture(p: int, D: int = 6) -> FiveTermFixture:
    """B = H^*(F2 x F2) and N = Lambda(V1) (x) k + k (x) Lambda(V2) over Lambda(F_p^4)."""
    L2 = exterior_algebra(2, p, D)
    C = signed_tensor_algebra(L2, L2)
    H = quotient_module(algebra_as_module(L2), truncation_module(2, p, D, 2, L2), name="H(F2)")
    k = residue_module(L2, D)
    free = algebra_as_module(L2)
    B = signed_tensor_module(H, H, C, name="H(F2xF2)")
    N = direct_sum(signed_tensor_module(free, k, C), signed_tensor_module(k, free, C), name="N")
    L4 = exterior_algebra(4, p, D)
    iso = psi_maps(C, L4)
    return FiveTermFixture(L4, restrict_scalars(B, L4, iso), restrict_scalars(N, L4, iso))
