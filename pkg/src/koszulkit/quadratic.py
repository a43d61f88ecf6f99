"""Quadratic presentations {V, R} and <H, K>, their realizations and duals.

Tensor coordinates: ``V (x) V`` is indexed by ``a * n + b`` and ``H (x) V`` by
``h * n + v``.  Dual spaces use dual bases, so the evaluation pairing is the
identity matrix and ``R^perp`` is the plain orthogonal complement.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import NamedTuple

import numpy as np

from . import fplinalg as fl
from .errors import (BudgetExceeded, ContainmentViolation, DimensionMismatch, LowestDegreeNonzero,
                     NotDegreeOneGenerated)
from .fplinalg import DTYPE, Subspace
from .graded import (GradedModule, TruncatedGradedAlgebra, algebra_as_module, quotient_algebra,
                     shift, submodule_from_generators, trim)
from .monomial import exterior_algebra, exterior_basis

# entries of the largest relation matrix realize_* may build
DEFAULT_BUDGET = 50_000_000


@dataclass(frozen=True)
class QuadraticAlgebraPresentation:
    p: int
    V_dim: int
    R: Subspace

    def __post_init__(self):
        fl.check_prime(self.p)
        if self.R.ambient_dim != self.V_dim ** 2 or self.R.p != self.p:
            raise DimensionMismatch("R must be a subspace of V (x) V")

    @classmethod
    def from_relations(cls, p, V_dim, relations):
        return cls(p, V_dim, Subspace.span(relations, p, V_dim ** 2))


@dataclass(frozen=True)
class QuadraticModulePresentation:
    H_dim: int
    K: Subspace
    over: QuadraticAlgebraPresentation

    def __post_init__(self):
        if self.K.ambient_dim != self.H_dim * self.over.V_dim or self.K.p != self.over.p:
            raise DimensionMismatch("K must be a subspace of H (x) V")

    @property
    def p(self):
        return self.over.p


def exterior_presentation(n: int, p: int) -> QuadraticAlgebraPresentation:
    """R spanned by x (x) x and x (x) y + y (x) x; valid in every characteristic."""
    rels = []
    for a in range(n):
        for b in range(a, n):
            v = np.zeros(n * n, dtype=DTYPE)
            v[a * n + b] += 1
            v[b * n + a] += 1
            if a == b:
                v[a * n + a] = 1
            rels.append(v)
    return QuadraticAlgebraPresentation.from_relations(p, n, np.array(rels).reshape(len(rels), n * n))


def symmetric_presentation(n: int, p: int) -> QuadraticAlgebraPresentation:
    rels = []
    for a in range(n):
        for b in range(a + 1, n):
            v = np.zeros(n * n, dtype=DTYPE)
            v[a * n + b] = 1
            v[b * n + a] = p - 1
            rels.append(v)
    return QuadraticAlgebraPresentation.from_relations(p, n, np.array(rels).reshape(len(rels), n * n))


def tensor_presentation(n: int, p: int) -> QuadraticAlgebraPresentation:
    return QuadraticAlgebraPresentation(p, n, Subspace.zero(p, n * n))


def _guard(entries: int, budget: int, what: str):
    if entries > budget:
        raise BudgetExceeded(f"{what} needs a {entries}-entry matrix (budget {budget})")


def realize_algebra(pres: QuadraticAlgebraPresentation, D: int,
                    budget: int = DEFAULT_BUDGET) -> TruncatedGradedAlgebra:
    """T(V)/(R) in degrees 0..D.

    Degree k is computed as (A_{k-1} (x) V) / image(A_{k-2} (x) R), which equals
    V^{(x)k} modulo the two-sided ideal without ever forming V^{(x)k}.  Each
    quotient basis vector is a standard vector (y, t) of A_{k-1} (x) V, i.e. the
    product of a basis element y of A_{k-1} with the generator v_t.
    """
    p, n = pres.p, pres.V_dim
    dims = [1, n][:D + 1]
    # rho[k]: A_{k-1} (x) V -> A_k, and the (y, t) word of each basis element
    rho = {1: fl.identity(n)}
    words = {1: [(0, t) for t in range(n)]}
    R = pres.R.basis.reshape(pres.R.dim, n, n)
    for k in range(2, D + 1):
        d1, d2 = dims[k - 1], dims[k - 2]
        _guard(d1 * n * d2 * max(pres.R.dim, 1), budget, f"degree {k} of the realization")
        # c (x) sum r_st v_s (x) v_t  ->  sum_st r_st (c v_s) (x) v_t
        r3 = rho[k - 1].reshape(d1, d2, n)                           # (y, c, s)
        rel = np.einsum("ycs,rst->crty", r3, R) % p                  # coords (y, t)
        rel = np.moveaxis(rel, 3, 2).reshape(d2 * pres.R.dim, d1 * n)
        Rel = Subspace.span(rel, p, d1 * n)
        comp = Rel.complement_columns()
        dims.append(len(comp))
        rho[k] = Rel.reduce(fl.identity(d1 * n))[:, comp].T
        words[k] = [divmod(c, n) for c in comp]
    products = {}
    for i in range(1, D + 1):
        prev = fl.identity(dims[i]).reshape(dims[i], dims[i], 1)     # T_{i,0}
        for j in range(1, D + 1 - i):
            y = np.array([w[0] for w in words[j]], dtype=np.intp)
            t = np.array([w[1] for w in words[j]], dtype=np.intp)
            r3 = rho[i + j].reshape(dims[i + j], dims[i + j - 1], n)
            # x * (y v_t) = (x y) v_t
            cur = np.einsum("wxc,zwc->zxc", prev[:, :, y], r3[:, :, t]) % p
            products[(i, j)] = fl.flat(cur)
            prev = cur
    return TruncatedGradedAlgebra.build(p, dims, products, name="{V,R}", check=False)


def realize_module(pres: QuadraticModulePresentation, D: int,
                   algebra: TruncatedGradedAlgebra | None = None,
                   budget: int = DEFAULT_BUDGET) -> GradedModule:
    """<H, K> = (H (x) A)/<K> in degrees 0..D.

    ``algebra`` may be any realization of ``pres.over`` whose degree-1 basis is
    the standard basis of V.
    """
    A = algebra if algebra is not None else realize_algebra(pres.over, D, budget)
    if A.D < D:
        raise ValueError("algebra is truncated below the requested degree")
    h = pres.H_dim
    rels = module_relations(pres, A, D, budget)
    comp = {k: rels[k].complement_columns() for k in rels}
    dims = [len(comp[k]) for k in range(D + 1)]
    actions = {}
    for j in range(D + 1):
        for i in range(1, D + 1 - j):
            if not comp[j] or not comp[j + i] or not A.dims[i]:
                continue
            hy = np.array([divmod(c, A.dims[j]) for c in comp[j]], dtype=np.intp).reshape(-1, 2)
            T = A.tensor(j, i)                                       # (z, y, b)
            img = np.zeros((len(comp[j]), A.dims[i], h, A.dims[j + i]), dtype=DTYPE)
            for r, (hh, y) in enumerate(hy):
                img[r, :, hh, :] = T[:, y, :].T
            red = rels[j + i].reduce(img.reshape(-1, h * A.dims[j + i]))[:, comp[j + i]]
            actions[(j, i)] = red.T
    return GradedModule.build(A, 0, dims, actions, name="<H,K>", check=False)


def module_relations(pres: QuadraticModulePresentation, A: TruncatedGradedAlgebra, D: int,
                     budget: int = DEFAULT_BUDGET) -> dict:
    """Degreewise relation spaces K.A_{k-1} inside H (x) A_k."""
    p, n, h = pres.p, pres.over.V_dim, pres.H_dim
    K = pres.K.basis.reshape(pres.K.dim, h, n)
    rels = {0: Subspace.zero(p, h)}
    for k in range(1, D + 1):
        dk, dk1 = A.dims[k], A.dims[k - 1]
        _guard(h * dk * dk1 * max(pres.K.dim, 1), budget, f"degree {k} of the module")
        T = A.tensor(1, k - 1)                                       # (z, v, a)
        rel = np.einsum("khv,zva->kahz", K, T) % p
        rels[k] = Subspace.span(rel.reshape(pres.K.dim * dk1, h * dk), p, h * dk)
    return rels


def realize_module_map(src: QuadraticModulePresentation, tgt: QuadraticModulePresentation,
                       h_map, A: TruncatedGradedAlgebra, D: int) -> list:
    """Degreewise matrices of the map <H,K> -> <H',K'> induced by h_map: H -> H'.

    Bases are those of :func:`realize_module` over the same algebra ``A``.
    Raises ContainmentViolation if h_map does not carry K into K'.
    """
    p = src.p
    h_map = fl.as_matrix(h_map, p, (tgt.H_dim, src.H_dim))
    n = src.over.V_dim
    K = src.K.basis.reshape(src.K.dim, src.H_dim, n)
    lifted = np.einsum("ah,khv->kav", h_map, K) % p
    if not tgt.K.contains(lifted.reshape(src.K.dim, tgt.H_dim * n)):
        raise ContainmentViolation("map does not send K into K'")
    rs, rt = module_relations(src, A, D), module_relations(tgt, A, D)
    maps = []
    for k in range(D + 1):
        cs, ct = rs[k].complement_columns(), rt[k].complement_columns()
        dk = A.dims[k]
        img = np.zeros((len(cs), tgt.H_dim * dk), dtype=DTYPE)
        for r, c in enumerate(cs):
            h, y = divmod(c, dk)
            img[r, np.arange(tgt.H_dim) * dk + y] = h_map[:, h]
        maps.append(rt[k].reduce(img)[:, ct].T if cs and ct else fl.zeros(len(ct), len(cs)))
    return maps


def quadratic_dual_algebra(pres: QuadraticAlgebraPresentation) -> QuadraticAlgebraPresentation:
    return QuadraticAlgebraPresentation(pres.p, pres.V_dim, fl.orthogonal_complement(pres.R))


def quadratic_dual_module(pres: QuadraticModulePresentation) -> QuadraticModulePresentation:
    return QuadraticModulePresentation(pres.H_dim, fl.orthogonal_complement(pres.K),
                                       quadratic_dual_algebra(pres.over))


def check_degree_one_generated(A: TruncatedGradedAlgebra):
    for k in range(2, A.D + 1):
        if fl.rank(A.mult[(k - 1, 1)], A.p) != A.dims[k]:
            raise NotDegreeOneGenerated(f"A_{k} is not spanned by A_{k-1} A_1")


def quadratic_part_algebra(A: TruncatedGradedAlgebra) -> QuadraticAlgebraPresentation:
    """qA = {A_1, ker(A_1 (x) A_1 -> A_2)}."""
    check_degree_one_generated(A)
    n = A.dims[1] if A.D >= 1 else 0
    R = fl.kernel_basis(A.mult[(1, 1)], A.p) if A.D >= 2 else Subspace.zero(A.p, n * n)
    return QuadraticAlgebraPresentation(A.p, n, R)


def quadratic_part_module(M: GradedModule,
                          over: QuadraticAlgebraPresentation | None = None) -> QuadraticModulePresentation:
    """q_A M = <M_0, ker(M_0 (x) A_1 -> M_1)>."""
    M = trim(M)
    if M.lo != 0:
        raise LowestDegreeNonzero(f"module starts in degree {M.lo}, not 0")
    over = over if over is not None else quadratic_part_algebra(M.algebra)
    K = fl.kernel_basis(M.act(0, 1), M.p) if M.top >= 1 else Subspace.zero(
        M.p, M.dim(0) * M.algebra.dim(1))
    return QuadraticModulePresentation(M.dim(0), K, over)


class ExteriorIdeal(NamedTuple):
    ideal: GradedModule
    quotient: TruncatedGradedAlgebra


def ideal_in_exterior(n: int, p: int, R2, D: int,
                      exterior: TruncatedGradedAlgebra | None = None) -> ExteriorIdeal:
    """The ideal of Lambda(F_p^n) generated by R2 in degree 2, and the quotient algebra.

    The ideal is returned as a right Lambda-submodule of Lambda; its ``algebra``
    attribute is the exterior algebra itself.
    """
    L = exterior if exterior is not None else exterior_algebra(n, p, D)
    if not isinstance(R2, Subspace):
        R2 = Subspace.span(R2, p, comb(n, 2))
    if R2.ambient_dim != comb(n, 2):
        raise DimensionMismatch("R2 must live in Lambda^2")
    F = algebra_as_module(L)
    gens = [(2, v) for v in R2.basis] if D >= 2 else []
    I = submodule_from_generators(F, gens, name="I")
    B = quotient_algebra(L, I, name="Lambda/I")
    return ExteriorIdeal(I, B)


def ideal_twist(I: GradedModule) -> GradedModule:
    """I(2) trimmed to start in degree 0."""
    return trim(shift(I, 2))


def wedge2_pairing_matrix(n: int) -> np.ndarray:
    """Pairing V*(x)V* x Lambda^2(V) evaluated on lifts: <f (x) g, v ^ w> = f(v)g(w).

    On J_2 = ker(V* (x) V* -> S^2 V*), the annihilator of the exterior relations,
    this is well defined and perfect in every characteristic.  (The
    antisymmetrised form f(v)g(w) - f(w)g(v) is twice this on J_2, hence zero
    when p = 2.)  Rows are indexed by a * n + b, columns by the 2-subsets of range(n).
    """
    P = np.zeros((n * n, comb(n, 2)), dtype=DTYPE)
    for c, (s, t) in enumerate(exterior_basis(n, 2)):
        P[s * n + t, c] = 1
    return P
