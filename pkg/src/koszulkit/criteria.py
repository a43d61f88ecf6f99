"""Decision procedures built on the homology engines.

All "for all degrees" statements are checked up to an explicit truncation and
the reports say so.
"""

from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass, field
from math import comb

import numpy as np

from . import fplinalg as fl
from .errors import H14NonzeroWarning, InputNotMonomorphism, LowestDegreeNonzero
from .fplinalg import Subspace
from .graded import (GradedModule, TruncatedGradedAlgebra, quotient_module, residue_module,
                     submodule_from_generators, trim)
from .homology import homology_dim, homology_table, koszul_complex_tor, lowest_degree
from .monomial import exterior_algebra, symmetric_algebra, syzygy_module_J
from .quadratic import (ideal_in_exterior, ideal_twist, quadratic_dual_module, quadratic_part_algebra,
                        quadratic_part_module, realize_algebra, realize_module, realize_module_map,
                        wedge2_pairing_matrix)

KOSZUL = "KoszulUpTo"
DEFECTS = "DefectsFound"
NOT_QUADRATIC = "NotQuadraticPrecondition"
HOLDS = "HypothesesHold"
FAILS = "VanishingFails"


@dataclass
class KoszulReport:
    verified_up_to: tuple
    defects: list
    verdict: str
    table: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if (self.verdict == KOSZUL) != (not self.defects):
            raise ValueError("verdict disagrees with the defect list")

    @property
    def ok(self):
        return self.verdict == KOSZUL

    def to_dict(self):
        return {"verified_up_to": {"i_max": self.verified_up_to[0], "j_max": self.verified_up_to[1]},
                "defects": [{"i": i, "j": j, "dim": d} for i, j, d in self.defects],
                "verdict": self.verdict,
                "table": [{"i": i, "j": j, "dim": d} for (i, j), d in sorted(self.table.items())]}


@dataclass
class QuadraticityResult:
    quadratic: bool
    witness: tuple | None
    checked_up_to: int

    def __bool__(self):
        return self.quadratic


@dataclass
class FiveTermDims:
    h12N: int
    h24B: int
    h02N: int
    derived_ker_d: int
    h14B: int = 0

    def __post_init__(self):
        if self.derived_ker_d != self.h24B - self.h12N + self.h02N or self.derived_ker_d < 0:
            raise ValueError("dimensions are not compatible with an exact sequence")

    def to_dict(self):
        return asdict(self)


@dataclass
class TheoremBReport:
    quadratic_ok: bool
    vanishing_checked_up_to: int
    failures: list
    route: str
    cross_check: bool | None = None
    verdict: str = HOLDS
    quadratic_witness: tuple | None = None
    dual_failures: list = field(default_factory=list)

    @property
    def passes(self):
        return self.verdict == HOLDS

    def to_dict(self):
        d = asdict(self)
        d["failures"] = [{"i": i, "j": j, "dim": x} for i, j, x in self.failures]
        d["dual_failures"] = [{"i": i, "j": j, "dim": x} for i, j, x in self.dual_failures]
        return d


# ------------------------------------------------------------- quadraticity

def _scan(A, M, cells, method):
    for i, j in cells:
        d = homology_dim(A, M, i, j, method)
        if d:
            return (i, j)
    return None


def is_quadratic_module(A: TruncatedGradedAlgebra, M: GradedModule, D: int | None = None,
                        method: str = "auto") -> QuadraticityResult:
    """H_{0,j} = 0 for j != 0 and H_{1,j} = 0 for j != 1, for j <= D."""
    M = trim(M)
    if M.lowest_nonzero is None:
        return QuadraticityResult(True, None, 0)
    if M.lo != 0:
        raise LowestDegreeNonzero(f"module starts in degree {M.lo}, not 0")
    D = min(M.top, A.D) if D is None else D
    cells = [(i, j) for j in range(D + 1) for i in (0, 1) if j != i]
    w = _scan(A, M, cells, method)
    return QuadraticityResult(w is None, w, D)


def is_quadratic_algebra(A: TruncatedGradedAlgebra, D: int | None = None,
                         method: str = "auto") -> QuadraticityResult:
    """H_{1,j}(A,k) = 0 for j != 1 and H_{2,j}(A,k) = 0 for j != 2, for j <= D."""
    D = A.D if D is None else D
    k = residue_module(A, D)
    cells = [(i, j) for j in range(D + 1) for i in (1, 2) if j != i]
    w = _scan(A, k, cells, method)
    return QuadraticityResult(w is None, w, D)


def koszul_check(A: TruncatedGradedAlgebra, M: GradedModule | None = None, i_max: int = 6,
                 j_max: int = 6, method: str = "auto", jobs: int = 1, cache=None) -> KoszulReport:
    """Scan H_{i,j}(A, M) for 0 <= i <= i_max, j <= j_max; defects are cells off j = i.

    For a module whose lowest degree m is not 0 the diagonal is taken to be
    j = i + m.
    """
    M = residue_module(A, j_max) if M is None else trim(M)
    T = homology_table(A, M, i_max, j_max, method=method, jobs=jobs, cache=cache)
    defects = T.off_diagonal(lowest_degree(M))
    return KoszulReport((i_max, j_max), defects, DEFECTS if defects else KOSZUL, T.entries)


# ----------------------------------------------------- Theorem A bookkeeping

def cup_surjectivity_check(N: GradedModule) -> bool:
    """N_2 = Lambda^1 N_1 + Lambda^2 N_0, by a rank computation on the action maps."""
    N = trim(N) if N.lowest_nonzero is not None else N
    if N.lo > 0:
        raise LowestDegreeNonzero("module must start in degree 0")
    if N.dim(2) == 0:
        return True
    blocks = [N.act(j, 2 - j) for j in (0, 1) if N.dim(j)]
    if not blocks:
        return False
    return fl.rank(np.concatenate(blocks, axis=1), N.p) == N.dim(2)


def five_term_dims(B: GradedModule, N: GradedModule, method: str = "auto") -> FiveTermDims:
    """Dimensions in 0 -> H_{1,2}(N) -> H_{2,4}(B) -> ker d -> H_{0,2}(N) -> 0."""
    L = B.algebra
    if N.algebra.dims != L.dims:
        raise ValueError("B and N must be modules over the same exterior algebra")
    h12 = homology_dim(L, N, 1, 2, method)
    h02 = homology_dim(L, N, 0, 2, method)
    h24 = homology_dim(L, B, 2, 4, method)
    h14 = homology_dim(L, B, 1, 4, method)
    if h14:
        warnings.warn(f"H_(1,4)(Lambda, B) has dimension {h14}; B is not a quotient of Lambda "
                      "by an ideal generated in degree 2", H14NonzeroWarning, stacklevel=2)
    return FiveTermDims(h12, h24, h02, h24 - h12 + h02, h14)


# --------------------------------------------------------------- Theorem B

def dual_quotient_module(n: int, p: int, I2: Subspace, D: int, S=None):
    """J/<W*> over S(V*), with W* the annihilator of I_2 inside J_2.

    J_2 sits in V* (x) V* (monomial-major coordinates of S^1 (x) V*) and is
    identified with Lambda^2(V)* by evaluating on lifts v (x) w.
    """
    S = symmetric_algebra(n, p, D) if S is None else S
    J = syzygy_module_J(n, p, D, S)
    J2 = J.embedding[2]
    P = fl.matmul(J2.basis, wedge2_pairing_matrix(n), p)         # J_2 basis x Lambda^2
    if I2.dim:
        W = fl.kernel_basis(fl.matmul(P, I2.basis.T, p).T, p)   # coordinates in J_2
    else:
        W = Subspace.full(p, J2.dim)
    gen = submodule_from_generators(J, [(2, w) for w in W.basis], name="<W*>")
    return S, quotient_module(J, gen, name="J/<W*>"), W


def _direct_route(L, I, D, method):
    fails = []
    for i in range(0, D - 2):
        d = homology_dim(L, I, i, i + 3, method) if I.lowest_nonzero is not None else 0
        if d:
            fails.append((i, i + 3, d))
    return fails


def _dual_route(n, p, I2, D):
    S, Q, _ = dual_quotient_module(n, p, I2, D)
    fails = []
    for j in range(5, D + 1):
        d = koszul_complex_tor(S, Q, 2, j) if Q.lowest_nonzero is not None else 0
        if d:
            fails.append((2, j, d))
    return fails


def theorem_b_check(n: int, p: int, R2, D: int, route: str = "both",
                    method: str = "auto") -> TheoremBReport:
    """Check the hypotheses of the weak Koszulity criterion for the ideal generated by R2.

    Direct: H_{i,i+3}(Lambda, I) = 0 for i + 3 <= D.  Dual: Tor_2^{S(V*)}(J/<W*>)_j = 0
    for 4 < j <= D.  Vanishing up to internal degree D is equivalent on both sides,
    so with ``route="both"`` the verdicts must agree, and when both fail the first
    failing cells sit in the same internal degree with the same dimension.
    """
    if route not in ("direct", "dual", "both"):
        raise ValueError(f"unknown route {route!r}")
    L = exterior_algebra(n, p, D)
    I, _ = ideal_in_exterior(n, p, R2, D, L)
    I2 = I.embedding[2] if D >= 2 else Subspace.zero(p, comb(n, 2))
    twisted = ideal_twist(I)
    if twisted.lowest_nonzero is None:
        quad = QuadraticityResult(True, None, D - 2)
    else:
        quad = is_quadratic_module(L, twisted, D - 2, method)
    label = {"direct": "Direct", "dual": "DualViaJ", "both": "Both"}[route]
    if not quad:
        return TheoremBReport(False, D, [], label, None, NOT_QUADRATIC, quad.witness)
    direct = _direct_route(L, I, D, method) if route in ("direct", "both") else []
    dual = _dual_route(n, p, I2, D) if route in ("dual", "both") else []
    agree = None
    if route == "both":
        agree = (not direct) == (not dual)
        if direct and dual:
            # the first non-vanishing groups correspond: same internal degree, same dim
            agree = direct[0][1:] == dual[0][1:]
    bad = direct if route != "dual" else dual
    if route == "both":
        bad = direct or dual
    return TheoremBReport(True, D, direct if route != "dual" else dual, label, agree,
                          FAILS if bad else HOLDS, None, dual)


# ------------------------------------------------------ dual monomorphism

@dataclass
class DualMonoReport:
    surjective: bool
    kernel_dims: list
    kernel_generated_in_degree_0: bool
    coker_f0: int
    coker_f1: int
    checked_up_to: int

    @property
    def consistent(self):
        """Kernel dimension in degree 0 equals dim coker(f_0)."""
        return (self.surjective and self.kernel_generated_in_degree_0
                and self.kernel_dims[0] == self.coker_f0)


def inclusion_maps(S: GradedModule, M: GradedModule, D: int) -> list:
    """Degreewise matrices of S -> M when both are submodules of one ambient module."""
    maps = []
    for k in range(D + 1):
        if S.dim(k) == 0 or M.dim(k) == 0:
            maps.append(fl.zeros(M.dim(k), S.dim(k)))
            continue
        es, em = S.embedding[k], M.embedding[k]
        maps.append(em.coordinates(es.basis).T)
    return maps


def dual_mono_check(A: TruncatedGradedAlgebra, M: GradedModule, N: GradedModule, f: list,
                    D: int) -> DualMonoReport:
    """For a monomorphism f: M -> N of quadratic modules, examine f^!: N^! -> M^!.

    ``f`` lists the degreewise matrices N_k x M_k for k = 0..1 at least.
    """
    p = A.p
    M, N = trim(M), trim(N)
    for k in range(min(len(f), M.top + 1)):
        if fl.rank(f[k], p) != M.dim(k):
            raise InputNotMonomorphism(f"f is not injective in degree {k}")
    qA = quadratic_part_algebra(A)
    qM, qN = quadratic_part_module(M, qA), quadratic_part_module(N, qA)
    dM, dN = quadratic_dual_module(qM), quadratic_dual_module(qN)
    Ad = realize_algebra(dM.over, D)
    Md, Nd = realize_module(dM, D, Ad), realize_module(dN, D, Ad)
    # f^! in degree 0 is the transpose of f_0 on dual bases
    fd = realize_module_map(dN, dM, np.asarray(f[0]).T, Ad, D)
    surj = all(fl.rank(fd[k], p) == Md.dim(k) for k in range(D + 1))
    kers = {k: fl.kernel_basis(fd[k], p) for k in range(D + 1)}
    gen = submodule_from_generators(Nd, [(0, v) for v in kers[0].basis])
    generated = all(gen.dim(k) == kers[k].dim for k in range(D + 1))
    coker0 = N.dim(0) - fl.rank(f[0], p)
    coker1 = N.dim(1) - fl.rank(f[1], p) if len(f) > 1 else 0
    return DualMonoReport(surj, [kers[k].dim for k in range(D + 1)], generated, coker0, coker1, D)
