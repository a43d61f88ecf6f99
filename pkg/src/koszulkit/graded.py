"""Truncated connected graded algebras and graded right modules over them.

Everything is stored by explicit structure constants up to a truncation degree.
Multiplication ``A_i x A_j -> A_{i+j}`` is a matrix of shape
``(d_{i+j}, d_i * d_j)`` whose column ``x * d_j + y`` is the product of basis
elements ``x`` and ``y``; module actions use the same layout with the module
index major.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from . import fplinalg as fl
from .errors import ContainmentViolation, DimensionMismatch, FieldMismatch, StructureError
from .fplinalg import DTYPE, Subspace


@dataclass(frozen=True, eq=False)
class TruncatedGradedAlgebra:
    """A connected graded algebra known in degrees ``0..D``.

    ``kind`` tags algebras whose Koszul dual is known in closed form
    (``("exterior", n)`` or ``("symmetric", n)``); homology uses it to pick the
    Koszul-complex engine.
    """

    p: int
    dims: tuple
    mult: Mapping
    name: str = ""
    kind: tuple | None = None

    @classmethod
    def build(cls, p, dims, products, name="", kind=None, check=True):
        """Assemble an algebra; unit products are filled in automatically."""
        fl.check_prime(p)
        dims = tuple(int(d) for d in dims)
        if not dims or dims[0] != 1:
            raise StructureError("a connected algebra has a one-dimensional degree-0 part")
        D = len(dims) - 1
        mult = {}
        for i in range(D + 1):
            for j in range(D + 1 - i):
                shape = (dims[i + j], dims[i] * dims[j])
                if (i, j) in products:
                    m = fl.as_matrix(products[(i, j)], p).reshape(shape)
                elif i == 0 or j == 0:
                    m = fl.identity(dims[i + j])
                elif 0 in shape:
                    m = fl.zeros(*shape)
                else:
                    raise StructureError(f"missing product for degrees {(i, j)}")
                if m.shape != shape:
                    raise DimensionMismatch(f"product {(i, j)} has shape {m.shape}, expected {shape}")
                m.setflags(write=False)
                mult[(i, j)] = m
        alg = cls(p, dims, mult, name, kind)
        if check:
            alg.validate()
        return alg

    @property
    def D(self) -> int:
        return len(self.dims) - 1

    def dim(self, k: int) -> int:
        return self.dims[k] if 0 <= k <= self.D else 0

    def tensor(self, i: int, j: int) -> np.ndarray:
        """Structure constants as an array of shape (d_{i+j}, d_i, d_j)."""
        return self.mult[(i, j)].reshape(self.dims[i + j], self.dims[i], self.dims[j])

    def multiply(self, i, x, j, y) -> np.ndarray:
        """Product of a degree-i vector and a degree-j vector."""
        x = np.asarray(x, dtype=DTYPE)
        y = np.asarray(y, dtype=DTYPE)
        return np.einsum("zab,a,b->z", self.tensor(i, j), x, y) % self.p

    def validate(self):
        p = self.p
        for i in range(self.D + 1):
            for j in range(self.D + 1 - i):
                t = self.tensor(i, j)
                if i == 0 and not np.array_equal(t[:, 0, :], fl.identity(self.dims[j])):
                    raise StructureError(f"degree-0 element is not a left unit in degree {j}")
                if j == 0 and not np.array_equal(t[:, :, 0], fl.identity(self.dims[i])):
                    raise StructureError(f"degree-0 element is not a right unit in degree {i}")
        for i in range(1, self.D + 1):
            for j in range(1, self.D + 1 - i):
                for k in range(1, self.D + 1 - i - j):
                    left = np.einsum("zuc,uab->zabc", self.tensor(i + j, k), self.tensor(i, j)) % p
                    right = np.einsum("zau,ubc->zabc", self.tensor(i, j + k), self.tensor(j, k)) % p
                    if not np.array_equal(left, right):
                        raise StructureError(f"associativity fails in degrees {(i, j, k)}")

    def truncate(self, D: int) -> "TruncatedGradedAlgebra":
        if D > self.D:
            raise ValueError("cannot raise the truncation degree")
        mult = {k: v for k, v in self.mult.items() if k[0] + k[1] <= D}
        return TruncatedGradedAlgebra(self.p, self.dims[:D + 1], mult, self.name, self.kind)

    def __repr__(self):
        label = self.name or "algebra"
        return f"<{label} over F_{self.p}, dims {list(self.dims)}>"


@dataclass(frozen=True, eq=False)
class GradedModule:
    """A graded right module known in degrees ``lo..top``.

    ``action[(j, i)]`` has shape ``(dim M_{j+i}, dim M_j * d_i)`` for ``i >= 1``.
    Submodules remember their ``ambient`` module and degreewise ``embedding``
    subspaces (in ambient coordinates).
    """

    algebra: TruncatedGradedAlgebra
    lo: int
    dims: tuple
    action: Mapping
    name: str = ""
    ambient: "GradedModule | None" = None
    embedding: Mapping | None = None

    @classmethod
    def build(cls, algebra, lo, dims, actions, name="", ambient=None, embedding=None, check=True):
        A = algebra
        p = A.p
        dims = tuple(int(d) for d in dims)
        top = lo + len(dims) - 1
        action = {}
        for j in range(lo, top + 1):
            for i in range(1, min(A.D, top - j) + 1):
                shape = (dims[j + i - lo], dims[j - lo] * A.dims[i])
                if (j, i) in actions:
                    m = fl.as_matrix(actions[(j, i)], p).reshape(shape)
                elif shape[0] == 0 or shape[1] == 0:
                    m = fl.zeros(*shape)
                else:
                    raise StructureError(f"missing action for degrees {(j, i)}")
                m.setflags(write=False)
                action[(j, i)] = m
        mod = cls(A, lo, dims, action, name, ambient, embedding)
        if check:
            mod.validate()
        return mod

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def top(self) -> int:
        return self.lo + len(self.dims) - 1

    def dim(self, k: int) -> int:
        return self.dims[k - self.lo] if self.lo <= k <= self.top else 0

    @property
    def lowest_nonzero(self):
        for k in range(self.lo, self.top + 1):
            if self.dim(k):
                return k
        return None

    def act(self, j: int, i: int) -> np.ndarray:
        if i == 0:
            return fl.identity(self.dim(j))
        m = self.action.get((j, i))
        if m is not None:
            return m
        rows, cols = self.dim(j + i), self.dim(j) * self.algebra.dim(i)
        if cols == 0 or (rows == 0 and j + i <= self.top):
            return fl.zeros(rows, cols)
        raise KeyError(f"action {(j, i)} is beyond the truncation")

    def tensor(self, j: int, i: int) -> np.ndarray:
        return self.act(j, i).reshape(self.dim(j + i), self.dim(j), self.algebra.dim(i))

    def act_on(self, j: int, vectors, i: int) -> np.ndarray:
        """Rows ``v * b`` for each row vector v of degree j and basis element b of A_i.

        Returns an array of shape (len(vectors), d_i, dim M_{j+i}).
        """
        v = fl.as_rows(vectors, self.dim(j))
        return fl.apply_rows(self.tensor(j, i), v, self.p)

    def validate(self):
        A = self.algebra
        p = self.p
        for j in range(self.lo, self.top + 1):
            for a in range(1, A.D + 1):
                for b in range(1, A.D + 1 - a):
                    if j + a + b > self.top:
                        break
                    left = np.einsum("zyv,yxu->zxuv", self.tensor(j + a, b), self.tensor(j, a)) % p
                    right = np.einsum("zxw,wuv->zxuv", self.tensor(j, a + b), A.tensor(a, b)) % p
                    if not np.array_equal(left, right):
                        raise StructureError(f"module associativity fails in degrees {(j, a, b)}")

    def __repr__(self):
        label = self.name or "module"
        return f"<{label}: dims {list(self.dims)} from degree {self.lo}>"


def _check_same_field(*objs):
    ps = {o.p for o in objs}
    if len(ps) != 1:
        raise FieldMismatch(f"objects live over different fields: {sorted(ps)}")


def hilbert_function(X) -> list[int]:
    return list(X.dims)


def algebra_as_module(A: TruncatedGradedAlgebra, name="") -> GradedModule:
    """The free right module of rank one on a generator of degree 0."""
    actions = {(j, i): A.mult[(j, i)] for j in range(A.D + 1) for i in range(1, A.D + 1 - j)}
    return GradedModule.build(A, 0, A.dims, actions, name=name or f"free({A.name})", check=False)


def residue_module(A: TruncatedGradedAlgebra, top: int | None = None) -> GradedModule:
    """The trivial module k in degree 0, listed as zero up to degree ``top``."""
    top = A.D if top is None else top
    dims = (1,) + (0,) * top
    return GradedModule.build(A, 0, dims, {}, name="k", check=False)


def zero_module(A: TruncatedGradedAlgebra, lo=0, top=None) -> GradedModule:
    top = A.D if top is None else top
    return GradedModule.build(A, lo, (0,) * (top - lo + 1), {}, name="0", check=False)


def trivial_action_module(A, lo, dims, name="") -> GradedModule:
    """A module on the given dimensions on which A_+ acts by zero."""
    top = lo + len(dims) - 1
    actions = {(j, i): fl.zeros(dims[j + i - lo], dims[j - lo] * A.dims[i])
               for j in range(lo, top + 1) for i in range(1, min(A.D, top - j) + 1)}
    return GradedModule.build(A, lo, dims, actions, name=name, check=False)


def shift(M: GradedModule, k: int) -> GradedModule:
    """The shift M(k) with M(k)_i = M_{i+k}."""
    if k == 0:
        return M
    action = {(j - k, i): m for (j, i), m in M.action.items()}
    ambient = shift(M.ambient, k) if M.ambient is not None else None
    embedding = ({d - k: s for d, s in M.embedding.items()}
                 if M.embedding is not None else None)
    name = f"{M.name}({k})" if M.name else ""
    return GradedModule(M.algebra, M.lo - k, M.dims, action, name, ambient, embedding)


def direct_sum(*mods: GradedModule, name="") -> GradedModule:
    """Direct sum; bases are concatenated in argument order."""
    A = mods[0].algebra
    for M in mods:
        if M.algebra is not A:
            raise FieldMismatch("direct summands must be modules over the same algebra")
    lo = min(M.lo for M in mods)
    top = min(M.top for M in mods)
    dims = [sum(M.dim(k) for M in mods) for k in range(lo, top + 1)]
    actions = {}
    for j in range(lo, top + 1):
        for i in range(1, min(A.D, top - j) + 1):
            blocks = []
            for M in mods:
                blocks.append(M.tensor(j, i) if M.dim(j) and M.dim(j + i) else
                              np.zeros((M.dim(j + i), M.dim(j), A.dim(i)), dtype=DTYPE))
            t = np.zeros((dims[j + i - lo], dims[j - lo], A.dim(i)), dtype=DTYPE)
            r = c = 0
            for blk in blocks:
                t[r:r + blk.shape[0], c:c + blk.shape[1]] = blk
                r += blk.shape[0]
                c += blk.shape[1]
            actions[(j, i)] = fl.flat(t)
    return GradedModule.build(A, lo, dims, actions, name=name, check=False)


def _block_offsets(sizes):
    off, acc = [], 0
    for s in sizes:
        off.append(acc)
        acc += s
    return off, acc


def signed_tensor_algebra(A: TruncatedGradedAlgebra, B: TruncatedGradedAlgebra,
                          name="") -> TruncatedGradedAlgebra:
    """A (x)^{-1} B with (a1 b1)(a2 b2) = (-1)^{deg b1 deg a2} a1 a2 (x) b1 b2.

    Degree-n basis: blocks A_i (x) B_{n-i} in increasing A-degree i, each block
    ordered with the A-index major.
    """
    _check_same_field(A, B)
    D = min(A.D, B.D)
    blocks = {n: [(i, n - i) for i in range(n + 1)] for n in range(D + 1)}
    sizes = {n: [A.dims[i] * B.dims[k] for i, k in blocks[n]] for n in range(D + 1)}
    offs = {n: _block_offsets(sizes[n])[0] for n in range(D + 1)}
    dims = [sum(sizes[n]) for n in range(D + 1)]
    products = {}
    for n1 in range(1, D + 1):
        for n2 in range(1, D + 1 - n1):
            t = np.zeros((dims[n1 + n2], dims[n1], dims[n2]), dtype=DTYPE)
            for b1, (i1, k1) in enumerate(blocks[n1]):
                for b2, (i2, k2) in enumerate(blocks[n2]):
                    ta, tb = A.tensor(i1, i2), B.tensor(k1, k2)
                    if ta.size == 0 or tb.size == 0:
                        continue
                    # (x,y) <- (a1,b1),(a2,b2)
                    blk = np.einsum("xac,ybd->xyabcd", ta, tb)
                    if (k1 * i2) % 2:
                        blk = -blk
                    sx, sy = ta.shape[0], tb.shape[0]
                    blk = blk.reshape(sx * sy, ta.shape[1] * tb.shape[1], ta.shape[2] * tb.shape[2])
                    r0 = offs[n1 + n2][(i1 + i2)]
                    c0 = offs[n1][b1]
                    c1 = offs[n2][b2]
                    t[r0:r0 + blk.shape[0], c0:c0 + blk.shape[1], c1:c1 + blk.shape[2]] += blk
            products[(n1, n2)] = fl.flat(np.mod(t, A.p))
    label = name or f"({A.name} (x)^-1 {B.name})"
    return TruncatedGradedAlgebra.build(A.p, dims, products, name=label)


def signed_tensor_module(M: GradedModule, N: GradedModule, C: TruncatedGradedAlgebra | None = None,
                         name="") -> GradedModule:
    """M (x)^{-1} N over A (x)^{-1} B with (m n)(a b) = (-1)^{deg n deg a} (m a)(n b).

    Degree-t basis: blocks M_s (x) N_{t-s} in increasing s, M-index major.
    ``C`` may be passed to reuse an already built ``signed_tensor_algebra``.
    """
    A, B = M.algebra, N.algebra
    _check_same_field(A, B)
    if C is None:
        C = signed_tensor_algebra(A, B)
    lo = M.lo + N.lo
    top = min(M.top + N.lo, N.top + M.lo)

    def blocks(t):
        return [(s, t - s) for s in range(M.lo, t - N.lo + 1)]

    sizes = {t: [M.dim(s) * N.dim(u) for s, u in blocks(t)] for t in range(lo, top + 1)}
    dims = [sum(sizes[t]) for t in range(lo, top + 1)]
    offs = {t: _block_offsets(sizes[t])[0] for t in range(lo, top + 1)}
    cblocks = {n: [(i, n - i) for i in range(n + 1)] for n in range(C.D + 1)}
    coffs = {n: _block_offsets([A.dims[i] * B.dims[k] for i, k in cblocks[n]])[0]
             for n in range(C.D + 1)}
    actions = {}
    for t in range(lo, top + 1):
        for n in range(1, min(C.D, top - t) + 1):
            T = np.zeros((dims[t + n - lo], dims[t - lo], C.dims[n]), dtype=DTYPE)
            for bi, (s, u) in enumerate(blocks(t)):
                if M.dim(s) * N.dim(u) == 0:
                    continue
                for ci, (ia, ib) in enumerate(cblocks[n]):
                    if A.dims[ia] * B.dims[ib] == 0:
                        continue
                    tm, tn = M.tensor(s, ia), N.tensor(u, ib)
                    blk = np.einsum("xac,ybd->xyabcd", tm, tn)
                    if (u * ia) % 2:
                        blk = -blk
                    blk = blk.reshape(tm.shape[0] * tn.shape[0], tm.shape[1] * tn.shape[1],
                                      tm.shape[2] * tn.shape[2])
                    r0 = offs[t + n][(s + ia) - M.lo]
                    c0 = offs[t][bi]
                    a0 = coffs[n][ci]
                    T[r0:r0 + blk.shape[0], c0:c0 + blk.shape[1], a0:a0 + blk.shape[2]] += blk
            actions[(t, n)] = fl.flat(np.mod(T, C.p))
    label = name or f"({M.name} (x)^-1 {N.name})"
    return GradedModule.build(C, lo, dims, actions, name=label)


def _check_vector(M: GradedModule, deg: int, vec) -> np.ndarray:
    if not M.lo <= deg <= M.top:
        raise ValueError(f"generator degree {deg} outside [{M.lo}, {M.top}]")
    v = np.asarray(vec, dtype=DTYPE).reshape(-1)
    if v.size != M.dim(deg):
        raise ValueError(f"generator of degree {deg} has length {v.size}, expected {M.dim(deg)}")
    return np.mod(v, M.p)


def submodule(M: GradedModule, spaces: Mapping[int, Subspace], name="",
              check=True) -> GradedModule:
    """The submodule with the given degreewise subspaces (closure is checked)."""
    A = M.algebra
    emb = {}
    for k in range(M.lo, M.top + 1):
        s = spaces.get(k)
        emb[k] = s if s is not None else Subspace.zero(M.p, M.dim(k))
        if emb[k].ambient_dim != M.dim(k):
            raise DimensionMismatch(f"subspace in degree {k} has the wrong ambient dimension")
    dims = [emb[k].dim for k in range(M.lo, M.top + 1)]
    actions = {}
    for j in range(M.lo, M.top + 1):
        for i in range(1, min(A.D, M.top - j) + 1):
            S, T = emb[j], emb[j + i]
            if S.dim == 0 or A.dims[i] == 0:
                continue
            img = fl.as_rows(M.act_on(j, S.basis, i), M.dim(j + i))
            try:
                coords = T.coordinates(img)
            except ContainmentViolation:
                raise ContainmentViolation(
                    f"subspaces are not closed under the action in degrees {(j, i)}") from None
            # rows ordered (s, b); action wants column s * d_i + b
            actions[(j, i)] = coords.T
    return GradedModule.build(A, M.lo, dims, actions, name=name, ambient=M, embedding=emb,
                              check=check)


def submodule_from_generators(M: GradedModule, gens: Iterable, name="") -> GradedModule:
    """Smallest submodule containing the given (degree, vector) generators."""
    gens = list(gens)
    by_deg = {}
    for deg, vec in gens:
        by_deg.setdefault(deg, []).append(_check_vector(M, deg, vec))
    A = M.algebra
    spaces = {}
    for k in range(M.lo, M.top + 1):
        vecs = list(by_deg.get(k, []))
        for j in range(M.lo, k):
            i = k - j
            S = spaces[j]
            if S.dim and i <= A.D and A.dims[i]:
                vecs.extend(fl.as_rows(M.act_on(j, S.basis, i), M.dim(k)))
        spaces[k] = Subspace.span(np.array(vecs, dtype=DTYPE).reshape(len(vecs), M.dim(k)), M.p, M.dim(k))
    return submodule(M, spaces, name=name, check=False)


def _embedded_in(S: GradedModule, M: GradedModule) -> dict:
    if S.embedding is None:
        raise ContainmentViolation("quotient needs a submodule carrying its embedding")
    if S.ambient is not M:
        amb = S.ambient
        if amb is None or amb.lo != M.lo or amb.dims != M.dims:
            raise ContainmentViolation("submodule does not live in this module")
    emb = {}
    for k in range(M.lo, M.top + 1):
        s = S.embedding.get(k)
        if s is None:
            s = Subspace.zero(M.p, M.dim(k))
        if s.ambient_dim != M.dim(k):
            raise ContainmentViolation(f"submodule component {k} does not fit in the module")
        emb[k] = s
    return emb


def quotient_module(M: GradedModule, S: GradedModule, name="") -> GradedModule:
    """M/S; the quotient basis in each degree is the set of non-pivot coordinates of S."""
    emb = _embedded_in(S, M)
    A = M.algebra
    comp = {k: emb[k].complement_columns() for k in emb}
    dims = [len(comp[k]) for k in range(M.lo, M.top + 1)]
    actions = {}
    for j in range(M.lo, M.top + 1):
        for i in range(1, min(A.D, M.top - j) + 1):
            if not comp[j] or not comp[j + i] or not A.dims[i]:
                continue
            t = M.tensor(j, i)[:, comp[j], :]                       # (M_{j+i}, q_j, d_i)
            img = fl.as_rows(np.moveaxis(t, 0, -1), M.dim(j + i))    # rows (x, b)
            red = emb[j + i].reduce(img)[:, comp[j + i]]
            actions[(j, i)] = red.T
    return GradedModule.build(A, M.lo, dims, actions, name=name, check=False)


def projection_matrix(M: GradedModule, S: GradedModule, k: int) -> np.ndarray:
    """Matrix of M_k -> (M/S)_k in the basis used by :func:`quotient_module`."""
    s = _embedded_in(S, M)[k]
    comp = s.complement_columns()
    return s.reduce(fl.identity(M.dim(k)))[:, comp].T


def quotient_algebra(A: TruncatedGradedAlgebra, ideal: GradedModule, name="",
                     kind=None) -> TruncatedGradedAlgebra:
    """A/I for a two-sided homogeneous ideal given as a right submodule of A."""
    emb = {k: ideal.embedding.get(k, Subspace.zero(A.p, A.dims[k])) for k in range(A.D + 1)}
    if emb[0].dim:
        raise StructureError("ideal meets degree 0")
    for j in range(1, A.D + 1):
        for i in range(1, A.D + 1 - j):
            if emb[j].dim == 0 or A.dims[i] == 0:
                continue
            left = fl.apply_rows_right(A.tensor(i, j), emb[j].basis, A.p)
            if not emb[i + j].contains(fl.as_rows(left, A.dims[i + j])):
                raise ContainmentViolation("ideal is not closed under left multiplication")
    comp = {k: emb[k].complement_columns() for k in emb}
    dims = [len(comp[k]) for k in range(A.D + 1)]
    products = {}
    for i in range(1, A.D + 1):
        for j in range(1, A.D + 1 - i):
            t = A.tensor(i, j)[:, comp[i], :][:, :, comp[j]]
            img = fl.as_rows(np.moveaxis(t, 0, -1), A.dims[i + j])
            red = emb[i + j].reduce(img)[:, comp[i + j]]
            products[(i, j)] = red.T
    return TruncatedGradedAlgebra.build(A.p, dims, products, name=name, kind=kind)


def check_algebra_map(A: TruncatedGradedAlgebra, B: TruncatedGradedAlgebra, maps) -> bool:
    """True iff the degreewise matrices ``maps[k]: A_k -> B_k`` are multiplicative."""
    p = A.p
    D = min(A.D, B.D, len(maps) - 1)
    for i in range(1, D + 1):
        for j in range(1, D + 1 - i):
            lhs = fl.matmul(maps[i + j], A.mult[(i, j)], p)
            rhs = fl.matmul(B.mult[(i, j)], np.kron(maps[i], maps[j]), p)
            if not np.array_equal(lhs, rhs):
                return False
    return True


def restrict_scalars(M: GradedModule, A: TruncatedGradedAlgebra, maps, name="",
                     check=True) -> GradedModule:
    """A right module over B regarded as an A-module through an algebra map A -> B."""
    B = M.algebra
    _check_same_field(A, B)
    actions = {}
    for j in range(M.lo, M.top + 1):
        for i in range(1, min(A.D, B.D, M.top - j) + 1):
            act = M.act(j, i)
            actions[(j, i)] = fl.matmul(act, np.kron(fl.identity(M.dim(j)), maps[i]), A.p)
    return GradedModule.build(A, M.lo, M.dims, actions, name=name or M.name, check=check)


def pullback_module(B: TruncatedGradedAlgebra, A: TruncatedGradedAlgebra, maps,
                    name="") -> GradedModule:
    """B regarded as a right A-module through an algebra map A -> B."""
    return restrict_scalars(algebra_as_module(B), A, maps, name=name or B.name)


def trim(M: GradedModule) -> GradedModule:
    """Drop leading zero components so that ``lo`` is the lowest nonzero degree."""
    k = M.lowest_nonzero
    if k is None or k == M.lo:
        return M
    action = {key: m for key, m in M.action.items() if key[0] >= k}
    emb = ({d: s for d, s in M.embedding.items() if d >= k}
           if M.embedding is not None else None)
    return GradedModule(M.algebra, k, M.dims[k - M.lo:], action, M.name, M.ambient, emb)
