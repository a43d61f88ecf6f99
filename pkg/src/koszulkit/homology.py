"""Graded homology H_{i,j}(A, M) = Tor^A_i(M, k)_j of a right module.

Three interchangeable engines compute the same numbers:

``bar``
    the normalized bar complex, M_{j0} (x) A_{j1} (x) ... (x) A_{ji} with all
    j_s >= 1 and differential
    d(m a1 ... ai) = (m a1) a2 ... ai + sum_{s=1}^{i-1} (-1)^s m a1 ... (a_s a_{s+1}) ... ai.
    This is the reference definition; it grows quickly with i.
``koszul``
    for exterior and symmetric algebras, whose Koszul resolutions of k are
    known in closed form, the much smaller complexes M (x) (S^i)^* and
    M (x) Lambda^i.
``resolution``
    a degree-by-degree minimal free resolution of M, for arbitrary algebras.

``method="auto"`` picks ``koszul`` when the algebra carries a ``kind`` tag and
otherwise the bar complex for small cells and the resolution for large ones.

A cell (i, j) is *certified* when M is known up to degree j and A up to degree
j - m, m the lowest nonzero degree of M; every term of the bar complex in
internal degree j is then determined.
"""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from . import fplinalg as fl
from .errors import AlgebraNotSymmetric, TruncationInsufficient
from .fplinalg import DTYPE, Subspace
from .graded import GradedModule, TruncatedGradedAlgebra
from .monomial import exterior_basis, exterior_index, symmetric_basis, symmetric_index

METHODS = ("auto", "bar", "koszul", "resolution")

# auto mode uses the bar complex when C_{i-1} + C_i + C_{i+1} is at most this
BAR_AUTO_LIMIT = 1500


def lowest_degree(M: GradedModule) -> int:
    k = M.lowest_nonzero
    return M.lo if k is None else k


def certify(A: TruncatedGradedAlgebra, M: GradedModule, i: int, j: int):
    if i < 0:
        raise ValueError("homological degree must be nonnegative")
    m = lowest_degree(M)
    if j > M.top:
        raise TruncationInsufficient(f"H_{{{i},{j}}} needs the module up to degree {j}; known to {M.top}")
    if j - m > A.D:
        raise TruncationInsufficient(
            f"H_{{{i},{j}}} needs the algebra up to degree {j - m}; known to {A.D}")


def _sym_dim(n, i):
    if i < 0:
        return 0
    return math.comb(n + i - 1, i) if n else int(i == 0)


# ---------------------------------------------------------------- bar complex

@lru_cache(maxsize=4096)
def _algebra_compositions(dims: tuple, total: int, parts: int) -> tuple:
    """Compositions of ``total`` into ``parts`` positive degrees with nonzero A-components."""
    if parts == 0:
        return ((),) if total == 0 else ()
    out = []
    for first in range(1, min(total - (parts - 1), len(dims) - 1) + 1):
        if dims[first] == 0:
            continue
        for rest in _algebra_compositions(dims, total - first, parts - 1):
            out.append((first,) + rest)
    return tuple(out)


def _bar_blocks(A, M, i, j):
    """[(composition, offset, size)] for C_{i,j}, compositions in lexicographic order."""
    if i < 0:
        return [], 0
    blocks, off = [], 0
    for j0 in range(lowest_degree(M), j - i + 1):
        if M.dim(j0) == 0:
            continue
        for rest in _algebra_compositions(A.dims, j - j0, i):
            size = M.dim(j0) * math.prod(A.dims[x] for x in rest)
            blocks.append(((j0,) + rest, off, size))
            off += size
    return blocks, off


def bar_space_dim(A: TruncatedGradedAlgebra, M: GradedModule, i: int, j: int) -> int:
    certify(A, M, i, j)
    return _bar_blocks(A, M, i, j)[1]


def bar_differential(A: TruncatedGradedAlgebra, M: GradedModule, i: int, j: int) -> np.ndarray:
    """Matrix of d: C_{i,j} -> C_{i-1,j}."""
    certify(A, M, i, j)
    src, ns = _bar_blocks(A, M, i, j)
    tgt, nt = _bar_blocks(A, M, i - 1, j)
    out = fl.zeros(nt, ns)
    if i == 0 or ns == 0 or nt == 0:
        return out
    where = {comp: off for comp, off, _ in tgt}
    p = A.p
    for comp, off, size in src:
        j0, js = comp[0], comp[1:]
        da = [A.dims[x] for x in js]
        new = (j0 + js[0],) + js[1:]
        if new in where:
            blk = np.kron(M.act(j0, js[0]), fl.identity(math.prod(da[1:])))
            r = where[new]
            out[r:r + blk.shape[0], off:off + size] += blk
        for s in range(1, i):
            new = (j0,) + js[:s - 1] + (js[s - 1] + js[s],) + js[s + 1:]
            if new not in where:
                continue
            left = M.dim(j0) * math.prod(da[:s - 1])
            blk = np.kron(np.kron(fl.identity(left), A.mult[(js[s - 1], js[s])]),
                          fl.identity(math.prod(da[s + 1:])))
            r = where[new]
            out[r:r + blk.shape[0], off:off + size] += blk if s % 2 == 0 else -blk
    return np.mod(out, p)


class _BarComplex:
    name = "bar"

    def __init__(self, A, M):
        self.A, self.M = A, M

    def dim(self, i, j):
        return _bar_blocks(self.A, self.M, i, j)[1]

    def differential(self, i, j):
        return bar_differential(self.A, self.M, i, j)


# ------------------------------------------------------------ Koszul complexes

class _ExteriorKoszulComplex:
    """M (x) (S^i V*)^* over Lambda(V); d(m (x) delta_mu) = sum_a (m e_a) (x) delta_{mu - a}."""

    name = "koszul"

    def __init__(self, A, M):
        self.A, self.M, self.n = A, M, A.kind[1]
        self.p = A.p

    def dim(self, i, j):
        return self.M.dim(j - i) * _sym_dim(self.n, i)

    def differential(self, i, j):
        M, n = self.M, self.n
        ms, mt = M.dim(j - i), M.dim(j - i + 1)
        out_rows = mt * _sym_dim(n, i - 1) if i >= 1 else 0
        if i == 0 or ms == 0 or out_rows == 0:
            return fl.zeros(out_rows, self.dim(i, j))
        T = M.tensor(j - i, 1)                                   # (m', m, a)
        src = symmetric_basis(n, i)
        tidx = symmetric_index(n, i - 1)
        d = np.zeros((mt, len(tidx), ms, len(src)), dtype=DTYPE)
        for c, mu in enumerate(src):
            for a in sorted(set(mu)):
                k = mu.index(a)
                nu = mu[:k] + mu[k + 1:]
                d[:, tidx[nu], :, c] += T[:, :, a]
        return np.mod(d.reshape(mt * len(tidx), ms * len(src)), self.p)


class _SymmetricKoszulComplex:
    """N (x) Lambda^i(V) over S(V); d(m (x) e_T) = sum_t (-1)^t (m x_{T_t}) (x) e_{T minus T_t}."""

    name = "koszul"

    def __init__(self, A, M):
        self.A, self.M, self.n = A, M, A.kind[1]
        self.p = A.p

    def dim(self, i, j):
        return self.M.dim(j - i) * math.comb(self.n, i) if i >= 0 else 0

    def differential(self, i, j):
        M, n = self.M, self.n
        ms, mt = M.dim(j - i), M.dim(j - i + 1)
        src = exterior_basis(n, i) if i >= 0 else ()
        out_rows = mt * math.comb(n, i - 1) if i >= 1 else 0
        if i == 0 or ms == 0 or out_rows == 0 or not src:
            return fl.zeros(out_rows, ms * len(src))
        T = M.tensor(j - i, 1)
        tidx = exterior_index(n, i - 1)
        d = np.zeros((mt, len(tidx), ms, len(src)), dtype=DTYPE)
        for c, S in enumerate(src):
            for t, a in enumerate(S):
                rest = S[:t] + S[t + 1:]
                d[:, tidx[rest], :, c] += T[:, :, a] if t % 2 == 0 else -T[:, :, a]
        return np.mod(d.reshape(mt * len(tidx), ms * len(src)), self.p)


def _koszul_complex(A, M):
    if A.kind is None:
        raise ValueError(f"no closed-form Koszul resolution known for {A!r}")
    if A.kind[0] == "exterior":
        return _ExteriorKoszulComplex(A, M)
    if A.kind[0] == "symmetric":
        return _SymmetricKoszulComplex(A, M)
    raise ValueError(f"unknown algebra kind {A.kind!r}")


class _RankCache:
    """Ranks of differentials, each computed once; d o d = 0 asserted on every pair used."""

    def __init__(self, cx, p):
        self.cx, self.p = cx, p
        self._rank = {}
        self._mat = {}
        self._checked = set()

    def matrix(self, i, j):
        key = (i, j)
        if key not in self._mat:
            self._mat[key] = self.cx.differential(i, j)
        return self._mat[key]

    def rank(self, i, j):
        if (i, j) not in self._rank:
            self._rank[(i, j)] = fl.rank(self.matrix(i, j), self.p)
        return self._rank[(i, j)]

    def check_square(self, i, j):
        if (i, j) in self._checked or i < 1:
            return
        lo, hi = self.matrix(i, j), self.matrix(i + 1, j)
        if lo.size and hi.size and fl.matmul(lo, hi, self.p).any():
            raise AssertionError(f"d o d != 0 at ({i}, {j}) in the {self.cx.name} complex")
        self._checked.add((i, j))

    def homology(self, i, j):
        self.check_square(i, j)
        return self.cx.dim(i, j) - self.rank(i, j) - self.rank(i + 1, j)


def koszul_complex_tor(S: TruncatedGradedAlgebra, N: GradedModule, i: int, j: int) -> int:
    """Tor^S_i(N, k)_j for a polynomial algebra via N (x) Lambda^*(V)."""
    if S.kind is None or S.kind[0] != "symmetric":
        raise AlgebraNotSymmetric(f"{S!r} was not built by symmetric_algebra")
    certify(S, N, i, j)
    if j < i + lowest_degree(N):
        return 0
    return _RankCache(_SymmetricKoszulComplex(S, N), S.p).homology(i, j)


# ------------------------------------------------------ minimal free resolution

class MinimalResolution:
    """Minimal graded free resolution F^(0) -> M computed up to (i_max, j_max).

    ``counts[(s, j)]`` is the number of degree-j generators of F^(s), which equals
    dim Tor_s(M, k)_j.  Vectors are rows; F^(s) in degree j has one block per
    generator g (in creation order) of size dim A_{j - deg g}.
    """

    def __init__(self, A: TruncatedGradedAlgebra, M: GradedModule, i_max: int, j_max: int):
        certify(A, M, i_max, j_max)
        self.A, self.M, self.p = A, M, A.p
        self.i_max, self.j_max = i_max, j_max
        self.lo = lowest_degree(M)
        self.gens = []          # gens[s] = list of (degree, row vector in ambient coords)
        self.counts = {}
        self._phi = {}
        for s in range(i_max + 1):
            self._step(s)

    def _free_dim(self, s, j):
        return sum(self.A.dim(j - e) for e, _ in self.gens[s] if e <= j)

    def _ambient_dim(self, s, j):
        return self.M.dim(j) if s == 0 else self._free_dim(s - 1, j)

    def _act(self, s, e, vecs, t):
        """Rows v * b for v in the ambient of F^(s) in degree e and b in A_t: (k, d_t, width)."""
        if s == 0:
            return self.M.act_on(e, vecs, t)
        A = self.A
        prev = self.gens[s - 1]
        vecs = fl.as_rows(vecs, self._free_dim(s - 1, e))
        out = np.zeros((vecs.shape[0], A.dim(t), self._free_dim(s - 1, e + t)), dtype=DTYPE)
        src = tgt = 0
        for eg, _ in prev:
            if eg > e + t:
                break
            w_t = A.dim(e + t - eg)
            if eg <= e:
                w_s = A.dim(e - eg)
                if w_s and w_t:
                    T = A.tensor(e - eg, t)                        # (z, x, b)
                    out[:, :, tgt:tgt + w_t] = fl.apply_rows(T, vecs[:, src:src + w_s], self.p)
                src += w_s
            tgt += w_t
        return np.mod(out, self.p)

    def _images(self, s, j, gens):
        """Rows of phi_s in degree j for the given generators of F^(s)."""
        width = self._ambient_dim(s, j)
        rows = []
        for e, v in gens:
            t = j - e
            if t == 0:
                rows.append(v.reshape(1, width))
            elif self.A.dim(t):
                rows.append(self._act(s, e, v, t).reshape(self.A.dim(t), width))
        if not rows:
            return fl.zeros(0, width)
        return np.concatenate(rows)

    def _step(self, s):
        self.gens.append([])
        for j in range(self.lo + s, self.j_max + 1):
            width = self._ambient_dim(s, j)
            if s == 0:
                X = Subspace.full(self.p, width)
            else:
                X = fl.kernel_basis(self._phi[(s - 1, j)].T, self.p)
            old = self._images(s, j, [g for g in self.gens[s] if g[0] < j])
            dec = Subspace.span(old, self.p, width)
            new = Subspace.span(dec.reduce(X.basis), self.p, width).basis if X.dim else fl.zeros(0, width)
            self.counts[(s, j)] = new.shape[0]
            self.gens[s].extend((j, row.copy()) for row in new)
            self._phi[(s, j)] = np.concatenate([old, new]) if new.shape[0] else old
        for j in range(self.lo, min(self.lo + s, self.j_max + 1)):
            self.counts[(s, j)] = 0
            self._phi[(s, j)] = fl.zeros(self._free_dim(s, j), self._ambient_dim(s, j))

    def dim(self, i, j):
        if i > self.i_max or j > self.j_max:
            raise TruncationInsufficient("cell outside the computed resolution")
        return self.counts.get((i, j), 0)


# ------------------------------------------------------------------ dispatch

def _bar_size(A, M, i, j):
    return sum(_bar_blocks(A, M, k, j)[1] for k in (i - 1, i, i + 1))


def _choose(A, M, i, j, method):
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if method != "auto":
        return method
    if A.kind is not None:
        return "koszul"
    return "bar" if _bar_size(A, M, i, j) <= BAR_AUTO_LIMIT else "resolution"


def homology_dim(A: TruncatedGradedAlgebra, M: GradedModule, i: int, j: int,
                 method: str = "auto") -> int:
    """dim H_{i,j}(A, M)."""
    certify(A, M, i, j)
    if M.algebra is not A and M.algebra.dims[:A.D + 1] != A.dims:
        raise ValueError("module is not over this algebra")
    if j < i + lowest_degree(M) or M.lowest_nonzero is None:
        return 0
    how = _choose(A, M, i, j, method)
    if how == "resolution":
        return MinimalResolution(A, M, i, j).dim(i, j)
    cx = _BarComplex(A, M) if how == "bar" else _koszul_complex(A, M)
    return _RankCache(cx, A.p).homology(i, j)


def cohomology_dim(A: TruncatedGradedAlgebra, M: GradedModule, i: int, j: int,
                   method: str = "auto") -> int:
    """dim H^{i,j}(A, M); equal to the homology dimension for locally finite data."""
    return homology_dim(A, M, i, j, method)


@dataclass
class HomologyTable:
    entries: dict
    i_max: int
    j_min: int
    j_max: int
    algebra_truncation: int
    module_top: int
    method: str = "auto"

    def __getitem__(self, key):
        return self.entries[key]

    def dim(self, i, j):
        if (i, j) not in self.entries:
            raise TruncationInsufficient(f"cell {(i, j)} is outside the certified rectangle")
        return self.entries[(i, j)]

    def nonzero(self):
        return {k: v for k, v in sorted(self.entries.items()) if v}

    def off_diagonal(self, offset: int = 0):
        """Nonzero cells with j != i + offset, as (i, j, dim)."""
        return [(i, j, d) for (i, j), d in sorted(self.entries.items()) if d and j != i + offset]

    def to_dict(self):
        return {
            "table": [{"i": i, "j": j, "dim": d} for (i, j), d in sorted(self.entries.items())],
            "certified": {"i_max": self.i_max, "j_min": self.j_min, "j_max": self.j_max},
            "truncation": {"algebra": self.algebra_truncation, "module_top": self.module_top},
        }


class CellCache:
    """Content-addressed on-disk store of homology dims; purely an optimization."""

    def __init__(self, directory):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def fingerprint(A, M):
        h = hashlib.sha256()
        h.update(repr((A.p, A.dims, M.lo, M.dims)).encode())
        for key in sorted(A.mult):
            h.update(repr(key).encode())
            h.update(np.ascontiguousarray(A.mult[key]).tobytes())
        for key in sorted(M.action):
            h.update(repr(key).encode())
            h.update(np.ascontiguousarray(M.action[key]).tobytes())
        return h.hexdigest()

    def _path(self, fp, i, j):
        return self.dir / f"{fp}-{i}-{j}.json"

    def get(self, fp, i, j):
        path = self._path(fp, i, j)
        if path.exists():
            return json.loads(path.read_text())["dim"]
        return None

    def put(self, fp, i, j, d):
        self._path(fp, i, j).write_text(json.dumps({"i": i, "j": j, "dim": d}))


def homology_table(A: TruncatedGradedAlgebra, M: GradedModule, i_max: int, j_max: int,
                   method: str = "auto", jobs: int = 1,
                   cache: CellCache | None = None) -> HomologyTable:
    """All cells 0 <= i <= i_max, m <= j <= j_max (m the lowest degree of M)."""
    m = lowest_degree(M)
    certify(A, M, i_max, j_max)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    entries = {}
    cells = []
    for i in range(i_max + 1):
        for j in range(m, j_max + 1):
            if j < i + m or M.lowest_nonzero is None:
                entries[(i, j)] = 0
            else:
                cells.append((i, j))
    fp = CellCache.fingerprint(A, M) if cache is not None else None
    todo = []
    for c in cells:
        hit = cache.get(fp, *c) if cache is not None else None
        if hit is None:
            todo.append(c)
        else:
            entries[c] = hit
    how = method
    if method == "auto":
        how = "koszul" if A.kind is not None else "resolution"
    if todo and how == "resolution":
        res = MinimalResolution(A, M, i_max, j_max)
        results = [res.dim(i, j) for i, j in todo]
    elif todo:
        cx = _BarComplex(A, M) if how == "bar" else _koszul_complex(A, M)
        ranks = _RankCache(cx, A.p)
        needed = sorted({(k, j) for i, j in todo for k in (i, i + 1) if k >= 1})
        pairs = sorted({(i, j) for i, j in todo if i >= 1})
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                mats = list(pool.map(lambda c: cx.differential(*c), needed))
                ranks._mat.update(zip(needed, mats))
                rks = list(pool.map(lambda c: fl.rank(ranks._mat[c], A.p), needed))
                ranks._rank.update(zip(needed, rks))
        for c in pairs:
            ranks.check_square(*c)
        results = [ranks.homology(i, j) for i, j in todo]
    else:
        results = []
    for c, d in zip(todo, results):
        entries[c] = int(d)
        if cache is not None:
            cache.put(fp, *c, int(d))
    return HomologyTable(dict(sorted(entries.items())), i_max, m, j_max, A.D, M.top, how)
