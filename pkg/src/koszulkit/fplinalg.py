"""Exact linear algebra over prime fields.

Matrices are plain ``numpy`` integer arrays with entries in ``[0, p)``.  A matrix
describing a linear map is stored as ``target x source`` (it acts on column
vectors); a :class:`Subspace` stores its basis as *rows* in reduced row-echelon
form, so two subspaces are equal exactly when their bases are equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContainmentViolation, DimensionMismatch

DTYPE = np.int64

# Above this many entries `rank` switches to the blocked elimination.
_BLOCKED_THRESHOLD = 200_000
_PANEL = 64


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not 2 <= self.p < 2**16:
            raise ValueError(f"characteristic must be an integer in [2, 2^16), got {self.p!r}")
        if not is_prime(int(self.p)):
            raise ValueError(f"{self.p} is not prime")

    def inv(self, a: int) -> int:
        return pow(int(a) % self.p, -1, self.p)


def check_prime(p: int) -> int:
    return PrimeField(int(p)).p


def as_matrix(m, p: int, shape=None) -> np.ndarray:
    """Return ``m`` as a 2-d int64 array reduced mod ``p``."""
    a = np.asarray(m, dtype=DTYPE)
    if shape is not None:
        a = a.reshape(shape)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {a.shape}")
    return np.mod(a, p)


def as_rows(v, width: int) -> np.ndarray:
    """View ``v`` as a stack of row vectors of the given width (zero widths allowed)."""
    v = np.asarray(v, dtype=DTYPE)
    if v.ndim >= 2 and v.shape[-1] == width:
        return v.reshape(math.prod(v.shape[:-1]), width)
    if width == 0:
        return np.zeros((0, 0), dtype=DTYPE)
    return v.reshape(-1, width)


def flat(t) -> np.ndarray:
    """Merge all trailing axes: shape (a, b, c, ...) -> (a, b*c*...)."""
    t = np.asarray(t)
    return t.reshape(t.shape[0], math.prod(t.shape[1:]))


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=DTYPE)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=DTYPE)


def matmul(a, b, p: int) -> np.ndarray:
    """Product mod p.

    Uses float64 BLAS on chunks of the inner dimension short enough that every
    partial sum is an integer below 2^53, so the result is exact.
    """
    a = np.asarray(a, dtype=DTYPE)
    b = np.asarray(b, dtype=DTYPE)
    inner = a.shape[-1]
    if inner == 0 or a.size == 0 or b.size == 0:
        return np.zeros(a.shape[:-1] + b.shape[1:], dtype=DTYPE)
    chunk = max(1, (2**53 - 1) // ((p - 1) ** 2 + 1))
    af = a.astype(np.float64)
    bf = b.astype(np.float64)
    out = None
    for s in range(0, inner, chunk):
        part = np.fmod(af[..., s:s + chunk] @ bf[s:s + chunk], p)
        out = part if out is None else np.fmod(out + part, p)
    return out.astype(DTYPE)


def apply_rows(T, v, p: int) -> np.ndarray:
    """For T of shape (z, x, b) and rows v (s, x): out[s, b, z] = sum_x T[z, x, b] v[s, x]."""
    z, x, b = T.shape
    v = as_rows(v, x)
    m = matmul(v, np.ascontiguousarray(T.transpose(1, 2, 0)).reshape(x, b * z), p)
    return m.reshape(v.shape[0], b, z)


def apply_rows_right(T, v, p: int) -> np.ndarray:
    """For T of shape (z, a, b) and rows v (s, b): out[s, a, z] = sum_b T[z, a, b] v[s, b]."""
    return apply_rows(T.transpose(0, 2, 1), v, p)


def rref(m, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row-echelon form with zero rows dropped, plus the pivot columns."""
    a = as_matrix(m, p).copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r, c:] = a[r, c:] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit, c:] = (a[hit, c:] - np.outer(col[hit], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a[:r], tuple(pivots)


def _panel_pivots(panel: np.ndarray, p: int):
    # Greedy pivot rows/columns of a narrow panel; rows keep their original index.
    P = panel.copy()
    m, w = P.shape
    free = np.ones(m, dtype=bool)
    rows, cols = [], []
    for c in range(w):
        cand = np.flatnonzero(free & (P[:, c] != 0))
        if cand.size == 0:
            continue
        r = int(cand[0])
        rows.append(r)
        cols.append(c)
        free[r] = False
        rest = cand[1:]
        if rest.size:
            f = P[rest, c] * pow(int(P[r, c]), -1, p) % p
            P[rest, c:] = (P[rest, c:] - np.outer(f, P[r, c:])) % p
    return np.array(rows, dtype=np.intp), np.array(cols, dtype=np.intp)


def _rank_blocked(a: np.ndarray, p: int) -> int:
    # Block elimination: pivot rows of each panel are retired, the remaining rows
    # are cleared with one float matmul (exact: panel width * (p-1)^2 < 2^53).
    if a.shape[1] > a.shape[0]:
        a = a.T
    act = a.astype(np.float64)
    total = 0
    while act.shape[0] and act.shape[1]:
        act = act[act.any(axis=1)]
        if act.shape[0] == 0:
            break
        panel = act[:, :_PANEL].astype(DTYPE)
        prow, pcol = _panel_pivots(panel, p)
        k = prow.size
        if k == 0:
            act = act[:, _PANEL:]
            continue
        keep = np.ones(act.shape[0], dtype=bool)
        keep[prow] = False
        inv = inverse(panel[np.ix_(prow, pcol)], p).astype(np.float64)
        x = np.fmod(panel[np.ix_(keep, pcol)].astype(np.float64) @ inv, p)
        act = np.mod(act[keep, _PANEL:] - x @ act[prow, _PANEL:], p)
        total += k
    return total


def rank(m, p: int) -> int:
    a = as_matrix(m, p)
    if a.size == 0:
        return 0
    if a.size > _BLOCKED_THRESHOLD and min(a.shape) > _PANEL:
        return _rank_blocked(a, p)
    return len(rref(a, p)[1])


def inverse(m, p: int) -> np.ndarray:
    a = as_matrix(m, p)
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionMismatch("inverse of a non-square matrix")
    r, piv = rref(np.concatenate([a, identity(n)], axis=1), p)
    if piv[:n] != tuple(range(n)) or len(piv) < n:
        raise ValueError("matrix is singular")
    return r[:, n:]


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F_p^ambient_dim held by its canonical (RREF) row basis."""

    p: int
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple

    @classmethod
    def span(cls, vectors, p: int, ambient_dim: int | None = None) -> "Subspace":
        v = np.asarray(vectors, dtype=DTYPE)
        if ambient_dim is None:
            if v.ndim != 2:
                raise DimensionMismatch("ambient dimension needed for an empty spanning set")
            ambient_dim = v.shape[1]
        v = as_rows(v, ambient_dim)
        b, piv = rref(v, p)
        b.setflags(write=False)
        return cls(p, ambient_dim, b, piv)

    @classmethod
    def zero(cls, p: int, n: int) -> "Subspace":
        return cls.span(zeros(0, n), p, n)

    @classmethod
    def full(cls, p: int, n: int) -> "Subspace":
        return cls.span(identity(n), p, n)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.p == other.p and self.ambient_dim == other.ambient_dim
                and np.array_equal(self.basis, other.basis))

    def __hash__(self):
        return hash((self.p, self.ambient_dim, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(p={self.p}, dim={self.dim}/{self.ambient_dim})"

    def reduce(self, vectors) -> np.ndarray:
        """Normal form of row vectors modulo the subspace (zero at pivot columns)."""
        v = np.mod(as_rows(vectors, self.ambient_dim), self.p)
        if self.dim == 0:
            return v
        return np.mod(v - matmul(v[:, list(self.pivots)], self.basis, self.p), self.p)

    def contains(self, vectors) -> bool:
        if isinstance(vectors, Subspace):
            vectors = vectors.basis
        return not self.reduce(vectors).any()

    def coordinates(self, vectors) -> np.ndarray:
        """Coefficients expressing each row vector in the canonical basis."""
        v = np.mod(as_rows(vectors, self.ambient_dim), self.p)
        c = v[:, list(self.pivots)]
        if np.mod(v - matmul(c, self.basis, self.p), self.p).any():
            raise ContainmentViolation("vector not in subspace")
        return c

    def complement_columns(self) -> list[int]:
        """Standard coordinates not used as pivots; they index a basis of the quotient."""
        piv = set(self.pivots)
        return [c for c in range(self.ambient_dim) if c not in piv]

    def __add__(self, other: "Subspace") -> "Subspace":
        _same_ambient(self, other)
        return Subspace.span(np.concatenate([self.basis, other.basis]), self.p, self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        _same_ambient(self, other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.p, self.ambient_dim)
        stacked = np.concatenate([self.basis, np.mod(-other.basis, self.p)])
        k = kernel_basis(stacked.T, self.p)
        return Subspace.span(matmul(k.basis[:, :self.dim], self.basis, self.p),
                             self.p, self.ambient_dim)


def _same_ambient(a: Subspace, b: Subspace):
    if a.p != b.p or a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("subspaces live in different spaces")


def kernel_basis(m, p: int) -> Subspace:
    """Canonical basis of {x : m x = 0}."""
    a = as_matrix(m, p)
    cols = a.shape[1]
    r, piv = rref(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    vecs = zeros(len(free), cols)
    for row, f in enumerate(free):
        vecs[row, f] = 1
        for i, c in enumerate(piv):
            vecs[row, c] = (-r[i, f]) % p
    return Subspace.span(vecs, p, cols)


def image(m, p: int) -> Subspace:
    """Column space of ``m`` as a subspace of the target."""
    a = as_matrix(m, p)
    return Subspace.span(a.T, p, a.shape[0])


def annihilator(s: Subspace, pairing) -> Subspace:
    """{f : <v, f> = 0 for all v in s}, where <v, f> = v^T P f."""
    P = as_matrix(pairing, s.p)
    if P.shape[0] != s.ambient_dim:
        raise DimensionMismatch(
            f"pairing has {P.shape[0]} rows but the subspace lives in dimension {s.ambient_dim}")
    if s.dim == 0:
        return Subspace.full(s.p, P.shape[1])
    return kernel_basis(matmul(s.basis, P, s.p), s.p)


def orthogonal_complement(s: Subspace) -> Subspace:
    """Annihilator under the standard dot pairing of dual bases."""
    return annihilator(s, identity(s.ambient_dim))


def quotient_dim(big: Subspace, small: Subspace) -> int:
    _same_ambient(big, small)
    if not big.contains(small):
        raise ContainmentViolation("small subspace is not contained in big subspace")
    return big.dim - small.dim
