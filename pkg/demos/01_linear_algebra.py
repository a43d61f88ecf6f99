# Exact linear algebra over F_p
#
# Everything in the package reduces to rank and kernel computations over a prime
# field.  Matrices are int64 numpy arrays with entries in [0, p).

# %%
import numpy as np

from koszulkit import fplinalg as fl

p = 3
m = np.array([[1, 2, 0, 1],
              [2, 1, 0, 2],
              [0, 0, 1, 1]])
R, pivots = fl.rref(m, p)
print("rref mod 3:\n", R)
print("pivot columns:", pivots, " rank:", fl.rank(m, p))

# %% The kernel comes back as a Subspace with a canonical (reduced) basis.
K = fl.kernel_basis(m, p)
print("kernel dim:", K.dim)
print("m @ kernel^T == 0:", not fl.matmul(m, K.basis.T, p).any())

# %% Subspaces compare by their canonical bases, so equality is exact.
a = fl.Subspace.span([[1, 1, 0], [0, 1, 1]], p)
b = fl.Subspace.span([[1, 2, 1], [1, 0, 2]], p)
print("same plane:", a == b)
print("orthogonal complement:", fl.orthogonal_complement(a).basis)

# %% Large products go through float64 BLAS in chunks small enough to stay exact.
rng = np.random.default_rng(0)
x = rng.integers(0, 101, (300, 2000))
y = rng.integers(0, 101, (2000, 300))
exact = (x.astype(object) @ y.astype(object)) % 101
print("chunked matmul exact:", np.array_equal(fl.matmul(x, y, 101), exact.astype(np.int64)))
