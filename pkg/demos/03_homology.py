# Bigraded homology H_{i,j}(A, M) = Tor_i^A(M, k)_j
#
# Three engines compute the same numbers: the normalized bar complex, the Koszul
# complex (exterior and symmetric algebras only) and a minimal free resolution.

# %%
from koszulkit.graded import algebra_as_module, quotient_module, residue_module
from koszulkit.homology import homology_dim, homology_table
from koszulkit.monomial import exterior_algebra, truncation_module


def show(T, title):
    print(title)
    for i in range(T.i_max + 1):
        print(f"  i={i}: " + " ".join(f"{T[i, j]:3d}" for j in range(T.j_max + 1)))


# %% The residue field over an exterior algebra: a diagonal table of symmetric powers.
L = exterior_algebra(3, 2, 5)
show(homology_table(L, residue_module(L), 5, 5), "H(Lambda(F_2^3), k)")

# %% The cohomology ring of a free pro-p group of rank 2, as a module over Lambda(F_p^2).
# It is 1, 2, 0, 0, ... and its homology sits one step off the diagonal.
p, D = 5, 7
L2 = exterior_algebra(2, p, D)
H = quotient_module(algebra_as_module(L2), truncation_module(2, p, D, 2, L2))
show(homology_table(L2, H, 6, 7), "H(Lambda(F_5^2), H(F_2))")

# %% The engines agree cell by cell.
for i, j in [(1, 2), (2, 3), (3, 4), (2, 2)]:
    print((i, j), [homology_dim(L2, H, i, j, m) for m in ("bar", "koszul", "resolution")])

# %% Cells beyond the truncation are refused rather than guessed.
try:
    homology_dim(L2, H, 2, 9)
except Exception as exc:
    print(type(exc).__name__, "-", exc)
