# Quadratic algebras, quadratic parts and quadratic duals
#
# A quadratic algebra is T(V)/(R) with R inside V (x) V.  The dual swaps V for V*
# and R for its annihilator, which exchanges exterior and symmetric algebras.

# %%
from koszulkit.graded import TruncatedGradedAlgebra
from koszulkit.groups import cohomology_algebra
from koszulkit.quadratic import (exterior_presentation, quadratic_dual_algebra,
                                 quadratic_part_algebra, realize_algebra, symmetric_presentation)

p = 3
E = exterior_presentation(3, p)
print("relations of Lambda(k^3):", E.R.dim, " of its dual:", quadratic_dual_algebra(E).R.dim)
print("dual of Lambda is S:", quadratic_dual_algebra(E).R == symmetric_presentation(3, p).R)
print("realized dual:", realize_algebra(quadratic_dual_algebra(E), 5).dims)

# %% The quadratic part keeps only degree 1 generators and degree 2 relations.
# For k[x]/(x^3) there are no quadratic relations at all, so q is k[x].
cubic = TruncatedGradedAlgebra.build(p, [1, 1, 1, 0, 0, 0], {(1, 1): [[1]]})
print("q(k[x]/(x^3)):", realize_algebra(quadratic_part_algebra(cubic), 5).dims)

# %% A Demushkin cohomology ring is quadratic; its dual grows like a polynomial ring.
B = cohomology_algebra("D(4)", p, 4)
q = quadratic_part_algebra(B)
print("H(D(4)):", B.dims, " quadratic part:", realize_algebra(q, 4).dims)
print("dual:", realize_algebra(quadratic_dual_algebra(q), 5).dims)
