# Truncated graded algebras and modules
#
# An algebra is stored degree by degree up to a truncation D, with one structure
# tensor per pair of degrees.  Modules are right modules over such an algebra.

# %%
from koszulkit.graded import (algebra_as_module, quotient_module, shift,
                              signed_tensor_algebra, signed_tensor_module, trim)
from koszulkit.monomial import exterior_algebra, symmetric_algebra, truncation_module

p, D = 3, 5
L = exterior_algebra(3, p, D)
S = symmetric_algebra(3, p, D)
print(L.name, L.dims)
print(S.name, S.dims)

# %% Associativity and unit laws are checked when an algebra is built; validate() reruns them.
L.validate()
S.validate()

# %% Modules: the free module, a truncation Lambda_{>=2} and the quotient Lambda / Lambda_{>=2}.
F = algebra_as_module(L)
T = truncation_module(3, p, D, 2, L)
Q = quotient_module(F, T)
print("Lambda_{>=2}:", T.dims, "  quotient:", Q.dims)
print("Lambda_{>=2}(2), trimmed to start in degree 0:", trim(shift(T, 2)).dims)

# %% Graded tensor products carry the Koszul sign; Lambda(k^2) (x) Lambda(k^2) is Lambda(k^4).
L2 = exterior_algebra(2, p, 4)
C = signed_tensor_algebra(L2, L2)
print("Lambda(2) (x) Lambda(2):", C.dims, " vs Lambda(4):", exterior_algebra(4, p, 4).dims)
M = signed_tensor_module(algebra_as_module(L2), algebra_as_module(L2), C)
print("free (x) free:", M.dims)
