# Koszulity criteria for ideals of an exterior algebra
#
# For an ideal I generated in degree 2, the twisted module I(2) should be a
# Koszul module.  Quadraticity comes first, then a vanishing test that can be run
# directly over Lambda or through a dual module over the symmetric algebra.

# %%
from koszulkit.criteria import five_term_dims, is_quadratic_module, koszul_check, theorem_b_check
from koszulkit.groups import free_times_free_fixture, psi_and_kernel
from koszulkit.monomial import exterior_algebra, exterior_element
from koszulkit.quadratic import ideal_in_exterior, ideal_twist

# %% The ideal of Lambda(F_2^4) generated by x0x1 + x2x3 is not quadratic.
n, p, D = 4, 2, 6
R2 = exterior_element(n, [(1, [0, 1]), (1, [2, 3])])[None, :]
I, B = ideal_in_exterior(n, p, R2, D)
print("ideal dims:", I.dims, "  quotient dims:", B.dims)
res = is_quadratic_module(exterior_algebra(n, p, D), ideal_twist(I))
print("quadratic:", res.quadratic, " first nonzero H_{i,i+1}:", res.witness)
print(theorem_b_check(n, p, R2, D).verdict)

# %% The relation space of a Demushkin group passes, and the ideal is Koszul as far as we look.
R2 = psi_and_kernel("D(4)", 3, 3).kernel.embedding[2].basis
rep = theorem_b_check(4, 3, R2, D)
print(rep.verdict, " routes agree:", rep.cross_check)
I, _ = ideal_in_exterior(4, 3, R2, D)
print(koszul_check(exterior_algebra(4, 3, D), ideal_twist(I), 4, 4).verdict)

# %% A five-term exact sequence for F2 x F2 exposes a one-dimensional derived kernel.
fx = free_times_free_fixture(3)
print(five_term_dims(fx.B, fx.N))
