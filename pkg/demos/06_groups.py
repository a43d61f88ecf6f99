# Pro-p groups of elementary type
#
# Groups are written as small expressions: Zp, F(n), D(d), free products (e1 * e2)
# and semidirect products (A(m) x e).  From an expression we build the cohomology
# ring, the map psi from the exterior algebra on H^1 and its kernel.

# %%
from koszulkit import fplinalg as fl
from koszulkit.groups import (cohomology_algebra, demushkin_alpha, h1_dim, parse_group,
                              psi_and_kernel, verify_theorem_c)

p = 3
e = parse_group("(A(1) x (D(2) * F(1)))")
print(e, " h1 =", h1_dim(e))
print("cohomology:", cohomology_algebra(e, p, 4).dims)
pk = psi_and_kernel(e, p, 4)
print("kernel of psi:", pk.kernel.dims)

# %% Parse errors say where they happened.
try:
    parse_group("(D(2) * F(1)")
except Exception as exc:
    print(type(exc).__name__, "at", exc.pos)

# %% The maps alpha used for Demushkin groups are injective in every degree we try.
for d in (2, 4):
    print(d, [fl.rank(demushkin_alpha(d, p, i), p) == demushkin_alpha(d, p, i).shape[1]
              for i in range(6)])

# %% Koszulity of the shifted kernel, degree by degree, for a few nested groups.
for text in ["D(4)", "(D(2) * D(2))", "(A(2) x D(4))", "((A(1) x D(2)) * D(2))"]:
    rep = verify_theorem_c(text, p, 5)
    print(f"{text:26s} {rep.verdict} up to {rep.verified_up_to}")
