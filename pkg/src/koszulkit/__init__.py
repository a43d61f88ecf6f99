"""Finite-degree computations with Koszul algebras and modules over prime fields."""

__version__ = "0.1.0"

from .criteria import (cup_surjectivity_check, dual_mono_check, five_term_dims, is_quadratic_algebra,
                       is_quadratic_module, koszul_check, theorem_b_check)
from .errors import *  # noqa: F401,F403
from .fplinalg import Subspace, image, kernel_basis, rank, rref
from .graded import (GradedModule, TruncatedGradedAlgebra, algebra_as_module, direct_sum,
                     hilbert_function, quotient_module, residue_module, shift,
                     signed_tensor_algebra, signed_tensor_module, submodule_from_generators)
from .groups import (cohomology_algebra, demushkin_alpha, free_times_free_fixture, parse_group,
                     psi_and_kernel, verify_theorem_c)
from .homology import CellCache, cohomology_dim, homology_dim, homology_table, koszul_complex_tor
from .monomial import exterior_algebra, symmetric_algebra, syzygy_module_J, truncation_module
from .quadratic import (QuadraticAlgebraPresentation, QuadraticModulePresentation,
                        ideal_in_exterior, ideal_twist, quadratic_dual_algebra,
                        quadratic_dual_module, quadratic_part_algebra, quadratic_part_module,
                        realize_algebra, realize_module)
from .search import SearchRecord, random_relations, search, summarize
