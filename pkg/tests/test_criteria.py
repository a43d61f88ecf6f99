from math import comb

import numpy as np
import pytest

from koszulkit.criteria import (DEFECTS, FAILS, HOLDS, KOSZUL, NOT_QUADRATIC, FiveTermDims,
                                cup_surjectivity_check, dual_mono_check, dual_quotient_module,
                                five_term_dims, inclusion_maps, is_quadratic_algebra,
                                is_quadratic_module, koszul_check, theorem_b_check)
from koszulkit.errors import H14NonzeroWarning, InputNotMonomorphism
from koszulkit.graded import (TruncatedGradedAlgebra, algebra_as_module, quotient_module,
                              residue_module, shift, submodule_from_generators,
                              trivial_action_module, trim)
from koszulkit.groups import cohomology_algebra, free_times_free_fixture, psi_and_kernel
from koszulkit.homology import homology_dim
from koszulkit.monomial import exterior_algebra, exterior_element, truncation_module
from koszulkit.quadratic import (ideal_in_exterior, ideal_twist, quadratic_dual_module,
                                 quadratic_part_module, realize_algebra, realize_module)
from koszulkit.search import random_relations

from builders import random_quotient

BLUMER = exterior_element(4, [(1, [0, 1]), (1, [2, 3])])[None, :]

# n = 5, p = 2: I(2) is quadratic but H_{2,5}(Lambda, I) has dimension 6
FAILING_R2 = [[1, 0, 0, 0, 1, 1, 1, 0, 0, 0], [0, 1, 0, 0, 1, 0, 1, 1, 0, 0],
              [0, 0, 1, 0, 1, 1, 0, 0, 0, 0], [0, 0, 0, 1, 1, 1, 1, 0, 0, 0]]


def demushkin_R2(d, p):
    return psi_and_kernel(f"D({d})", p, 3).kernel.embedding[2].basis


def blumer_twist(D=6):
    I, _ = ideal_in_exterior(4, 2, BLUMER, D)
    return ideal_twist(I)


def test_quadratic_module_examples():
    L = exterior_algebra(4, 2, 6)
    assert is_quadratic_module(L, algebra_as_module(L)).quadratic
    res = is_quadratic_module(L, blumer_twist())
    assert not res.quadratic and res.witness == (1, 2)
    for p in (2, 3):
        L3 = exterior_algebra(3, p, 6)
        L2 = trim(shift(truncation_module(3, p, 6, 2, L3), 2))
        assert is_quadratic_module(L3, L2)


def test_quadratic_algebra_examples():
    assert is_quadratic_algebra(exterior_algebra(3, 3, 5))
    cubic = TruncatedGradedAlgebra.build(5, [1, 1, 1, 0, 0], {(1, 1): [[1]]})
    res = is_quadratic_algebra(cubic)
    assert not res and res.witness == (2, 3)
    assert is_quadratic_algebra(cohomology_algebra("D(4)", 3, 5))


def test_koszul_check_examples():
    L = exterior_algebra(3, 3, 6)
    rep = koszul_check(L, None, 6, 6)
    assert rep.verdict == KOSZUL and rep.verified_up_to == (6, 6)
    assert koszul_check(exterior_algebra(4, 2, 6), blumer_twist(), 4, 4).verdict == DEFECTS
    pk = psi_and_kernel("D(4)", 3, 8)
    assert koszul_check(pk.exterior, trim(shift(pk.kernel, 2)), 6, 6).ok


def test_cup_surjectivity_examples():
    L = exterior_algebra(3, 2, 4)
    assert cup_surjectivity_check(algebra_as_module(L))
    assert not cup_surjectivity_check(trivial_action_module(L, 0, [1, 0, 1, 0, 0]))
    assert cup_surjectivity_check(free_times_free_fixture(2).N)


def test_cup_surjectivity_equals_h02_vanishing():
    rng = np.random.default_rng(23)
    for case in range(40):
        p = int(rng.choice([2, 3]))
        L = exterior_algebra(int(rng.integers(1, 4)), p, 4)
        M = random_quotient(rng, L, [0, 0] if case % 2 else [0, 1], int(rng.integers(0, 3)))
        if M.lowest_nonzero is None or M.lowest_nonzero > 0:
            continue
        assert cup_surjectivity_check(M) == (homology_dim(L, M, 0, 2) == 0)


@pytest.mark.parametrize("p", [2, 3])
def test_five_term_free_times_free(p):
    fx = free_times_free_fixture(p)
    dims = five_term_dims(fx.B, fx.N)
    assert (dims.h12N, dims.h24B, dims.h02N, dims.derived_ker_d) == (0, 1, 0, 1)
    assert dims.h12N - dims.h24B + dims.derived_ker_d - dims.h02N == 0


def test_five_term_all_vanishing_case():
    L = exterior_algebra(4, 3, 6)
    F = algebra_as_module(L)
    assert five_term_dims(F, F).derived_ker_d == 0


def test_five_term_warns_when_B_is_not_a_degree_2_quotient():
    L = exterior_algebra(4, 3, 6)
    top = exterior_element(4, [(1, [0, 1, 2, 3])])
    B = quotient_module(algebra_as_module(L), submodule_from_generators(algebra_as_module(L),
                                                                       [(4, top)]))
    with pytest.warns(H14NonzeroWarning):
        dims = five_term_dims(B, algebra_as_module(L))
    assert dims.h14B == 1


def test_five_term_dims_rejects_inconsistent_numbers():
    with pytest.raises(ValueError):
        FiveTermDims(h12N=1, h24B=0, h02N=0, derived_ker_d=0)


def test_theorem_b_full_degree_two():
    R2 = np.eye(comb(4, 2), dtype=np.int64)
    rep = theorem_b_check(4, 3, R2, 6)
    assert rep.verdict == HOLDS and rep.cross_check is True and rep.route == "Both"


def test_theorem_b_blumer_is_not_quadratic():
    rep = theorem_b_check(4, 2, BLUMER, 6)
    assert rep.verdict == NOT_QUADRATIC and rep.quadratic_witness == (1, 2)


@pytest.mark.parametrize("p", [2, 3])
def test_theorem_b_demushkin(p):
    R2 = demushkin_R2(4, p)
    assert R2.shape[0] == 5
    rep = theorem_b_check(4, p, R2, 6)
    assert rep.verdict == HOLDS and rep.cross_check
    I, _ = ideal_in_exterior(4, p, R2, 6)
    assert koszul_check(exterior_algebra(4, p, 6), ideal_twist(I), 4, 4).ok


def test_theorem_b_routes_agree_on_a_failure():
    both = theorem_b_check(5, 2, FAILING_R2, 6)
    assert both.verdict == FAILS and both.cross_check is True
    assert both.failures[0] == (2, 5, 6) and both.dual_failures[0] == (2, 5, 6)
    assert theorem_b_check(5, 2, FAILING_R2, 6, route="direct").failures == both.failures
    dual = theorem_b_check(5, 2, FAILING_R2, 6, route="dual")
    assert dual.route == "DualViaJ" and dual.failures == both.dual_failures
    with pytest.raises(ValueError):
        theorem_b_check(5, 2, FAILING_R2, 6, route="sideways")


@pytest.mark.parametrize("p", [2, 3])
def test_J_quotient_realizes_the_dual_of_I2(p):
    n, D = 4, 6
    L = exterior_algebra(n, p, D)
    checked = 0
    for idx in range(30):
        R2 = random_relations(n, p, 1 + idx % 4, 31, idx)
        I, _ = ideal_in_exterior(n, p, R2, D, L)
        I2 = ideal_twist(I)
        if not is_quadratic_module(L, I2, D - 2):
            continue
        S, Q, W = dual_quotient_module(n, p, I.embedding[2], D)
        qI = quadratic_part_module(I2)
        dual = realize_module(quadratic_dual_module(qI), D - 2, realize_algebra(
            quadratic_dual_module(qI).over, D - 2))
        assert [Q.dim(k + 2) for k in range(D - 1)] == list(dual.dims)
        assert W.dim == comb(n, 2) - I.dim(2)
        checked += 1
    assert checked >= 5


def test_dual_mono_identity_has_zero_kernel():
    L = exterior_algebra(3, 3, 5)
    M = trim(shift(truncation_module(3, 3, 5, 2, L), 2))
    f = [np.eye(M.dim(k), dtype=np.int64) for k in range(2)]
    rep = dual_mono_check(L, M, M, f, 3)
    assert rep.surjective and rep.consistent
    assert rep.kernel_dims == [0, 0, 0, 0]


@pytest.mark.parametrize("p", [2, 3])
def test_dual_mono_demushkin_ideal(p):
    D = 6
    L = exterior_algebra(4, p, D)
    I, _ = ideal_in_exterior(4, p, demushkin_R2(4, p), D, L)
    L2 = truncation_module(4, p, D, 2, L)
    f = inclusion_maps(ideal_twist(I), trim(shift(L2, 2)), 2)
    rep = dual_mono_check(L, ideal_twist(I), trim(shift(L2, 2)), f, 4)
    assert rep.surjective and rep.kernel_generated_in_degree_0
    assert rep.kernel_dims[0] == 1 == comb(4, 2) - I.dim(2) == rep.coker_f0
    assert rep.consistent


def test_dual_mono_rejects_non_injective_maps():
    L = exterior_algebra(2, 3, 3)
    F = algebra_as_module(L)
    with pytest.raises(InputNotMonomorphism):
        dual_mono_check(L, F, residue_module(L), [np.zeros((1, 1), dtype=np.int64)], 2)
