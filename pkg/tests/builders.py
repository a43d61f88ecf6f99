"""Random graded modules for the property suites (seeded numpy generators)."""

import numpy as np

from koszulkit.graded import (algebra_as_module, direct_sum, quotient_module, shift,
                              submodule_from_generators, trim)
from koszulkit.monomial import exterior_algebra, symmetric_algebra


def free_module(A, gen_degrees):
    """Free module with generators in the given degrees, cut to a common top."""
    parts = [shift(algebra_as_module(A), -g) for g in gen_degrees]
    return direct_sum(*parts) if len(parts) > 1 else parts[0]


def random_quotient(rng, A, gen_degrees, n_rel, rel_span=2):
    """F / <random relations>, relations placed a little above the generators."""
    F = free_module(A, gen_degrees)
    lo = min(gen_degrees)
    rels = []
    for _ in range(n_rel):
        d = int(rng.integers(lo + 1, min(F.top, lo + rel_span) + 1))
        if F.dim(d) == 0:
            continue
        rels.append((d, rng.integers(0, A.p, F.dim(d))))
    S = submodule_from_generators(F, rels)
    return quotient_module(F, S)


def random_exterior_case(rng, primes=(2, 3, 5)):
    p = int(rng.choice(primes))
    n = int(rng.integers(1, 4))
    D = int(rng.integers(3, 6))
    A = exterior_algebra(n, p, D)
    degs = sorted(int(x) for x in rng.integers(0, 2, int(rng.integers(1, 3))))
    M = random_quotient(rng, A, degs, int(rng.integers(0, 3)))
    return A, M


def random_symmetric_case(rng, primes=(2, 3, 5), max_n=3):
    p = int(rng.choice(primes))
    n = int(rng.integers(1, max_n + 1))
    D = int(rng.integers(3, 5))
    A = symmetric_algebra(n, p, D)
    degs = sorted(int(x) for x in rng.integers(0, 2, int(rng.integers(1, 3))))
    M = random_quotient(rng, A, degs, int(rng.integers(0, 3)))
    return A, M


def nonzero_trimmed(M):
    return trim(M) if M.lowest_nonzero is not None else None


def rng_for(case, salt):
    return np.random.default_rng([salt, case])
