"""Randomised search for ideals that satisfy the weak criterion but are not Koszul.

Every sample is addressed by ``(seed, index)``: the generator for index i is a
Philox stream keyed by ``SeedSequence([seed, i])``, so any record can be
recomputed alone without replaying the ones before it.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb

import numpy as np

from . import fplinalg as fl
from .criteria import HOLDS, KoszulReport, TheoremBReport, koszul_check, theorem_b_check
from .monomial import exterior_algebra, exterior_basis
from .quadratic import ideal_in_exterior, ideal_twist


def sample_generator(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))


def random_relations(n: int, p: int, r: int, seed: int, index: int) -> np.ndarray:
    """Canonical basis of a uniformly random r-dimensional subspace of Lambda^2(F_p^n).

    Rejection sampling of full-rank r x C(n,2) matrices; every subspace has the
    same number of spanning matrices, so the row space is uniform.
    """
    m = comb(n, 2)
    if not 0 <= r <= m:
        raise ValueError(f"r must lie in [0, {m}]")
    rng = sample_generator(seed, index)
    while True:
        a = rng.integers(0, p, size=(r, m))
        if fl.rank(a, p) == r:
            return fl.Subspace.span(a, p, m).basis


@dataclass
class SearchRecord:
    index: int
    n: int
    p: int
    D: int
    R2: np.ndarray
    theorem_b: TheoremBReport
    koszul: KoszulReport
    timestamp: float | None = None

    @property
    def b_but_not_koszul(self) -> bool:
        return self.theorem_b.verdict == HOLDS and not self.koszul.ok

    def generators(self):
        """R2 rows as lists of exterior terms, the CLI input format."""
        basis = exterior_basis(self.n, 2)
        return [{"terms": [{"c": int(c), "m": list(basis[k])} for k, c in enumerate(row) if c]}
                for row in self.R2]

    def to_dict(self):
        kd = self.koszul.to_dict()
        kd.pop("table")
        d = {"index": self.index, "n": self.n, "p": self.p, "truncation": self.D,
             "R2": self.R2.tolist(), "generators": self.generators(),
             "theorem_b": self.theorem_b.to_dict(), "koszul": kd,
             "b_but_not_koszul": self.b_but_not_koszul}
        if self.timestamp is not None:
            d["timestamp"] = self.timestamp
        return d


def examine(n: int, p: int, R2, D: int, index: int = 0, method: str = "auto",
            timestamp: bool = False) -> SearchRecord:
    """Theorem B hypotheses, then Koszulity of I(2) up to internal degree D."""
    R2 = np.asarray(R2, dtype=fl.DTYPE).reshape(-1, comb(n, 2))
    tb = theorem_b_check(n, p, R2, D, route="direct", method=method)
    L = exterior_algebra(n, p, D)
    I, _ = ideal_in_exterior(n, p, R2, D, L)
    twisted = ideal_twist(I)
    top = D - 2
    kr = koszul_check(L, twisted, top, top, method=method)
    return SearchRecord(index, n, p, D, R2, tb, kr, time.time() if timestamp else None)


def search(n: int, p: int, r: int, D: int, seed: int, count: int, jobs: int = 1,
           start: int = 0, timestamp: bool = False):
    """Yield SearchRecords for indices start..start+count-1, in index order."""
    def one(i):
        return examine(n, p, random_relations(n, p, r, seed, i), D, i, timestamp=timestamp)

    indices = range(start, start + count)
    if jobs <= 1:
        for i in indices:
            yield one(i)
        return
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(one, indices)


def summarize(records) -> dict:
    records = list(records)
    counts = {}
    for rec in records:
        counts[rec.theorem_b.verdict] = counts.get(rec.theorem_b.verdict, 0) + 1
    return {"samples": len(records),
            "theorem_b_verdicts": dict(sorted(counts.items())),
            "koszul_up_to_D": sum(rec.koszul.ok for rec in records),
            "b_but_not_koszul": sum(rec.b_but_not_koszul for rec in records),
            "hits": [rec.index for rec in records if rec.b_but_not_koszul]}
