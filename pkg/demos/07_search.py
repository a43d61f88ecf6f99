# Random search for ideals that pass the weak criterion but are not Koszul
#
# Sample i of a run with seed s depends only on (s, i), so any record can be
# recomputed alone.  A hit would be an interesting counterexample; none is expected.

# %%
from koszulkit.search import examine, search, summarize

n, p, D, seed = 4, 2, 7, 1
for r in (1, 2, 3):
    records = list(search(n, p, r, D, seed, count=60, jobs=2))
    print(f"r={r}:", summarize(records))

# %% Re-deriving one record from its relations.
rec = records[17]
again = examine(n, p, rec.R2, D, index=rec.index)
print(rec.index, rec.theorem_b.verdict, rec.koszul.verdict, again.to_dict() == rec.to_dict())
print(rec.generators())
