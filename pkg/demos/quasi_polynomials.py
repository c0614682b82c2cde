# Fitting the counts as quasi-polynomials, then stripping the boundary off.
from lattice_mgn.pipeline import pipeline_run
from lattice_mgn.recursion import levels_upto

store = pipeline_run(3)
print(levels_upto(3))

# one polynomial per parity coset; k counts odd arguments, placed first
nbar = store.nbar[(1, 2)]
for k in (0, 2):
    print(k, nbar.cosets[k].format("b", 2))

# constant terms are orbifold Euler characteristics of the compactified space
for key in sorted(store.nbar):
    print(key, store.nbar[key].constant_term())

# the open counts, after inverting the sum over boundary strata
print(store.n[(1, 1)].cosets[0].format("b", 2))      # b^2/48 - 1/12
print(store.n[(0, 4)].cosets[0].format("b", 2))

# evaluating at zero arguments gives the open Euler characteristic
print(store.n[(1, 2)]((0, 0)), store.n[(0, 5)]((0,) * 5))

# JSON form, rationals as strings
print(store.nbar[(0, 4)].coset_json(2))
