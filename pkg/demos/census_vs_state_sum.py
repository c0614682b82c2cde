# Counting ribbon graphs by brute force and comparing with the inverted polynomials.
from lattice_mgn.dualgraph import enumerate_dual_graphs
from lattice_mgn.fatgraph import census, census_n_pointed, isomorphism_classes
from lattice_mgn.pipeline import pipeline_run

store = pipeline_run(2)

# genus one, one boundary of length 4: a single graph with 4 automorphisms
res = census(1, 1, (4,))
print(res.count, res.structures, res.half_edges)
print(store.n[(1, 1)]((4,)))

for fg, aut in isomorphism_classes(1, 1, (4,)):
    print(fg.tau0, fg.tau1, aut)

# pointed graphs handle zero perimeters
print(census_n_pointed(0, 4, (2, 2, 0, 0)), store.n[(0, 4)]((2, 2, 0, 0)))

# a quick sweep at (0,4)
for b in [(1, 1, 1, 1), (2, 2, 2, 2), (3, 1, 2, 2), (4, 2, 0, 0)]:
    count = census(0, 4, b).count if 0 not in b else census_n_pointed(0, 4, b)
    print(b, count, store.n[(0, 4)](b))

# the strata that turn N into Nbar
for G in enumerate_dual_graphs(1, 2):
    print(G.genera, G.tails, G.edges, G.aut_order)
