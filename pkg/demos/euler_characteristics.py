# Euler characteristics three ways, and the generating series.
from lattice_mgn.dualgraph import chi_compactified_via_strata
from lattice_mgn.euler import chi_open, f0_series, f0_series_by_inversion, f1_series, pde_residual
from lattice_mgn.pipeline import pipeline_run

store = pipeline_run(5)
table = store.chi_table()

print(chi_open(1, 1), chi_open(2, 1), chi_open(0, 6))

for g, n in [(0, 4), (0, 5), (0, 6), (1, 1), (1, 2), (1, 3), (2, 1)]:
    fitted = store.nbar[(g, n)].constant_term()
    print((g, n), fitted, table.chi_closed(g, n), chi_compactified_via_strata(g, n, chi_open))

# the recursion runs on past the fitted range once the seeds are known
print([str(table.chi_closed(2, n)) for n in range(1, 5)])

# genus-zero series from its ODE and as an inverse function
print([str(c) for c in f0_series(7).coefficients()])
print(f0_series(7) == f0_series_by_inversion(7))

print([str(c) for c in f1_series(5).coefficients()])

res = pde_residual(6, table.max_genus, table)
print(res.is_zero())
