"""
Hunting for a counterexample to the 2^m bound
=============================================

Hill climbing over Cholesky factors of the two Cartesian parts, then a
small scan over all (n, k) cells.
"""

from adfischer import SearchConfig, conjecture_scan, maximize_ratio

# %%
# n = 2, k = 1 from random starts only: the best ratio approaches 2,
# limited by the interior floor on the Cholesky pivots.
for floor in (1e-4, 1e-6, 1e-8):
    res = maximize_ratio(SearchConfig(n=2, k=1, restarts=5, steps_per_restart=2000,
                                      pd_floor=floor, seed=11))
    print(f"pd_floor={floor:.0e}  best rho={res.best_rho:.10f}  margin to 2={res.conjecture_margin:.2e}")

# %%
# A small scan. Cells above 2^m would be re-verified in high precision and
# written out as witness files.
template = SearchConfig(n=2, k=1, restarts=3, steps_per_restart=800, seed=1)
for cell in conjecture_scan(4, template, witness_dir="witnesses"):
    r = cell.result
    print(f"n={cell.n} k={cell.k} best={r.best_rho:.8f} 2^m={r.bound_set.conjecture:g} "
          f"a={r.bound_set.lin_a:.4f} flagged={cell.flagged}")
