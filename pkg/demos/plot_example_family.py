"""
How close can the Fischer ratio get to 2?
=========================================

A 2x2 accretive-dissipative family whose ratio climbs towards 2 as its
parameter shrinks. No plotting library is needed; the table says it all.
"""

import numpy as np

from adfischer import example_family, example_ratio, fischer_ratio, partition
from adfischer.ad_matrix import cartesian_decompose
from adfischer.linalg_core import hermitian_eigenvalues

# %%
# One member of the family, split into its Hermitian parts.
A = example_family(0.1)
pair = cartesian_decompose(A)
print(A)
print("eig B:", hermitian_eigenvalues(pair.B))
print("eig C:", hermitian_eigenvalues(pair.C))

# %%
# Both parts are positive definite, but their smallest eigenvalue is
# eps(1+...) and shrinks with eps. That degeneracy is what drives the ratio up.
for eps in np.logspace(0, -6, 7):
    rho = fischer_ratio(partition(example_family(eps), 1))
    print(f"eps={eps:8.0e}  rho={rho:.12f}  closed form={example_ratio(eps):.12f}  gap to 2={2 - rho:.2e}")
