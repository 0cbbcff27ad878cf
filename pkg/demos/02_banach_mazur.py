# # How far is a span from l^p?
#
# The isomorphism e_l -> z_l is diagonal with entries ||z_l||, so its
# Banach-Mazur bound is the ratio of the largest to the smallest norm.
# Normalising the basis brings the bound to 1.

import numpy as np

from lpforge import MeasureSpace, SimpleFunction, bm_distance_bound, build_approximation
from lpforge.approx import basis_map_matrix, operator_norm_bounds

space = MeasureSpace.uniform(6)
x = SimpleFunction(space, ["1/2", "-1/3", "1/5", "1/9", 0, "-1/4"])
w = build_approximation([x], 4, 3)

raw = basis_map_matrix(w.certificate, rescaled=False)
print("diagonal of the raw basis map:", np.round(np.diag(raw), 4))
print("raw bound:", bm_distance_bound(raw.tolist(), 3).value)
print("normalised bound:", bm_distance_bound(basis_map_matrix(w.certificate).tolist(), 3).value)

# For a dense matrix and p outside {1, 2, inf} the operator norm is only
# bracketed: Riesz-Thorin from above, dual power iteration from below.

A = np.array([[2.0, 1.0, 0.0], [0.5, 1.0, -1.0], [0.0, 0.25, 3.0]])
for p in (1, 1.5, 2, 3, np.inf):
    lo, up, how = operator_norm_bounds(A, p)
    print(f"p={p}: {lo:.6f} <= ||A|| <= {up:.6f}  [{how}]")

b = bm_distance_bound(A.tolist(), 3)
print("||A|| * ||A^-1|| <=", round(b.value, 6), " sampled lower", round(b.lower, 6))
