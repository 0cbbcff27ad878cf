# # Approximating simple functions inside an l^p span
#
# Every finite family of functions in L^p sits close to a subspace that is
# isometric to l^p_D for some small D.  This walk-through builds such a
# subspace for two functions on a five-atom space and checks the result.

from fractions import Fraction

from lpforge import MeasureSpace, SimpleFunction, build_approximation, lp_norm_pow, sub, verify_certificate
from lpforge.approx import format_label, partition_labels

# A measure space is a list of atoms with positive rational weights.

space = MeasureSpace(("a", "b", "c", "d", "e"), (1, Fraction(1, 2), Fraction(1, 2), 2, 1))
x1 = SimpleFunction(space, ["1/3", "-1/5", 0, "1/4", "1/7"])
x2 = SimpleFunction(space, [0, "1/2", "1/2", "-1/8", "1/7"])
p, N = 2, 3

print("||x1||^2 =", lp_norm_pow(x1, p))
print("||x2||^2 =", lp_norm_pow(x2, p))

# Each atom gets one label per function: the grid class of |x_i| relative
# to phi = |x1| + |x2|, with a sign.  Atoms sharing a label vector form a cell.

part = partition_labels([x1, x2], N)
for labels, atoms in part.cells.items():
    print([format_label(l) for l in labels], "->", [space.atoms[j] for j in atoms])

# The approximants are combinations of z_l = phi * 1_{cell}.

w = build_approximation([x1, x2], N, p)
print("dimension", w.certificate.dimension, "bound", w.dim_bound)
for i, (x, y) in enumerate(zip(w.inputs, w.outputs), 1):
    print(f"y{i} =", [str(v) for v in y.values], " error^p =", lp_norm_pow(sub(x, y), p), "<=", w.error_bound_pow)

# The verifier re-checks everything with exact rational arithmetic,
# including the isometry on random coordinate vectors.

verdict = verify_certificate(w, exact=True, exhaustive=True)
for clause in verdict.clauses:
    print(f"{clause.name:10s} {'ok' if clause.ok else 'FAILED'} {clause.detail}")
