# # Uniform convexity, one inequality at a time
#
# For p >= 2 the midpoint of two unit-ball points at distance eps has norm
# at most (1 - (eps/2)^p)^(1/p) + c.  The certificate below runs the whole
# argument on concrete functions and keeps every intermediate inequality.

from fractions import Fraction

from lpforge import MeasureSpace, SimpleFunction, certify_uniform_convexity, delta_for, eta, lp_norm, sub

space = MeasureSpace.uniform(4)
x1 = SimpleFunction(space, ["1/2", "1/2", "1/4", 0])
x2 = SimpleFunction(space, ["-1/4", "1/2", 0, "1/2"])
p = 3
eps = float(lp_norm(sub(x1, x2), p))
c = 2.0 ** -6

print(f"eps = ||x1 - x2|| = {eps:.6f}, eta(eps) = {eta(eps, p):.6f}")
print(f"delta = {delta_for(eps, c, p):.6g}")

cert = certify_uniform_convexity(x1, x2, eps, c, p)
print("N =", cert.N, " cells =", cert.witness.certificate.dimension)
for s in cert.chain:
    lhs, rhs = float(s.lhs), float(s.rhs)
    print(f"{s.name:15s} {lhs:.8f} {s.relation:8s} {rhs:.8f}  {'ok' if s.ok else 'FAILED'}")
print("all steps hold:", cert.ok)

# Smaller c costs a finer approximation but tightens the final bound.

for k in (2, 5, 8, 10):
    cc = 2.0 ** -k
    cert = certify_uniform_convexity(x1, x2, eps, cc, p)
    print(f"c = 2^-{k:<2d} N = {cert.N:5d}  final bound {float(cert.step('final').rhs):.6f}")
