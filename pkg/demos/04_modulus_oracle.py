# # Is eta really a modulus?  Asking a sampler
#
# The sampler looks for pairs in the unit ball of l^p_m at distance at least
# eps whose midpoint is as long as possible.  It never beats eta, and the
# explicit pair (s, t), (s, -t) meets eta exactly.

from lpforge.convexity import eta, extremal_pair, search_modulus

for p in (2, 3, 4):
    print(f"p = {p}")
    for eps in (0.3, 1.0, 1.7):
        r = search_modulus(p, 3, eps, samples=50_000, seed=0)
        print(f"  eps={eps}: eta={r.eta:.6f}  sampled={r.sampled:.6f}  family={r.family:.6f}")

u, v = extremal_pair(1.0, 2)
print("extremal pair for p=2, eps=1:", u, v)

# The same search can be split across processes; shards carry their own
# seeds, so the answer does not change.

a = search_modulus(4, 2, 0.9, samples=100_000, seed=3, jobs=1)
b = search_modulus(4, 2, 0.9, samples=100_000, seed=3, jobs=4)
print("jobs=1:", a.value, " jobs=4:", b.value, " eta:", eta(0.9, 4))
