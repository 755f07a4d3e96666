"""Which punctures keep Gamma + Gamma equal to V(n, 2d)?

For the 2x2 and 3x3 Veronese lattices we list every puncture and the
degree-2d points lost when it is removed.
"""
from koszul_lab import enumerate_points, is_two_full, make_gamma

for n, d in [(2, 4), (3, 3)]:
    print(f"V({n},{d}) has {len(enumerate_points(n, d))} points")
    for a in enumerate_points(n, d):
        cfg = make_gamma(n, d, a)
        full, missing = is_two_full(cfg)
        tag = "2-full" if full else f"misses {missing}"
        print(f"  a={a}  {cfg.classification.value:22s} {tag}")
    print()

print("Up to permutation only the corner (0,..,0,d) and its neighbour")
print("(0,..,0,1,d-1) break 2-fullness.  The neighbour loses exactly one point.")
