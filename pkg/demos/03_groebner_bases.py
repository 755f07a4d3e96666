"""The rewriting system xy -> min(xy) and where it stops being confluent.

For the not-2-full punctures the rules form a Groebner basis; for the
classical pinched Veronese V(3,3) minus (1,1,1) one cubic resists.
"""
from koszul_lab import build_quadratic_basis, make_gamma, verify_groebner

for n, d, a in [(2, 4, (1, 3)), (3, 4, (0, 1, 3)), (2, 5, (1, 4)), (3, 3, None), (3, 3, (1, 1, 1))]:
    rep = verify_groebner(make_gamma(n, d, a))
    print(f"({n},{d},{a}): {len(rep.rules)} rules, {rep.cubics_checked} cubics, "
          f"Groebner={rep.is_groebner}")

print("\nRules for V(2,4) minus (1,3):")
for r in build_quadratic_basis(make_gamma(2, 4, (1, 3))):
    print("  ", r)

rep = verify_groebner(make_gamma(3, 3, (1, 1, 1)))
for c in rep.counterexamples:
    print("\nIrreducible cubic", c.cubic)
    print("  every pair in it is minimal, yet its minimum is", c.minimal)
