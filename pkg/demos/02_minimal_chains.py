"""Minimal chains: the leading terms of the quadratic Groebner basis.

A chain is a sequence of links in V(n, d); chains are ordered by how often
they use the puncture, then lexicographically.  The greedy construction
starts from the smallest box element below the target and is compared here
against exhaustive enumeration.
"""
from koszul_lab import make_gamma, min_below, minimal_chain, enumerate_chains

cfg = make_gamma(3, 3, (1, 1, 1))
target = (3, 1, 5)
print(f"Gamma = V(3,3) minus {cfg.puncture}, target {target}")
print("  smallest generator below target:", min_below(cfg, target))
greedy = minimal_chain(cfg, (0, 0, 0), target)
print("  greedy minimal chain:  ", greedy)
chains = enumerate_chains(cfg, (0, 0, 0), target)
print(f"  {len(chains)} chains in total; the least is {chains[0]}")
print("  the ascending arrangement (0,0,3)(1,0,2)(2,1,0) ranks",
      [c.links for c in chains].index(((0, 0, 3), (1, 0, 2), (2, 1, 0))) + 1)

cfg = make_gamma(2, 2, (1, 1))
c = minimal_chain(cfg, (0, 0), (1, 5))
print(f"\nWhen every chain must use the puncture: V(2,2) minus (1,1), target (1,5) -> {c}, a-degree {c.a_degree}")
