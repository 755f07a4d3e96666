"""V(2,4) minus (2,2) is not Koszul, and two complexes show it.

With z=(0,4), y=(1,3), x=(3,1) the divisor complex at (3,9) splits into
{z, x} and {y}: the binomial y^3 - x z^2 is a minimal cubic relation.  The
order complex at (3,9) is disconnected too, which puts a Betti number of
the residue field off the linear strand.
"""
from koszul_lab import divisor_complex, koszul_scan, make_gamma, order_complex, reduced_homology_ranks

cfg = make_gamma(2, 4, (2, 2))
D = divisor_complex(cfg, (3, 9))
print("divisor complex facets:", D.facet_labels())
print("  reduced homology:", reduced_homology_ranks(D).nonzero)

G = order_complex(cfg, (3, 9))
print("order complex facets:  ", G.facet_labels())
print("  reduced homology:", reduced_homology_ranks(G).nonzero)

rep = koszul_scan(cfg, 3)
print("\nscan up to degree 3: off-strand entries", rep.violations, "regularity so far", rep.regularity)
