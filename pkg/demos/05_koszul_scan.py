"""Betti numbers of the residue field over K[V(3,3) minus (1,1,1)].

Every nonzero beta_{i,lam} found up to degree 4 sits on the diagonal
i = |lam|, and the three coefficient fields agree.
"""
from collections import Counter

from koszul_lab import GF, koszul_scan, make_gamma

cfg = make_gamma(3, 3, (1, 1, 1))
rep = koszul_scan(cfg, 4, cross_fields=(GF(2), GF(32003)))
totals = Counter()
for (i, lam), r in rep.entries.items():
    totals[(i, rep.degree(lam))] += r
for (i, k), r in sorted(totals.items()):
    print(f"  beta_{i} in degree {k}: {r}")
print("off-strand entries:", rep.violations)
print("impure order complexes:", rep.impure)
print("field discrepancies:", rep.discrepancies)
print("regularity:", rep.regularity)
