"""The complexes F_{<p} cap p for chains p through the puncture.

Each is computed from its definition, as the union of p cap q over all
maximal chains q < p, and then inspected.  Every facet misses a block of at
most two consecutive nodes, and missing pairs are never one or two steps
apart.  Moving the puncture to a corner breaks this.
"""
import warnings
from collections import Counter

from koszul_lab import lower_intersection, make_gamma, offending_chains, verify_facet_lemmas
from koszul_lab.filtration import facet_lemma_scan

cfg = make_gamma(3, 3, (1, 1, 1))
lam = (4, 4, 4)
shapes = Counter()
for p in offending_chains(cfg, lam):
    K = lower_intersection(cfg, lam, p)
    missing = tuple(sorted(len(set(range(1, 4)) - set(f)) for f in K.facet_labels()))
    shapes[missing] += 1
print(f"lam={lam}: {sum(shapes.values())} offending chains; omitted-block sizes per facet:")
for k, v in sorted(shapes.items()):
    print(f"  {k}: {v} chains")

rep = verify_facet_lemmas(cfg, lam)
print("violations:", len(rep.violations))

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    bad = facet_lemma_scan(make_gamma(3, 3, (0, 0, 3)), 3, 4)
print("\nwith a=(0,0,3) instead:", sum(len(r.violations) for r in bad), "chains fail the checks")
