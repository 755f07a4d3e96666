"""Peeling the offending chains off Delta_lam one at a time.

F_{<p^i} is the union of the maximal chains below the i-th offending
chain.  At the top it is the full Veronese complex Delta_lam; at the
bottom it is Gamma_lam.  Homology is computed stage by stage.
"""
from koszul_lab import make_gamma, mayer_vietoris_scan

cfg = make_gamma(3, 3, (1, 1, 1))
for lam in [(2, 2, 2), (3, 3, 3), (2, 3, 4)]:
    rep = mayer_vietoris_scan(cfg, lam)
    print(f"lam={lam}: {len(rep.stages)} stages")
    for s in rep.stages[:: max(1, len(rep.stages) // 5)]:
        print(f"  stage {s.index:3d}: {s.chains_below:3d} chains, homology {s.homology.nonzero}")
    print(f"  bottom stage equals Gamma_lam: {rep.gamma_matches}; below-top homology anywhere:",
          any(s.below_top for s in rep.stages))
