"""Koszulness experiments for pinched Veronese rings ``K[V(n,d) \\ {a}]``."""
from .lattice import (
    Classification,
    GammaConfig,
    classify,
    enumerate_points,
    is_two_full,
    make_gamma,
    semigroup_level,
    semigroup_member,
)
from .chains import Chain, chain_compare, enumerate_chains, min_below, minimal_chain
from .groebner import build_quadratic_basis, normal_form, verify_groebner
from .simplicial import GF, QQ, SimplicialComplex, parse_field, reduced_homology_ranks
from .betti import betti_field, betti_ideal, divisor_complex, koszul_scan, order_complex
from .filtration import (
    FacetPattern,
    lower_intersection,
    mayer_vietoris_scan,
    offending_chains,
    verify_abstract_homology_lemma,
    verify_facet_lemmas,
)
from .report import emit_report

__version__ = "0.1.0"

__all__ = [
    "Classification", "GammaConfig", "classify", "enumerate_points", "is_two_full",
    "make_gamma", "semigroup_level", "semigroup_member", "Chain", "chain_compare",
    "enumerate_chains", "min_below", "minimal_chain", "build_quadratic_basis",
    "normal_form", "verify_groebner", "GF", "QQ", "SimplicialComplex", "parse_field",
    "reduced_homology_ranks", "betti_field", "betti_ideal", "divisor_complex",
    "koszul_scan", "order_complex", "FacetPattern", "lower_intersection",
    "mayer_vietoris_scan", "offending_chains", "verify_abstract_homology_lemma",
    "verify_facet_lemmas", "emit_report",
]
