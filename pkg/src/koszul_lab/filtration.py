"""Offending chains, the complexes ``F_{<p} cap p`` and their facet structure.

``Delta_lam`` (links in ``V(n, d)``) is ``Gamma_lam`` plus the maximal
chains ``p^1 < ... < p^k`` that use the puncture.  For an offending ``p``
with interior nodes labelled ``1..N`` (``N = |lam| - 1``), ``F_{<p} cap p``
is the complex of node sets ``p cap q`` over all maximal chains ``q < p``.
It is computed here straight from that definition; the structural claims
about its facets are checked against the computed complex, never assumed.
"""
from __future__ import annotations

import itertools
import logging
import warnings
from dataclasses import dataclass, field
from functools import lru_cache, partial
from typing import Optional, Sequence

import numpy as np

from ._parallel import pmap
from .betti import iter_maximal_chains, order_complex
from .chains import Chain, chain_compare, is_minimal, min_below, minimal_chain
from .lattice import Classification, GammaConfig, Point, as_point, semigroup_level
from .simplicial import QQ, Field, HomologyProfile, SimplicialComplex, reduced_homology_ranks

log = logging.getLogger(__name__)

ONE = "one"
PAIR = "pair"


def within_hypotheses(cfg: GammaConfig) -> bool:
    """2-full good case with a sorted puncture whose last two coordinates are nonzero."""
    a = cfg.puncture
    return (
        cfg.classification is Classification.TWO_FULL_GOOD
        and cfg.puncture_was_sorted
        and a[-2] > 0
        and a[-1] > 0
    )


def _warn_outside(cfg: GammaConfig) -> None:
    if cfg.classification is not Classification.TWO_FULL_GOOD:
        warnings.warn(f"{cfg.describe()} is {cfg.classification.value}, not 2-full good", stacklevel=3)


def delta_chains(cfg: GammaConfig, lam: Sequence[int]) -> list[Chain]:
    """Maximal chains of ``Delta_lam``, ascending in chain order."""
    lam = as_point(lam)
    if cfg.level(lam) is None or min(lam) < 0:
        raise ValueError(f"{lam} is not in the semigroup of V({cfg.n},{cfg.d})")
    zero = (0,) * cfg.n
    chains = [Chain(zero, seq, cfg.puncture) for seq in iter_maximal_chains(cfg, lam, True)]
    chains.sort(key=Chain.key)
    return chains


def offending_chains(cfg: GammaConfig, lam: Sequence[int]) -> list[Chain]:
    _warn_outside(cfg)
    return [c for c in delta_chains(cfg, lam) if c.a_degree >= 1]


# -- F_{<p} cap p ---------------------------------------------------------------

def _node_matrix(chains: Sequence[Chain]) -> np.ndarray:
    ids: dict[Point, int] = {}
    rows = [[ids.setdefault(v, len(ids)) for v in c.interior] for c in chains]
    width = len(chains[0].interior) if chains else 0
    return np.array(rows, dtype=np.int64).reshape(len(chains), width)


def _maximal_masks(masks: Sequence[int]) -> list[int]:
    masks = sorted(set(masks), key=lambda m: -bin(m).count("1"))
    kept: list[int] = []
    for m in masks:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return kept


def _mask_to_nodes(mask: int, n: int) -> frozenset[int]:
    return frozenset(j + 1 for j in range(n) if mask >> j & 1)


def _intersection_masks(nodes: np.ndarray, r: int) -> list[int]:
    """Maximal ``p cap q`` bitmasks over chains ``q`` ranked below ``p = chains[r]``."""
    n = nodes.shape[1]
    if r == 0:
        return []
    if n == 0:
        return [0]
    weights = 1 << np.arange(n, dtype=np.int64)
    eq = nodes[:r] == nodes[r]
    return _maximal_masks(np.unique(eq.astype(np.int64) @ weights).tolist())


def _complex_from_masks(masks: Sequence[int], n: int) -> SimplicialComplex:
    labels = tuple(range(1, n + 1))
    if not masks:
        return SimplicialComplex(labels, frozenset())
    facets = frozenset(frozenset(j for j in range(n) if m >> j & 1) for m in masks)
    return SimplicialComplex(labels, facets)


def lower_intersection(cfg: GammaConfig, lam: Sequence[int], p: Chain) -> SimplicialComplex:
    """``F_{<p} cap p`` on the node labels ``1..N`` of ``p``."""
    chains = delta_chains(cfg, lam)
    try:
        r = next(i for i, c in enumerate(chains) if c.links == p.links)
    except StopIteration:
        raise ValueError(f"{p} is not a maximal chain of Delta_{as_point(lam)}") from None
    if p.a_degree < 1:
        raise ValueError(f"{p} has a-degree 0, it is not offending")
    nodes = _node_matrix(chains)
    return _complex_from_masks(_intersection_masks(nodes, r), nodes.shape[1])


def lower_intersection_by_segments(cfg: GammaConfig, p: Chain) -> SimplicialComplex:
    """Same complex by a second route: ``S`` is a face iff the least chain
    through the nodes of ``S`` (segments minimised independently) is below ``p``."""
    closed = p.nodes
    n = len(closed) - 2
    faces = []
    for k in range(n + 1):
        for S in itertools.combinations(range(1, n + 1), k):
            stops = [0, *S, n + 1]
            links: list[Point] = []
            for u, v in zip(stops, stops[1:]):
                links.extend(minimal_chain(cfg, closed[u], closed[v]).links)
            if chain_compare(Chain(closed[0], tuple(links), cfg.puncture), p) < 0:
                faces.append(frozenset(j - 1 for j in S))
    labels = tuple(range(1, n + 1))
    if not faces:
        return SimplicialComplex(labels, frozenset())
    return SimplicialComplex.from_facets(
        [[labels[j] for j in f] for f in faces], labels
    )


# -- facet patterns -----------------------------------------------------------

@dataclass(frozen=True)
class FacetPattern:
    """Facets ``[n] minus {i}`` (ONE) and ``[n] minus {i, i+1}`` (PAIR)."""

    n: int
    facets: frozenset  # of (kind, i)

    def __post_init__(self) -> None:
        for kind, i in self.facets:
            top = self.n if kind == ONE else self.n - 1
            if not 1 <= i <= top:
                raise ValueError(f"{kind}({i}) out of range for n={self.n}")
        for kind, i in self.facets:
            if kind == PAIR and ((ONE, i) in self.facets or (ONE, i + 1) in self.facets):
                raise ValueError(f"pair({i}) is contained in another facet")

    def complement(self, kind: str, i: int) -> frozenset[int]:
        return frozenset([i]) if kind == ONE else frozenset([i, i + 1])

    @property
    def spacing_ok(self) -> bool:
        pairs = {i for kind, i in self.facets if kind == PAIR}
        return not any(i + 1 in pairs or i + 2 in pairs for i in pairs)

    @property
    def has_one(self) -> bool:
        return any(kind == ONE for kind, _ in self.facets)

    def to_complex(self) -> SimplicialComplex:
        full = frozenset(range(1, self.n + 1))
        facets = [full - self.complement(k, i) for k, i in self.facets]
        return SimplicialComplex.from_facets(facets, tuple(range(1, self.n + 1)))

    def describe(self) -> list[str]:
        return sorted(f"{k}({i})" for k, i in self.facets)


def _is_consecutive(block: frozenset[int]) -> bool:
    return bool(block) and max(block) - min(block) + 1 == len(block)


# -- the per-chain checks -----------------------------------------------------

@dataclass
class ChainCheck:
    chain: Chain
    facets: list[list[int]]
    dim_ok: bool
    consecutive_ok: bool
    size_ok: bool
    spacing_ok: bool
    subchain_ok: bool
    homology_ok: bool

    @property
    def ok(self) -> bool:
        return all(
            (self.dim_ok, self.consecutive_ok, self.size_ok, self.spacing_ok,
             self.subchain_ok, self.homology_ok)
        )

    def as_dict(self) -> dict:
        return {
            "chain": [list(x) for x in self.chain.links],
            "a_degree": self.chain.a_degree,
            "facets": self.facets,
            "dim_ok": self.dim_ok,
            "consecutive_ok": self.consecutive_ok,
            "size_ok": self.size_ok,
            "spacing_ok": self.spacing_ok,
            "subchain_ok": self.subchain_ok,
            "homology_ok": self.homology_ok,
        }


@dataclass
class FacetLemmaReport:
    cfg: GammaConfig
    lam: Point
    checks: list[ChainCheck]
    within_hypotheses: bool
    discrepancies: list[str] = field(default_factory=list)

    @property
    def violations(self) -> list[ChainCheck]:
        return [c for c in self.checks if not c.ok]


@lru_cache(maxsize=None)
def _pattern_homology(
    n: int, facets: frozenset, cross: tuple
) -> HomologyProfile:
    K = SimplicialComplex(tuple(range(1, n + 1)), facets)
    return reduced_homology_ranks(K, QQ, check=True, cross_fields=cross)


def _subchains_ok(cfg: GammaConfig, p: Chain, block: frozenset[int]) -> bool:
    # The closed subchain from node min(L)-1 to node max(L)+1.
    lo, hi = min(block) - 1, max(block) + 1
    nodes = p.nodes
    links = p.links[lo:hi]
    if len(links) < 3:
        return True
    seg = Chain(nodes[lo], links, cfg.puncture)
    if seg.a_degree or is_minimal(cfg, seg):
        return False
    if list(links) != sorted(links):
        return False
    for s, t in itertools.combinations(range(len(links) + 1), 2):
        if t - s >= 2 and (s, t) != (0, len(links)):
            if not is_minimal(cfg, Chain(nodes[lo + s], links[s:t], cfg.puncture)):
                return False
    return True


def _check_chain(
    cfg: GammaConfig, p: Chain, masks: list[int], n: int, cross: tuple
) -> ChainCheck:
    full = frozenset(range(1, n + 1))
    facet_sets = [_mask_to_nodes(m, n) for m in masks]
    blocks = [full - f for f in facet_sets]
    pairs = {min(b) for b in blocks if len(b) == 2}
    profile = _pattern_homology(
        n, frozenset(frozenset(j - 1 for j in f) for f in facet_sets), cross
    )
    # Vanishing of H~_j for j <= |lam| - 7 = n - 6.
    homology_ok = not any(r for j, r in profile.nonzero.items() if j <= n - 6)
    return ChainCheck(
        chain=p,
        facets=sorted(sorted(f) for f in facet_sets),
        dim_ok=bool(facet_sets) and max(len(f) for f in facet_sets) == n - 1,
        consecutive_ok=all(_is_consecutive(b) for b in blocks),
        size_ok=all(len(b) <= 2 for b in blocks),
        spacing_ok=not any(i + 1 in pairs or i + 2 in pairs for i in pairs),
        subchain_ok=all(
            _subchains_ok(cfg, p, b) for b in blocks if _is_consecutive(b) and len(b) >= 2
        ),
        homology_ok=homology_ok and not profile.discrepancies,
    )


def verify_facet_lemmas(
    cfg: GammaConfig, lam: Sequence[int], cross_fields: Sequence[Field] = ()
) -> FacetLemmaReport:
    """Check every offending chain's ``F_{<p} cap p``: dimension one below
    ``Delta_lam``, facets omitting one consecutive block of at most two
    nodes, no two pair-facets one or two steps apart, and the minimality
    pattern of the omitted segment."""
    lam = as_point(lam)
    _warn_outside(cfg)
    chains = delta_chains(cfg, lam)
    nodes = _node_matrix(chains)
    n = nodes.shape[1]
    cross = tuple(cross_fields)
    checks = []
    for r, p in enumerate(chains):
        if p.a_degree >= 1:
            checks.append(_check_chain(cfg, p, _intersection_masks(nodes, r), n, cross))
    discrepancies = []
    for c in checks:
        facets = frozenset(frozenset(j - 1 for j in f) for f in c.facets)
        discrepancies.extend(_pattern_homology(n, facets, cross).discrepancies)
    return FacetLemmaReport(cfg, lam, checks, within_hypotheses(cfg), discrepancies)


def facet_lemma_scan(
    cfg: GammaConfig,
    min_degree: int = 3,
    max_degree: int = 4,
    cross_fields: Sequence[Field] = (),
    jobs: Optional[int] = 1,
) -> list[FacetLemmaReport]:
    points = [lam for k in range(min_degree, max_degree + 1) for lam in semigroup_level(cfg, k)]
    work = partial(_facet_worker, cfg, tuple(cross_fields))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return pmap(work, points, jobs)


def _facet_worker(cfg: GammaConfig, cross: tuple, lam: Point) -> FacetLemmaReport:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return verify_facet_lemmas(cfg, lam, cross)


# -- abstract homology lemmas -------------------------------------------------

@dataclass
class AbstractLemmaReport:
    n: int
    weak_form: bool
    patterns_checked: int
    violations: list[dict]


def iter_patterns(n: int, weak_form: bool):
    """Nonempty admissible patterns.

    Weak form: pair facets only.  Strong form: at least one ONE facet, no
    facet inside another.  Both require the pair spacing condition.
    """
    pair_opts = [(PAIR, i) for i in range(1, n)]
    one_opts = [] if weak_form else [(ONE, i) for i in range(1, n + 1)]
    for ones_bits in range(1 << len(one_opts)):
        ones = {one_opts[j] for j in range(len(one_opts)) if ones_bits >> j & 1}
        if not weak_form and not ones:
            continue
        blocked = {i for _, i in ones}
        allowed = [(k, i) for k, i in pair_opts if i not in blocked and i + 1 not in blocked]
        for pair_bits in range(1 << len(allowed)):
            pairs = {allowed[j] for j in range(len(allowed)) if pair_bits >> j & 1}
            if weak_form and not pairs:
                continue
            pattern = FacetPattern(n, frozenset(ones | pairs))
            if pattern.spacing_ok:
                yield pattern


def verify_abstract_homology_lemma(
    n: int, weak_form: bool, cross_fields: Sequence[Field] = ()
) -> AbstractLemmaReport:
    """Weak form: the complex is acyclic.  Strong form: no reduced homology
    in dimensions ``<= n - 5``."""
    if not 3 <= n <= 8:
        raise ValueError(f"n must be in [3, 8], got {n}")
    checked = 0
    bad = []
    for pattern in iter_patterns(n, weak_form):
        checked += 1
        profile = reduced_homology_ranks(pattern.to_complex(), QQ, cross_fields=cross_fields)
        limit = n - 1 if weak_form else n - 5
        offending = {j: r for j, r in profile.nonzero.items() if j <= limit}
        if offending or profile.discrepancies:
            bad.append({"pattern": pattern.describe(), "homology": profile.as_dict(),
                        "discrepancies": profile.discrepancies})
    return AbstractLemmaReport(n, weak_form, checked, bad)


# -- Mayer-Vietoris stages ----------------------------------------------------

@dataclass
class Stage:
    index: int
    chains_below: int
    homology: HomologyProfile
    below_top: dict[int, int]
    claim_ok: bool

    def as_dict(self) -> dict:
        return {
            "stage": self.index,
            "chains_below": self.chains_below,
            "homology": self.homology.as_dict(),
            "below_top": {str(j): r for j, r in sorted(self.below_top.items())},
            "claim_ok": self.claim_ok,
        }


@dataclass
class MayerVietorisReport:
    cfg: GammaConfig
    lam: Point
    stages: list[Stage]
    gamma_matches: bool
    within_hypotheses: bool

    @property
    def violations(self) -> list[dict]:
        out = [{"stage": s.index, "homology": s.homology.as_dict()} for s in self.stages if not s.claim_ok]
        if not self.gamma_matches:
            out.append({"stage": 1, "detail": "F_{<p^1} homology differs from Gamma_lambda"})
        return out


def mayer_vietoris_scan(
    cfg: GammaConfig, lam: Sequence[int], field: Field = QQ, cross_fields: Sequence[Field] = ()
) -> MayerVietorisReport:
    """Homology of ``F_{<p^i}`` for ``i = k+1`` (all of ``Delta_lam``) down to 1.

    The stage claim is vanishing in dimensions ``<= |lam| - 8``; stage 1
    must coincide with ``Gamma_lam``.
    """
    lam = as_point(lam)
    _warn_outside(cfg)
    degree = cfg.level(lam)
    chains = delta_chains(cfg, lam)
    offending = [r for r, c in enumerate(chains) if c.a_degree >= 1]
    cutoffs = offending + [len(chains)]
    stages = []
    for i in range(len(cutoffs), 0, -1):
        cut = cutoffs[i - 1]
        facets = {frozenset(c.interior) for c in chains[:cut]}
        if facets:
            K = SimplicialComplex.from_facets(facets, sorted(set().union(*facets)))
        else:
            K = SimplicialComplex.void()
        prof = reduced_homology_ranks(K, field, cross_fields=cross_fields)
        below = {j: r for j, r in prof.nonzero.items() if j < degree - 2}
        claim = not any(j <= degree - 8 for j in below) and not prof.discrepancies
        stages.append(Stage(i, cut, prof, below, claim))
    gamma = reduced_homology_ranks(order_complex(cfg, lam), field)
    matches = stages[-1].homology.nonzero == gamma.nonzero
    return MayerVietorisReport(cfg, lam, stages, matches, within_hypotheses(cfg))


# -- first links of minimal chains --------------------------------------------

def verify_first_link_minimal(cfg: GammaConfig, degrees: Sequence[int] = (3, 4)) -> list[dict]:
    """For ``m`` in ``(Gamma)`` with ``|m| >= 3`` the minimal chain starts at
    the box minimum of ``m``."""
    bad = []
    for k in degrees:
        for m in semigroup_level(cfg, k):
            c = minimal_chain(cfg, (0,) * cfg.n, m)
            want = min_below(cfg, m)
            if c.a_degree == 0 and c.links[0] != want:
                bad.append({"m": m, "first_link": c.links[0], "box_minimum": want})
    return bad
