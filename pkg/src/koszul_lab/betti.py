"""Divisor and order complexes, and the Betti numbers read off from them.

For ``lam`` in the semigroup ``(Gamma)``:

* the squarefree divisor complex ``D_lam`` has the subsets ``F`` of
  ``Gamma`` with ``lam - sum(F)`` in ``(Gamma)`` as faces, and
  ``beta_{i,lam}(I(Gamma)) = rank H~_i(D_lam)`` (``i = 0`` counts minimal
  generators of the toric ideal);
* the order complex ``Gamma_lam`` is the complex of open chains
  ``0 < mu_1 < ... < mu_j < lam`` in the semigroup order, and
  ``beta_{i,lam}(K) = rank H~_{i-2}(Gamma_lam)`` over ``R = K[Gamma]``.
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from functools import partial
from typing import Iterator, Optional, Sequence

from ._parallel import pmap
from .lattice import (
    Classification,
    GammaConfig,
    Point,
    as_point,
    enumerate_points,
    semigroup_level,
    semigroup_member,
    sub,
)
from .simplicial import QQ, Field, HomologyProfile, SimplicialComplex, reduced_homology_ranks

log = logging.getLogger(__name__)

DEFAULT_MAX_DEGREE = 4
WARN_MAX_DEGREE = 5


class NotInSemigroupError(ValueError):
    pass


def _require_member(cfg: GammaConfig, lam: Point, full: bool = False) -> None:
    if full:
        ok = len(lam) == cfg.n and min(lam) >= 0 and cfg.level(lam) is not None
    else:
        ok = semigroup_member(cfg, lam)
    if not ok:
        where = f"the semigroup of V({cfg.n},{cfg.d})" if full else "(Gamma)"
        raise NotInSemigroupError(f"{lam} is not in {where}")


def _member(cfg: GammaConfig, lam: Point, full: bool) -> bool:
    if full:
        return min(lam) >= 0 and cfg.level(lam) is not None
    return semigroup_member(cfg, lam)


def divisor_complex(cfg: GammaConfig, lam: Sequence[int]) -> SimplicialComplex:
    lam = as_point(lam)
    _require_member(cfg, lam)
    gens = cfg.generators
    facets: list[frozenset[Point]] = []

    def grow(start: int, face: list[Point], rest: Point) -> None:
        extended = False
        for j in range(start, len(gens)):
            g = gens[j]
            if all(x <= y for x, y in zip(g, rest)):
                nxt = sub(rest, g)
                if semigroup_member(cfg, nxt):
                    extended = True
                    grow(j + 1, face + [g], nxt)
        if not extended:
            facets.append(frozenset(face))

    grow(0, [], lam)
    vertices = sorted({v for f in facets for v in f})
    return SimplicialComplex.from_facets(facets, vertices)


def iter_maximal_chains(
    cfg: GammaConfig, lam: Point, use_full_veronese: bool = False
) -> Iterator[tuple[Point, ...]]:
    """Link sequences ``0 -> lam`` with every link in the pool, lex order."""
    pool = cfg.veronese if use_full_veronese else cfg.generators

    def walk(rest: Point) -> Iterator[tuple[Point, ...]]:
        if not any(rest):
            yield ()
            return
        for g in pool:
            if all(x <= y for x, y in zip(g, rest)):
                nxt = sub(rest, g)
                if _member(cfg, nxt, use_full_veronese):
                    for tail in walk(nxt):
                        yield (g,) + tail

    yield from walk(lam)


def _interior_nodes(links: Sequence[Point]) -> tuple[Point, ...]:
    nodes = []
    acc = tuple(0 for _ in links[0])
    for x in links[:-1]:
        acc = tuple(p + q for p, q in zip(acc, x))
        nodes.append(acc)
    return tuple(nodes)


def order_complex(
    cfg: GammaConfig, lam: Sequence[int], use_full_veronese: bool = False
) -> SimplicialComplex:
    """Open chains ``0 < mu_1 < ... < lam``; ``Delta_lam`` when ``use_full_veronese``."""
    lam = as_point(lam)
    _require_member(cfg, lam, use_full_veronese)
    if not any(lam):
        return SimplicialComplex.void()
    facets = {frozenset(_interior_nodes(seq)) for seq in iter_maximal_chains(cfg, lam, use_full_veronese)}
    vertices = sorted({v for f in facets for v in f})
    return SimplicialComplex.from_facets(facets, vertices)


def ideal_homology(cfg: GammaConfig, lam: Sequence[int], field: Field = QQ, **kw) -> HomologyProfile:
    return reduced_homology_ranks(divisor_complex(cfg, lam), field, **kw)


def betti_ideal(cfg: GammaConfig, lam: Sequence[int], i: int, field: Field = QQ) -> int:
    """``beta_{i,lam}`` of the toric ideal: ``rank H~_i(D_lam)``."""
    return ideal_homology(cfg, lam, field)[i]


def betti_field(cfg: GammaConfig, lam: Sequence[int], i: int, field: Field = QQ) -> int:
    """``beta_{i,lam}`` of the residue field: ``rank H~_{i-2}(Gamma_lam)``."""
    if i < 0:
        raise ValueError("homological index must be >= 0")
    lam = as_point(lam)
    if not any(lam):
        return 1 if i == 0 else 0
    return reduced_homology_ranks(order_complex(cfg, lam), field)[i - 2]


# -- the scan -----------------------------------------------------------------

@dataclass
class BettiReport:
    """Nonzero ``beta_{i,lam}(K)`` found by a scan, plus bookkeeping."""

    cfg: GammaConfig
    max_degree: int
    field: Field
    entries: dict[tuple[int, Point], int] = field(default_factory=dict)
    facet_counts: dict[Point, int] = field(default_factory=dict)
    impure: list[Point] = field(default_factory=list)
    discrepancies: list[dict] = field(default_factory=list)

    def degree(self, lam: Point) -> int:
        return sum(lam) // self.cfg.d

    @property
    def violations(self) -> list[tuple[int, Point]]:
        """Entries off the linear strand (``|lam| > i``)."""
        return sorted(
            ((i, lam) for (i, lam) in self.entries if self.degree(lam) > i),
            key=lambda e: (self.degree(e[1]), e[1], e[0]),
        )

    @property
    def regularity(self) -> Optional[int]:
        """``max(|lam| - i)`` over recorded entries."""
        if not self.entries:
            return None
        return max(self.degree(lam) - i for (i, lam) in self.entries)

    @property
    def within_regularity_bound(self) -> Optional[bool]:
        """Compare with ``reg_R K <= 5``, which covers the 2-full good case."""
        if self.cfg.classification is not Classification.TWO_FULL_GOOD:
            return None
        reg = self.regularity
        return reg is None or reg <= 5

    def sorted_entries(self) -> list[tuple[int, Point, int]]:
        return sorted(
            ((i, lam, r) for (i, lam), r in self.entries.items()),
            key=lambda e: (self.degree(e[1]), e[1], e[0]),
        )


def _scan_one(cfg: GammaConfig, field: Field, cross_fields: tuple, lam: Point) -> tuple:
    K = order_complex(cfg, lam)
    profile = reduced_homology_ranks(K, field, check=True, cross_fields=cross_fields)
    return lam, len(K.facets), K.is_pure and K.dim == sum(lam) // cfg.d - 2, profile


def check_degree_bound(max_degree: int, allow_high_degree: bool = False) -> None:
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    if max_degree > WARN_MAX_DEGREE and not allow_high_degree:
        raise ValueError(
            f"max_degree {max_degree} > {WARN_MAX_DEGREE} needs an explicit override"
        )
    if max_degree >= WARN_MAX_DEGREE:
        warnings.warn(f"max_degree {max_degree}: expect a combinatorial blow-up", stacklevel=3)


def koszul_scan(
    cfg: GammaConfig,
    max_degree: int = DEFAULT_MAX_DEGREE,
    field: Field = QQ,
    cross_fields: Sequence[Field] = (),
    jobs: Optional[int] = 1,
    allow_high_degree: bool = False,
) -> BettiReport:
    """All nonzero ``beta_{i,lam}(K)`` with ``1 <= |lam| <= max_degree``."""
    check_degree_bound(max_degree, allow_high_degree)
    report = BettiReport(cfg, max_degree, field)
    work = partial(_scan_one, cfg, field, tuple(cross_fields))
    for k in range(1, max_degree + 1):
        points = semigroup_level(cfg, k)
        log.info("degree %d: %d multidegrees", k, len(points))
        for lam, n_facets, pure, profile in pmap(work, points, jobs):
            report.facet_counts[lam] = n_facets
            if not pure:
                report.impure.append(lam)
            for f in profile.discrepancies:
                report.discrepancies.append({"lambda": lam, "detail": f})
            for j, r in profile.nonzero.items():
                report.entries[(j + 2, lam)] = r
    return report


def veronese_nonlinear(cfg: GammaConfig, max_degree: int, field: Field = QQ) -> list[tuple[Point, dict]]:
    """Multidegrees where ``Delta_lam`` has homology below its top dimension."""
    bad = []
    for k in range(1, max_degree + 1):
        for lam in enumerate_points(cfg.n, k * cfg.d):
            K = order_complex(cfg, lam, use_full_veronese=True)
            prof = reduced_homology_ranks(K, field)
            low = {j: r for j, r in prof.nonzero.items() if j != k - 2}
            if low:
                bad.append((lam, low))
    return bad


def quadraticity_scan(cfg: GammaConfig, degrees: Sequence[int] = (3,), field: Field = QQ) -> list[tuple[Point, int]]:
    """``lam`` with ``|lam|`` in ``degrees`` whose divisor complex is disconnected."""
    bad = []
    for k in degrees:
        for lam in semigroup_level(cfg, k):
            h0 = ideal_homology(cfg, lam, field)[0]
            if h0:
                bad.append((lam, h0))
    return bad
