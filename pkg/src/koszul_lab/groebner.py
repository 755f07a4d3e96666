"""The quadratic rewriting system ``xy -> min(xy)`` and its confluence check.

Monomials in ``S = K[x_alpha : alpha in Gamma]`` are multisets of
generators, stored as lex-ascending tuples.  Within one degree the grevlex
order (with ``x_alpha > x_beta`` iff ``alpha > beta``) compares two such
tuples position by position from the smallest end, which is plain tuple
comparison.  Only cubic monomials need checking: the system is quadratic,
so Buchberger's criterion reduces to every cubic reducing to its minimum.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from .chains import minimal_chain
from .lattice import GammaConfig, Point, add, as_point

Monomial = Tuple[Point, ...]


def monomial(points: Sequence[Sequence[int]]) -> Monomial:
    return tuple(sorted(as_point(p) for p in points))


def monomial_compare(m1: Sequence[Point], m2: Sequence[Point]) -> int:
    if len(m1) != len(m2):
        raise ValueError(f"monomials of different degrees: {len(m1)} vs {len(m2)}")
    a, b = monomial(m1), monomial(m2)
    return (a > b) - (a < b)


def multidegree(m: Sequence[Point]) -> Point:
    total = tuple(0 for _ in m[0])
    for p in m:
        total = add(total, p)
    return total


@dataclass(frozen=True)
class RewriteRule:
    lhs: Monomial
    rhs: Monomial

    def __str__(self) -> str:
        return f"{_fmt(self.lhs)} -> {_fmt(self.rhs)}"


def _fmt(m: Monomial) -> str:
    return "*".join("x" + "".join(map(str, p)) for p in m)


class PunctureInMinimumError(RuntimeError):
    """A quadratic minimum passed through the puncture."""


def build_quadratic_basis(cfg: GammaConfig) -> list[RewriteRule]:
    rules = []
    for x, y in itertools.combinations_with_replacement(cfg.generators, 2):
        lhs = (x, y)
        chain = minimal_chain(cfg, (0,) * cfg.n, add(x, y))
        if chain.a_degree:
            raise PunctureInMinimumError(f"min({_fmt(lhs)}) = {chain} has positive a-degree")
        rhs = monomial(chain.links)
        if rhs != lhs:
            rules.append(RewriteRule(lhs, rhs))
    rules.sort(key=lambda r: r.lhs)
    return rules


def _apply_at(m: Monomial, i: int, j: int, rhs: Monomial) -> Monomial:
    rest = [p for k, p in enumerate(m) if k not in (i, j)]
    return monomial(rest + list(rhs))


def normal_form(
    m: Sequence[Point],
    rules: Sequence[RewriteRule],
    rng: Optional[random.Random] = None,
) -> tuple[Monomial, list[tuple[Monomial, RewriteRule]]]:
    """Rewrite pairs inside ``m`` until every pair is a minimal chain.

    By default the lex-first reducible pair is rewritten at each step; with
    ``rng`` a random reducible pair is chosen instead.  Each step strictly
    lowers the monomial in grevlex, so this terminates.
    """
    table = {r.lhs: r for r in rules}
    current = monomial(m)
    trace: list[tuple[Monomial, RewriteRule]] = []
    while True:
        hits = [
            (i, j, table[(current[i], current[j])])
            for i, j in itertools.combinations(range(len(current)), 2)
            if (current[i], current[j]) in table
        ]
        if not hits:
            return current, trace
        i, j, rule = rng.choice(hits) if rng is not None else hits[0]
        trace.append((current, rule))
        current = _apply_at(current, i, j, rule.rhs)


@dataclass
class Counterexample:
    cubic: Monomial
    normal_form: Monomial
    minimal: Monomial
    trace: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "cubic": [list(p) for p in self.cubic],
            "normal_form": [list(p) for p in self.normal_form],
            "minimal": [list(p) for p in self.minimal],
            "trace": [
                {"from": [list(p) for p in before], "rule": str(rule)}
                for before, rule in self.trace
            ],
        }


@dataclass
class GroebnerReport:
    cfg: GammaConfig
    rules: list[RewriteRule]
    counterexamples: list[Counterexample]
    cubics_checked: int

    @property
    def is_groebner(self) -> bool:
        return not self.counterexamples


def verify_groebner(cfg: GammaConfig) -> GroebnerReport:
    rules = build_quadratic_basis(cfg)
    bad = []
    count = 0
    for cubic in itertools.combinations_with_replacement(cfg.generators, 3):
        count += 1
        nf, trace = normal_form(cubic, rules)
        chain = minimal_chain(cfg, (0,) * cfg.n, multidegree(cubic))
        true_min = monomial(chain.links)
        if nf != true_min:
            bad.append(Counterexample(tuple(cubic), nf, true_min, trace))
    return GroebnerReport(cfg, rules, bad, count)
