"""Chains with links in V(n, d) and the (a-degree, lex) order on them.

A chain from ``start`` to ``end`` is a sequence of links, each a point of
coordinate sum ``d``.  Chains are ordered first by how many links equal the
puncture ``a`` and then lexicographically on the link sequence.  Comparing
link sequences or node sequences gives the same answer for chains with
common endpoints, since nodes are prefix sums of links.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Iterator, Optional, Sequence, Tuple

from .lattice import GammaConfig, Point, add, as_point, dominated, semigroup_member, sub

DEFAULT_MAX_LINKS = 7


class EmptyChainSetError(ValueError):
    """No chain exists between the requested endpoints."""


class ChainBoundError(ValueError):
    """Brute-force enumeration refused: too many links."""


@total_ordering
@dataclass(frozen=True)
class Chain:
    start: Point
    links: Tuple[Point, ...]
    puncture: Optional[Point] = None

    @classmethod
    def from_links(
        cls,
        links: Iterable[Sequence[int]],
        start: Optional[Sequence[int]] = None,
        puncture: Optional[Sequence[int]] = None,
    ) -> "Chain":
        links = tuple(as_point(x) for x in links)
        if start is None:
            start = (0,) * len(links[0])
        return cls(as_point(start), links, None if puncture is None else as_point(puncture))

    @property
    def end(self) -> Point:
        p = self.start
        for x in self.links:
            p = add(p, x)
        return p

    @property
    def nodes(self) -> Tuple[Point, ...]:
        """Closed-chain nodes: ``start``, the partial sums, and ``end``."""
        out = [self.start]
        for x in self.links:
            out.append(add(out[-1], x))
        return tuple(out)

    @property
    def interior(self) -> Tuple[Point, ...]:
        """The open chain: nodes without the two endpoints."""
        return self.nodes[1:-1]

    @property
    def a_degree(self) -> int:
        if self.puncture is None:
            return 0
        return sum(1 for x in self.links if x == self.puncture)

    def key(self) -> tuple:
        return (self.a_degree, self.links)

    def __len__(self) -> int:
        return len(self.links)

    def __lt__(self, other: "Chain") -> bool:
        return chain_compare(self, other) < 0

    def __str__(self) -> str:
        return "".join(str(x).replace(" ", "") for x in self.links)


def chain_compare(c1: Chain, c2: Chain) -> int:
    """-1, 0 or 1; only defined for chains with common endpoints."""
    if c1.start != c2.start or c1.end != c2.end:
        raise ValueError(
            f"chains have different endpoints: {c1.start}->{c1.end} vs {c2.start}->{c2.end}"
        )
    k1, k2 = c1.key(), c2.key()
    return (k1 > k2) - (k1 < k2)


def _chain_for(cfg: GammaConfig, start: Point, links: Sequence[Point]) -> Chain:
    return Chain(start, tuple(links), cfg.puncture)


def _link_count(cfg: GammaConfig, start: Sequence[int], end: Sequence[int]) -> tuple[Point, int]:
    diff = sub(as_point(end), as_point(start))
    if len(diff) != cfg.n or min(diff) < 0:
        raise EmptyChainSetError(f"{end} - {start} has negative coordinates")
    k = cfg.level(diff)
    if k is None or k == 0:
        raise EmptyChainSetError(f"{end} - {start} does not have positive degree divisible by d")
    return diff, k


# -- smallest elements of boxes ---------------------------------------------

def _box_smallest(m: Point, d: int) -> Optional[tuple[Point, int]]:
    """Lex-smallest ``z`` in ``V(n, d)`` with ``z << m`` and the pivot index."""
    tail = 0
    for i in range(len(m) - 1, -1, -1):
        if tail + m[i] >= d:
            s = [0] * len(m)
            s[i] = d - tail
            s[i + 1:] = m[i + 1:]
            return tuple(s), i
        tail += m[i]
    return None


def _box_second_smallest(m: Point, s: Point, i: int) -> Optional[Point]:
    # Either raise the pivot by one and take the unit from the first nonzero
    # coordinate after it, or put a single unit at the last nonzero
    # coordinate before the pivot and take it from the pivot.
    tail = sum(s[i + 1:])
    x = list(s)
    if m[i] > s[i] and tail >= 1:
        j = next(j for j in range(i + 1, len(m)) if m[j] > 0)
        x[i] += 1
        x[j] -= 1
        return tuple(x)
    before = [k for k in range(i) if m[k] > 0]
    if before:
        x[before[-1]] = 1
        x[i] -= 1
        return tuple(x)
    return None


def min_below(
    cfg: GammaConfig,
    m: Sequence[int],
    use_full_veronese: bool = False,
    verify: bool = False,
) -> Optional[Point]:
    """Lex-smallest element of ``Gamma`` (or ``V(n, d)``) dominated by ``m``.

    Closed form: right-fill ``m`` to total ``d`` to get the box minimum
    ``s``; if ``s`` is the puncture, step to the lex-successor of ``s``
    inside the box.  ``verify=True`` compares against a linear scan.
    """
    m = as_point(m)
    found = _box_smallest(m, cfg.d)
    if found is None:
        result = None
    else:
        s, i = found
        if use_full_veronese or s != cfg.puncture:
            result = s
        else:
            result = _box_second_smallest(m, s, i)
    if verify:
        oracle = min_below_bruteforce(cfg, m, use_full_veronese)
        if oracle != result:
            raise AssertionError(f"min_below{m}: closed form {result} != brute force {oracle}")
    return result


def min_below_bruteforce(
    cfg: GammaConfig, m: Sequence[int], use_full_veronese: bool = False
) -> Optional[Point]:
    pool = cfg.veronese if use_full_veronese else cfg.generators
    return next((g for g in pool if dominated(g, m)), None)


def elements_below(cfg: GammaConfig, m: Sequence[int], use_full_veronese: bool = False) -> list[Point]:
    pool = cfg.veronese if use_full_veronese else cfg.generators
    return [g for g in pool if dominated(g, m)]


# -- minimal chains ---------------------------------------------------------

def min_a_degree(cfg: GammaConfig, diff: Sequence[int]) -> int:
    """Least a-degree of a chain with links summing to ``diff``.

    Any chain of a-degree t splits off t copies of the puncture, leaving a
    ``(Gamma)``-member, so peeling the puncture one copy at a time is exact.
    """
    diff = as_point(diff)
    t = 0
    while not semigroup_member(cfg, diff):
        if cfg.puncture is None or not dominated(cfg.puncture, diff):
            raise EmptyChainSetError(f"{diff} is not a sum of points of V({cfg.n},{cfg.d})")
        diff = sub(diff, cfg.puncture)
        t += 1
    return t


def minimal_chain(
    cfg: GammaConfig,
    start: Sequence[int],
    end: Sequence[int],
    method: str = "greedy",
    max_links: int = DEFAULT_MAX_LINKS,
) -> Chain:
    """The least chain from ``start`` to ``end`` with links in ``V(n, d)``.

    ``method="greedy"`` builds it link by link: each link is the smallest
    one that still lets the remainder be finished at the least possible
    a-degree (the first candidate is always the closed-form box minimum).
    ``method="enumerate"`` takes the minimum over all chains.
    """
    start = as_point(start)
    diff, k = _link_count(cfg, start, end)
    if method == "enumerate":
        chains = enumerate_chains(cfg, start, end, links_in_gamma_only=False, max_links=max_links)
        return chains[0]
    if method != "greedy":
        raise ValueError(f"unknown method {method!r}")
    links = []
    rem = diff
    target = min_a_degree(cfg, rem)
    for _ in range(k):
        link = _next_link(cfg, rem, target)
        if link == cfg.puncture:
            target -= 1
        links.append(link)
        rem = sub(rem, link)
    return _chain_for(cfg, start, links)


def _next_link(cfg: GammaConfig, rem: Point, target: int) -> Point:
    level = cfg.level(rem)
    if level == 1:
        return rem
    if target == 0:
        first = min_below(cfg, rem)
        for g in cfg.generators:
            if g < first or not dominated(g, rem):
                continue
            if semigroup_member(cfg, sub(rem, g)):
                return g
    else:
        for g in cfg.veronese:
            if not dominated(g, rem):
                continue
            if (g == cfg.puncture) + min_a_degree(cfg, sub(rem, g)) == target:
                return g
    raise EmptyChainSetError(f"no link continues a chain to {rem}")


def is_minimal(cfg: GammaConfig, c: Chain) -> bool:
    if len(c.links) == 1:
        return True
    best = minimal_chain(cfg, c.start, c.end)
    return chain_compare(c, best) == 0


def ascending_is_minimal(cfg: GammaConfig, links: Sequence[Point]) -> bool:
    """Minimality of the chain ``0 -> sum(links)`` through the sorted links."""
    return is_minimal(cfg, _chain_for(cfg, (0,) * cfg.n, sorted(links)))


# -- enumeration ------------------------------------------------------------

def iter_link_sequences(
    pool: Sequence[Point], diff: Point, k: int
) -> Iterator[Tuple[Point, ...]]:
    """All length-``k`` sequences from ``pool`` summing to ``diff``, lex order."""
    if k == 0:
        if not any(diff):
            yield ()
        return
    if k == 1:
        if diff in pool:
            yield (diff,)
        return
    for g in pool:
        if all(x <= y for x, y in zip(g, diff)):
            rest = sub(diff, g)
            for tail in iter_link_sequences(pool, rest, k - 1):
                yield (g,) + tail


def enumerate_chains(
    cfg: GammaConfig,
    start: Sequence[int],
    end: Sequence[int],
    links_in_gamma_only: bool = False,
    max_links: int = DEFAULT_MAX_LINKS,
) -> list[Chain]:
    """Every chain from ``start`` to ``end``, ascending in chain order."""
    start = as_point(start)
    diff, k = _link_count(cfg, start, end)
    if k > max_links:
        raise ChainBoundError(f"{k} links exceeds the enumeration cap of {max_links}")
    pool = cfg.generators if links_in_gamma_only else cfg.veronese
    chains = [_chain_for(cfg, start, seq) for seq in iter_link_sequences(pool, diff, k)]
    chains.sort(key=Chain.key)
    return chains


# -- checks of the structural facts -----------------------------------------

def verify_min_below_formula(
    cfg: GammaConfig, ms: Iterable[Sequence[int]]
) -> list[dict]:
    """Closed form vs linear scan, for both ``Gamma`` and ``V(n, d)``."""
    bad = []
    for m in ms:
        m = as_point(m)
        for full in (False, True):
            got = min_below(cfg, m, use_full_veronese=full)
            want = min_below_bruteforce(cfg, m, use_full_veronese=full)
            if got != want:
                bad.append({"m": m, "full_veronese": full, "formula": got, "oracle": want})
    return bad


def boxes(n: int, bound: int, max_sum: int) -> Iterator[Point]:
    """All ``m`` with ``0 <= m_i <= bound`` and ``sum(m) <= max_sum``."""
    for m in itertools.product(range(bound + 1), repeat=n):
        if sum(m) <= max_sum:
            yield m


def minimal_pairs(cfg: GammaConfig) -> list[tuple[Point, Point]]:
    """Pairs ``x <= y`` in ``Gamma`` whose ascending chain ``xy`` is minimal."""
    return [
        (x, y)
        for x, y in itertools.combinations_with_replacement(cfg.generators, 2)
        if ascending_is_minimal(cfg, (x, y))
    ]


def verify_two_link_obstruction(cfg: GammaConfig) -> list[dict]:
    """If a minimal a-free chain ``x1 x2`` does not start at the box minimum
    ``y1`` of ``x1 + x2``, then ``x2 = a + y1 - x1`` and ``x1`` is the second
    smallest element of the box."""
    bad = []
    for x1, x2 in minimal_pairs(cfg):
        m = add(x1, x2)
        y1 = min_below(cfg, m)
        if x1 == y1:
            continue
        box = elements_below(cfg, m)
        ok = (
            cfg.puncture is not None
            and x2 == sub(add(cfg.puncture, y1), x1)
            and len(box) >= 2
            and box[1] == x1
        )
        if not ok:
            bad.append({"chain": (x1, x2), "box_minimum": y1})
    return bad


def verify_triple_minimality(cfg: GammaConfig) -> list[dict]:
    """Every ``x <= y <= z`` whose three pairs are minimal is minimal itself."""
    good_pairs = set(minimal_pairs(cfg))
    bad = []
    for x, y, z in itertools.combinations_with_replacement(cfg.generators, 3):
        if (x, y) in good_pairs and (y, z) in good_pairs and (x, z) in good_pairs:
            if not ascending_is_minimal(cfg, (x, y, z)):
                true_min = minimal_chain(cfg, (0,) * cfg.n, add(add(x, y), z))
                bad.append({"cubic": (x, y, z), "minimal": true_min.links})
    return bad
