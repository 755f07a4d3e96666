"""Lattice points, the generator set, semigroup membership and 2-fullness.

Points are plain tuples of Python ints.  Lex order is tuple order: the
first differing coordinate decides, so ``(0, ..., 0, d)`` is the smallest
element of ``V(n, d)`` and ``(d, 0, ..., 0)`` the largest.
"""
from __future__ import annotations

import enum
import itertools
import threading
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Optional, Sequence, Tuple

Point = Tuple[int, ...]


class Classification(enum.Enum):
    """Which branch of the Koszul theorem a puncture falls into."""

    FULL_VERONESE = "full_veronese"
    VERONESE_POINT = "veronese_point"
    NOT_TWO_FULL = "not_two_full"
    TWO_FULL_GOOD = "two_full_good"
    NON_KOSZUL_EXCEPTION = "non_koszul_exception"


def as_point(coords: Sequence[int]) -> Point:
    return tuple(int(c) for c in coords)


def enumerate_points(n: int, d: int) -> list[Point]:
    """All compositions of ``d`` into ``n`` nonnegative parts, lex ascending."""
    if n < 1:
        raise ValueError(f"ambient dimension must be >= 1, got {n}")
    if d < 0:
        raise ValueError(f"degree must be >= 0, got {d}")
    return list(_compositions(n, d))


def _compositions(n: int, d: int) -> Iterator[Point]:
    if n == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in _compositions(n - 1, d - first):
            yield (first,) + rest


def dominated(a: Sequence[int], b: Sequence[int]) -> bool:
    """``a << b``: componentwise ``a_i <= b_i``."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return all(x <= y for x, y in zip(a, b))


def add(a: Point, b: Point) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Point, b: Point) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def classify(n: int, d: int, puncture: Optional[Point]) -> Classification:
    if puncture is None:
        return Classification.FULL_VERONESE
    s = tuple(sorted(puncture))
    zeros = (0,) * (n - 2)
    if s == (0,) * (n - 1) + (d,):
        return Classification.VERONESE_POINT
    if s == zeros + (1, d - 1) and d != 3:
        return Classification.NOT_TWO_FULL
    if d >= 3 and s == tuple(sorted(zeros + (2, d - 2))):
        return Classification.NON_KOSZUL_EXCEPTION
    return Classification.TWO_FULL_GOOD


class MembershipTable:
    """Memo of ``lam in (Gamma)`` answers for one configuration.

    Insertions are guarded by a lock so that concurrent readers always see
    a consistent map; the answers themselves are deterministic.
    """

    def __init__(self) -> None:
        self._known: dict[Point, bool] = {}
        self._lock = threading.Lock()

    def get(self, lam: Point) -> Optional[bool]:
        return self._known.get(lam)

    def put(self, lam: Point, value: bool) -> None:
        with self._lock:
            self._known.setdefault(lam, value)

    def __len__(self) -> int:
        return len(self._known)

    def __contains__(self, lam: Point) -> bool:
        return lam in self._known

    def __getstate__(self) -> dict:
        return {"known": dict(self._known)}

    def __setstate__(self, state: dict) -> None:
        self._known = state["known"]
        self._lock = threading.Lock()


@dataclass(frozen=True)
class GammaConfig:
    n: int
    d: int
    puncture: Optional[Point]
    generators: Tuple[Point, ...]
    classification: Classification
    membership: MembershipTable = field(
        default_factory=MembershipTable, compare=False, repr=False
    )

    @property
    def veronese(self) -> Tuple[Point, ...]:
        """All of ``V(n, d)``, lex ascending."""
        return _veronese(self.n, self.d)

    @property
    def sorted_puncture(self) -> Optional[Point]:
        return None if self.puncture is None else tuple(sorted(self.puncture))

    @property
    def puncture_was_sorted(self) -> bool:
        return self.puncture is None or self.puncture == self.sorted_puncture

    def level(self, lam: Sequence[int]) -> Optional[int]:
        """``|lam|`` if the coordinate sum is a multiple of ``d``, else None."""
        total = sum(lam)
        if total % self.d:
            return None
        return total // self.d

    def describe(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "a": None if self.puncture is None else list(self.puncture),
        }


_VERONESE_CACHE: dict[tuple[int, int], Tuple[Point, ...]] = {}


def _veronese(n: int, d: int) -> Tuple[Point, ...]:
    key = (n, d)
    if key not in _VERONESE_CACHE:
        _VERONESE_CACHE[key] = tuple(enumerate_points(n, d))
    return _VERONESE_CACHE[key]


def make_gamma(n: int, d: int, a: Optional[Sequence[int]] = None) -> GammaConfig:
    """Build ``Gamma = V(n, d) \\ {a}``; ``a=None`` keeps the full Veronese set."""
    if n < 2 or d < 2:
        raise ValueError(f"need n >= 2 and d >= 2, got n={n}, d={d}")
    puncture = None
    if a is not None:
        puncture = as_point(a)
        if len(puncture) != n or min(puncture) < 0 or sum(puncture) != d:
            raise ValueError(f"puncture {puncture} is not in V({n},{d})")
    points = _veronese(n, d)
    gens = tuple(p for p in points if p != puncture)
    assert len(gens) == comb(n + d - 1, n - 1) - (puncture is not None)
    return GammaConfig(n, d, puncture, gens, classify(n, d, puncture))


def semigroup_member(
    cfg: GammaConfig, lam: Sequence[int], table: Optional[MembershipTable] = None
) -> bool:
    """Is ``lam`` a sum of ``|lam|`` generators?"""
    lam = as_point(lam)
    if len(lam) != cfg.n or min(lam) < 0:
        return False
    if cfg.level(lam) is None:
        return False
    if cfg.puncture is None:
        # The full Veronese semigroup is saturated at every level.
        return True
    return _member(cfg, lam, cfg.membership if table is None else table)


def _member(cfg: GammaConfig, lam: Point, table: MembershipTable) -> bool:
    known = table.get(lam)
    if known is not None:
        return known
    if not any(lam):
        result = True
    else:
        result = False
        for g in cfg.generators:
            if all(x <= y for x, y in zip(g, lam)):
                if _member(cfg, sub(lam, g), table):
                    result = True
                    break
    table.put(lam, result)
    return result


def semigroup_level(cfg: GammaConfig, k: int) -> list[Point]:
    """Members of ``(Gamma)`` at level ``k``, lex ascending."""
    if k == 0:
        return [(0,) * cfg.n]
    level: set[Point] = {(0,) * cfg.n}
    for _ in range(k):
        level = {add(p, g) for p in level for g in cfg.generators}
    return sorted(level)


def is_two_full(cfg: GammaConfig) -> tuple[bool, list[Point]]:
    """Check ``Gamma + Gamma == V(n, 2d)``; returns the missing points too."""
    sums = {add(x, y) for x, y in itertools.combinations_with_replacement(cfg.generators, 2)}
    missing = [p for p in enumerate_points(cfg.n, 2 * cfg.d) if p not in sums]
    return not missing, missing
