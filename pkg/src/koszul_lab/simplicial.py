"""Abstract simplicial complexes and exact reduced homology ranks.

Two degenerate complexes are kept apart: VOID has no faces at all and no
homology, EMPTY has only the empty face and ``H~_{-1} = 1``.  Boundary
matrices include the augmentation ``C_0 -> C_{-1}``, so the ranks computed
here are reduced homology throughout.
"""
from __future__ import annotations

import itertools
import os
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Hashable, Iterable, Mapping, Optional, Sequence

MAX_FACES_ENV = "KOSZUL_LAB_MAX_FACES"

# Per-process tallies of homology runs, for auditing long scans.
CHECK_COUNTS: Counter = Counter()


class ComplexTooLargeError(RuntimeError):
    pass


class SelfCheckError(AssertionError):
    pass


@dataclass(frozen=True)
class Field:
    """Coefficient field: characteristic 0 is the rationals, else GF(p)."""

    characteristic: int = 0

    def __post_init__(self) -> None:
        p = self.characteristic
        if p and not _is_prime(p):
            raise ValueError(f"{p} is not prime")

    def __str__(self) -> str:
        return "q" if self.characteristic == 0 else f"p:{self.characteristic}"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def parse_field(text: str) -> Field:
    """``"q"`` or ``"p:<prime>"``."""
    text = text.strip().lower()
    if text in ("q", "qq", "0"):
        return QQ
    if text.startswith("p:"):
        p = int(text[2:])
        if not 2 <= p <= 2**31:
            raise ValueError(f"prime {p} out of range [2, 2^31]")
        return Field(p)
    raise ValueError(f"unknown field {text!r}; use 'q' or 'p:<prime>'")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _face_cap() -> Optional[int]:
    raw = os.environ.get(MAX_FACES_ENV)
    return int(raw) if raw else None


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """A complex given by its facets over indexed vertex labels.

    ``facets`` holds frozensets of vertex indices; an empty ``facets`` is the
    VOID complex, ``{frozenset()}`` the EMPTY one.
    """

    vertex_labels: tuple
    facets: frozenset

    @classmethod
    def from_facets(
        cls, facets: Iterable[Iterable[Hashable]], labels: Optional[Sequence[Hashable]] = None
    ) -> "SimplicialComplex":
        """Build from facets given as label collections; nested ones are dropped."""
        facets = [frozenset(f) for f in facets]
        if labels is None:
            labels = sorted(set().union(*facets)) if facets else []
        labels = tuple(labels)
        index = {v: i for i, v in enumerate(labels)}
        as_idx = {frozenset(index[v] for v in f) for f in facets}
        return cls(labels, frozenset(_maximal(as_idx)))

    @classmethod
    def void(cls) -> "SimplicialComplex":
        return cls((), frozenset())

    @classmethod
    def empty(cls) -> "SimplicialComplex":
        return cls((), frozenset([frozenset()]))

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dim(self) -> Optional[int]:
        """Dimension, -1 for EMPTY, None for VOID."""
        if self.is_void:
            return None
        return max(len(f) for f in self.facets) - 1

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def facet_labels(self) -> list[tuple]:
        return sorted(tuple(self.vertex_labels[i] for i in sorted(f)) for f in self.facets)

    @cached_property
    def faces(self) -> dict[int, list[tuple[int, ...]]]:
        """Faces by dimension as sorted index tuples, from -1 to ``dim``."""
        out: dict[int, set] = {}
        cap = _face_cap()
        total = 0
        for f in self.facets:
            f = sorted(f)
            for k in range(len(f) + 1):
                bucket = out.setdefault(k - 1, set())
                for sub in itertools.combinations(f, k):
                    if sub not in bucket:
                        bucket.add(sub)
                        total += 1
                        if cap is not None and total > cap:
                            raise ComplexTooLargeError(
                                f"complex exceeds {MAX_FACES_ENV}={cap} faces"
                            )
        return {k: sorted(v) for k, v in sorted(out.items())}

    def f_vector(self) -> dict[int, int]:
        return {k: len(v) for k, v in self.faces.items()}

    def reduced_euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in self.f_vector().items())

    def restrict(self, vertices: Iterable[int]) -> "SimplicialComplex":
        keep = frozenset(vertices)
        return SimplicialComplex(
            self.vertex_labels, frozenset(_maximal({f & keep for f in self.facets}))
        )


def _maximal(sets: Iterable[frozenset]) -> list[frozenset]:
    ordered = sorted(set(sets), key=len, reverse=True)
    kept: list[frozenset] = []
    for s in ordered:
        if not any(s <= t for t in kept):
            kept.append(s)
    return kept


# -- boundary matrices --------------------------------------------------------

@dataclass
class BoundaryMatrix:
    """Sparse integer matrix stored by columns (``{row: entry}`` per column)."""

    nrows: int
    columns: list[dict[int, int]]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, len(self.columns))

    def to_dense(self) -> list[list[int]]:
        out = [[0] * len(self.columns) for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out[i][j] = v
        return out


def boundary_matrix(K: SimplicialComplex, i: int) -> BoundaryMatrix:
    """``d_i``: rows are the (i-1)-faces, columns the i-faces, in sorted order."""
    faces = K.faces
    rows = faces.get(i - 1, [])
    cols = faces.get(i, [])
    row_index = {f: r for r, f in enumerate(rows)}
    columns = []
    for f in cols:
        col = {}
        for j in range(len(f)):
            col[row_index[f[:j] + f[j + 1:]]] = -1 if j % 2 else 1
        columns.append(col)
    return BoundaryMatrix(len(rows), columns)


def _compose_is_zero(outer: BoundaryMatrix, inner: BoundaryMatrix) -> bool:
    """Check ``outer @ inner == 0`` exactly."""
    for col in inner.columns:
        acc: dict[int, int] = {}
        for mid, v in col.items():
            for r, w in outer.columns[mid].items():
                acc[r] = acc.get(r, 0) + v * w
        if any(acc.values()):
            return False
    return True


# -- exact rank -----------------------------------------------------------------

def exact_rank(M, field: Field = QQ) -> int:
    """Rank of an integer matrix over ``field``.

    ``M`` may be a ``BoundaryMatrix`` or any dense 2-D sequence of ints.
    Over the rationals elimination stays in the integers (cross
    multiplication, then division by the row content).
    """
    if isinstance(M, BoundaryMatrix):
        vectors = M.columns
    else:
        vectors = [{j: int(v) for j, v in enumerate(row) if v} for row in M]
    return _sparse_rank(vectors, field.characteristic)


def _sparse_rank(vectors: Iterable[Mapping[int, int]], p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for vec in vectors:
        if p:
            v = {k: x % p for k, x in vec.items() if x % p}
        else:
            v = {k: x for k, x in vec.items() if x}
        while v:
            lead = min(v)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = _normalize(v, lead, p)
                break
            v = _eliminate(v, piv, lead, p)
    return len(pivots)


def _normalize(v: dict[int, int], lead: int, p: int) -> dict[int, int]:
    if p:
        inv = pow(v[lead], -1, p)
        return {k: x * inv % p for k, x in v.items()}
    g = 0
    for x in v.values():
        g = gcd(g, x)
    if v[lead] < 0:
        g = -g
    return {k: x // g for k, x in v.items()}


def _eliminate(v: dict[int, int], piv: dict[int, int], lead: int, p: int) -> dict[int, int]:
    if p:
        c = v[lead]
        out = dict(v)
        for k, x in piv.items():
            y = (out.get(k, 0) - c * x) % p
            if y:
                out[k] = y
            else:
                out.pop(k, None)
        return out
    a, b = piv[lead], v[lead]
    g = gcd(a, b)
    a, b = a // g, b // g
    out = {k: a * x for k, x in v.items()}
    for k, x in piv.items():
        y = out.get(k, 0) - b * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    if out:
        out = _normalize(out, min(out), 0)
    return out


# -- homology -----------------------------------------------------------------

@dataclass
class HomologyProfile:
    field: Field
    ranks: dict[int, int]
    cross_check: dict[Field, dict[int, int]] = field(default_factory=dict)

    def __getitem__(self, i: int) -> int:
        return self.ranks.get(i, 0)

    @property
    def nonzero(self) -> dict[int, int]:
        return {i: r for i, r in self.ranks.items() if r}

    @property
    def discrepancies(self) -> list[str]:
        return [
            f"{f}: {r} vs {self.field}: {self.ranks}"
            for f, r in self.cross_check.items()
            if r != self.ranks
        ]

    def as_dict(self) -> dict:
        return {str(i): r for i, r in sorted(self.ranks.items())}


def reduced_homology_ranks(
    K: SimplicialComplex,
    field: Field = QQ,
    check: bool = True,
    cross_fields: Sequence[Field] = (),
) -> HomologyProfile:
    """``rank H~_i = nullity(d_i) - rank(d_{i+1})`` for ``i = -1 .. dim``.

    With ``check`` the boundary maps are verified to compose to zero and the
    ranks to reproduce the reduced Euler characteristic.  ``cross_fields``
    recomputes the ranks over further fields and stores them for comparison.
    """
    CHECK_COUNTS["complexes"] += 1
    if K.is_void:
        return HomologyProfile(field, {-1: 0}, {f: {-1: 0} for f in cross_fields})
    top = K.dim
    mats = {i: boundary_matrix(K, i) for i in range(-1, top + 2)}
    if check:
        for i in range(0, top + 1):
            if not _compose_is_zero(mats[i], mats[i + 1]):
                raise SelfCheckError(f"d_{i} d_{i + 1} != 0")
    ranks = _ranks_from(mats, K, top, field)
    if check:
        if any(r < 0 for r in ranks.values()):
            raise SelfCheckError(f"negative homology rank {ranks}")
        euler = sum((-1) ** i * r for i, r in ranks.items())
        if euler != K.reduced_euler_characteristic():
            raise SelfCheckError(
                f"Euler characteristic {K.reduced_euler_characteristic()} != {euler}"
            )
    if check:
        CHECK_COUNTS["self_checked"] += 1
    extra = {f: _ranks_from(mats, K, top, f) for f in cross_fields if f != field}
    if extra:
        CHECK_COUNTS["cross_checked"] += 1
        CHECK_COUNTS["cross_mismatch"] += any(r != ranks for r in extra.values())
    return HomologyProfile(field, ranks, extra)


def _ranks_from(mats: dict[int, BoundaryMatrix], K: SimplicialComplex, top: int, field: Field) -> dict[int, int]:
    rk = {i: exact_rank(m, field) for i, m in mats.items()}
    counts = K.f_vector()
    return {i: counts.get(i, 0) - rk[i] - rk[i + 1] for i in range(-1, top + 1)}
