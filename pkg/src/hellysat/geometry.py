"""Interval and box families with exact rational endpoints, and their nerves."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Optional, Sequence

from .certificate import fraction_str
from .complex_core import SimplicialComplex, VertexPartition, _antichain
from .errors import CapExceeded, ParameterRange, RejectionBudgetExceeded
from .saturation import Hypergraph


@dataclass(frozen=True)
class Box:
    """Closed axis-aligned box; a 1-axis box is a closed interval."""

    intervals: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        for lo, hi in self.intervals:
            if lo > hi:
                raise ParameterRange(f"empty interval [{lo}, {hi}]")

    @classmethod
    def of(cls, *intervals) -> "Box":
        return cls(tuple((Fraction(lo), Fraction(hi)) for lo, hi in intervals))

    @property
    def k(self) -> int:
        return len(self.intervals)

    def to_json(self) -> dict:
        return {"k": self.k, "intervals": [[fraction_str(lo), fraction_str(hi)] for lo, hi in self.intervals]}

    @classmethod
    def from_json(cls, doc: dict) -> "Box":
        box = cls(tuple((Fraction(lo), Fraction(hi)) for lo, hi in doc["intervals"]))
        if "k" in doc and int(doc["k"]) != box.k:
            raise ParameterRange("axis count does not match intervals")
        return box


def intersects(boxes: Sequence[Box]) -> bool:
    """Common point test: per axis, the largest low end is at most the least high end."""
    if not boxes:
        return True
    for a in range(boxes[0].k):
        if max(b.intervals[a][0] for b in boxes) > min(b.intervals[a][1] for b in boxes):
            return False
    return True


def nerve(family: Sequence[Box], max_size: Optional[int] = None) -> SimplicialComplex:
    """Nerve of ``family``, built level by level.

    A candidate of size s+1 is tested only when all of its s-subsets are
    faces.  An intersecting subfamily larger than ``max_size`` raises
    :class:`CapExceeded`.
    """
    n = len(family)
    if len({b.k for b in family}) > 1:
        raise ParameterRange("boxes do not share one axis count")
    cap = n if max_size is None else max_size
    if cap < 1:
        raise ParameterRange("cap must be at least 1")
    level = {(i,) for i in range(n)}
    maximal = []
    size = 1
    while level:
        if size > cap:
            raise CapExceeded(f"intersecting subfamily of size {size} exceeds cap {cap}",
                              face=sorted(level)[0])
        nxt = set()
        for f in sorted(level):
            for v in range(f[-1] + 1, n):
                cand = f + (v,)
                if all(sub in level for sub in combinations(cand, size)) and intersects([family[i] for i in cand]):
                    nxt.add(cand)
        covered = {sub for g in nxt for sub in combinations(g, size)}
        maximal.extend(level - covered)
        level = nxt
        size += 1
    if n == 0:
        maximal = [()]
    return SimplicialComplex(n, _antichain(maximal))


def _grid_value(rng: random.Random, lo: Fraction, hi: Fraction, grid: int) -> Fraction:
    steps = int((hi - lo) * grid)
    return lo + Fraction(rng.randint(0, steps), grid)


def gen_family(
    kind: str,
    k: int = 1,
    n: int = 4,
    seed: int = 0,
    max_overlap: Optional[int] = None,
    grid: int = 256,
    extent: Fraction = Fraction(4),
    max_length: Fraction = Fraction(2),
    attempts: int = 1000,
) -> list[Box]:
    """Seeded random intervals (``k`` forced to 1) or ``k``-axis boxes.

    Endpoints lie on the ``1/grid`` lattice; low ends in ``[0, extent]`` and
    side lengths in ``[0, max_length]``.  With ``max_overlap`` set, families
    are resampled until no intersecting subfamily is larger than it.
    """
    if n < 1:
        raise ParameterRange("family needs at least one set")
    if kind == "intervals":
        k = 1
    elif kind != "boxes":
        raise ParameterRange(f"unknown family kind {kind!r}")
    rng = random.Random(seed)
    extent, max_length = Fraction(extent), Fraction(max_length)
    for _ in range(attempts):
        family = []
        for _ in range(n):
            sides = []
            for _ in range(k):
                lo = _grid_value(rng, Fraction(0), extent, grid)
                sides.append((lo, lo + _grid_value(rng, Fraction(0), max_length, grid)))
            family.append(Box(tuple(sides)))
        if max_overlap is None:
            return family
        try:
            nerve(family, max_overlap)
            return family
        except CapExceeded:
            continue
    raise RejectionBudgetExceeded(f"no family with overlap <= {max_overlap} in {attempts} tries")


def clique_construction(n: int, d: int, r: int) -> Hypergraph:
    """All (d+1)-sets inside the last ``n - r`` vertices."""
    if r < 0 or r > n - d:
        raise ParameterRange(f"need 0 <= r <= n - d (n={n}, d={d}, r={r})")
    return Hypergraph(n, d + 1, frozenset(combinations(range(r, n), d + 1)))


def partite_construction(P: VertexPartition, r_vec: Sequence[int]) -> Hypergraph:
    """Complete multipartite graph on the last ``n_i - r_i`` vertices of each part."""
    if len(r_vec) != len(P.parts) or any(r < 0 or r > len(p) for p, r in zip(P.parts, r_vec)):
        raise ParameterRange(f"need 0 <= r_i <= n_i, got {list(r_vec)}")
    edges = frozenset(tuple(sorted(t)) for t in product(*(p[r:] for p, r in zip(P.parts, r_vec))))
    return Hypergraph(P.n, len(P.parts), edges, P)


def equality_constructions(n, d: Optional[int] = None, r=0) -> Hypergraph:
    """Start graph meeting the lower bound with equality.

    ``n`` an int: the clique construction for ``(n, d, r)``.  ``n`` a
    :class:`VertexPartition`: the partite construction for ``r`` per part.
    """
    if isinstance(n, VertexPartition):
        return partite_construction(n, r)
    if d is None:
        raise ParameterRange("d is required for the clique construction")
    return clique_construction(n, d, r)
