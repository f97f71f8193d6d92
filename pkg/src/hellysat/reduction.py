"""Collapse sequences to (directed) weak saturation sequences.

Start from the hypergraph of missing (d+1)-faces of ``K`` (in the colorful
version, missing rainbow (d+1)-faces).  Each collapse step ``(sigma, tau)``
deletes the (d+1)-faces ``sigma + {w}``; they are added back to the
hypergraph in that order, each justified by the star with core ``sigma``
whose apexes are ``w`` together with every vertex outside ``tau`` (colorful:
every vertex of the missing color outside ``tau``).  Those other star edges
are already missing from the current complex because ``tau`` is the only
maximal face over ``sigma``.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .collapse import CollapseStep, verify_collapse_sequence
from .complex_core import SimplicialComplex, VertexPartition, induced, nonfaces_of_size, rainbow_faces
from .errors import (
    DimensionTooLarge,
    InducedDimensionTooLarge,
    ParameterRange,
    PartCountMismatch,
    UnverifiedSequence,
)
from .saturation import (
    Hypergraph,
    SaturationInstance,
    WitnessCopy,
    colorful_patterns,
    fractional_pattern,
)


def infer_r(K: SimplicialComplex, d: int) -> int:
    """Least ``r >= 0`` with ``dim K <= d + r - 1``."""
    if K.is_void:
        return 0
    return max(0, int(K.dim) + 1 - d)


def infer_r_vec(K: SimplicialComplex, P: VertexPartition) -> list[int]:
    """Least ``r_i`` with ``dim K[V_i] <= r_i - 1``, per part."""
    out = []
    for part in P.parts:
        sub = induced(K, part)[0]
        out.append(0 if sub.is_void else int(sub.dim) + 1)
    return out


def _check_sequence(K, d, seq):
    res = verify_collapse_sequence(K, d, seq)
    if not res.ok:
        raise UnverifiedSequence(f"collapse sequence rejected at step {res.index}: {res.reason}")


def reduce_fractional(K: SimplicialComplex, d: int, r: Optional[int], seq: Sequence[CollapseStep]) -> SaturationInstance:
    if r is None:
        r = infer_r(K, d)
    n = K.n
    if r < 0 or d + r > n:
        raise ParameterRange(f"need 0 <= r and d + r <= n (d={d}, r={r}, n={n})")
    if not K.is_void and K.dim > d + r - 1:
        raise DimensionTooLarge(f"dim K = {K.dim} exceeds d + r - 1 = {d + r - 1}")
    _check_sequence(K, d, seq)
    host = Hypergraph.complete(n, d + 1)
    pattern = fractional_pattern(n, d, r)
    order, witnesses = [], []
    for step in seq:
        outside = [v for v in range(n) if v not in step.tau]
        for w in step.tau:
            if w in step.sigma:
                continue
            order.append(tuple(sorted(step.sigma + (w,))))
            witnesses.append(WitnessCopy(step.sigma, tuple(sorted(outside + [w])), w))
    start = frozenset(nonfaces_of_size(K, d + 1))
    return SaturationInstance(host, start, (pattern,), tuple(order), tuple(witnesses))


def reduce_colorful(
    K: SimplicialComplex,
    P: VertexPartition,
    r_vec: Optional[Sequence[int]],
    seq: Sequence[CollapseStep],
) -> SaturationInstance:
    if P.n != K.n:
        raise PartCountMismatch(f"partition covers {P.n} vertices, complex has {K.n}")
    d = len(P.parts) - 1
    if d < 1:
        raise PartCountMismatch("need at least two parts")
    if r_vec is None:
        r_vec = infer_r_vec(K, P)
    r_vec = list(r_vec)
    if len(r_vec) != len(P.parts):
        raise PartCountMismatch(f"{len(r_vec)} r-values for {len(P.parts)} parts")
    for i, (part, r_i) in enumerate(zip(P.parts, r_vec)):
        if r_i < 0 or r_i > len(part):
            raise ParameterRange(f"need 0 <= r_{i} <= n_{i} (r={r_i}, n={len(part)})")
        sub = induced(K, part)[0]
        if not sub.is_void and sub.dim > r_i - 1:
            raise InducedDimensionTooLarge(f"dim K[V_{i}] = {sub.dim} exceeds r_{i} - 1 = {r_i - 1}")
    _check_sequence(K, d, seq)
    host = Hypergraph.complete_partite(P)
    patterns = colorful_patterns(P.sizes, r_vec)
    order, witnesses = [], []
    for step in seq:
        if not P.is_rainbow(step.sigma):
            continue
        missing = P.missing_colors(step.sigma)
        if len(missing) != 1:
            raise AssertionError(f"rainbow {list(step.sigma)} misses colors {missing}")
        i = missing[0]
        part = P.parts[i]
        outside = [u for u in part if u not in step.tau]
        for w in step.tau:
            if P.color_of[w] != i:
                continue
            order.append(tuple(sorted(step.sigma + (w,))))
            witnesses.append(WitnessCopy(step.sigma, tuple(sorted(outside + [w])), w, i))
    start = host.edges - frozenset(rainbow_faces(K, P, d + 1))
    return SaturationInstance(host, start, tuple(patterns), tuple(order), tuple(witnesses))
