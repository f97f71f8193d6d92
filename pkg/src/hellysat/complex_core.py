"""Finite abstract simplicial complexes on indexed vertices.

A complex is stored by its maximal faces; membership is containment in some
maximal face.  Faces are strictly increasing tuples of 0-based indices.  The
full face set is materialized lazily, since every downstream algorithm
enumerates faces anyway.

Two degenerate complexes are kept apart:

* the *void* complex has no faces at all (``maximal_faces == ()``), and its
  dimension is :data:`VOID_DIM`;
* the *empty* complex contains only the empty face (``maximal_faces ==
  ((),)``) and has dimension -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import FaceError

Face = tuple[int, ...]

#: Dimension of the void complex (no faces, not even the empty one).
VOID_DIM = float("-inf")


def to_mask(face: Iterable[int]) -> int:
    mask = 0
    for v in face:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> Face:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def make_face(vertices: Iterable[int], n: int) -> Face:
    """Validate and sort a vertex collection into a :data:`Face`."""
    verts = list(vertices)
    for v in verts:
        if not isinstance(v, int) or isinstance(v, bool):
            raise FaceError(f"vertex {v!r} is not an integer")
        if v < 0 or v >= n:
            raise FaceError(f"vertex {v} out of range for n={n}", vertex=v, n=n)
    face = tuple(sorted(verts))
    if len(set(face)) != len(face):
        raise FaceError(f"duplicate vertex in {list(verts)}")
    return face


def _antichain(faces: Iterable[Face]) -> tuple[Face, ...]:
    """Keep only inclusion-maximal faces, in lexicographic order."""
    uniq = sorted(set(faces), key=len, reverse=True)
    kept: list[tuple[Face, int]] = []
    for f in uniq:
        m = to_mask(f)
        if not any(m & km == m for _, km in kept):
            kept.append((f, m))
    return tuple(sorted(f for f, _ in kept))


@dataclass(frozen=True)
class SimplicialComplex:
    n: int
    maximal_faces: tuple[Face, ...]

    @cached_property
    def maximal_masks(self) -> tuple[int, ...]:
        return tuple(to_mask(f) for f in self.maximal_faces)

    @cached_property
    def faces(self) -> frozenset[Face]:
        out: set[Face] = set()
        for tau in self.maximal_faces:
            for s in range(len(tau) + 1):
                out.update(combinations(tau, s))
        return frozenset(out)

    def __contains__(self, face) -> bool:
        m = to_mask(face)
        return any(m & t == m for t in self.maximal_masks)

    @property
    def is_void(self) -> bool:
        return not self.maximal_faces

    @property
    def dim(self):
        if self.is_void:
            return VOID_DIM
        return max(len(f) for f in self.maximal_faces) - 1

    def maximal_faces_containing(self, face) -> list[Face]:
        m = to_mask(face)
        return [f for f, t in zip(self.maximal_faces, self.maximal_masks) if m & t == m]

    def f_vector(self) -> list[int]:
        """Number of faces of each size 0, 1, ..., dim + 1."""
        if self.is_void:
            return []
        counts = [0] * (int(self.dim) + 2)
        for f in self.faces:
            counts[len(f)] += 1
        return counts

    def to_json(self) -> dict:
        return {"n": self.n, "maximal_faces": [list(f) for f in self.maximal_faces]}

    @classmethod
    def from_json(cls, doc: dict) -> "SimplicialComplex":
        try:
            return build_complex(int(doc["n"]), doc["maximal_faces"])
        except (KeyError, TypeError) as exc:
            raise FaceError(f"malformed complex document: {exc}") from exc


def build_complex(n: int, generators: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Downward closure of ``generators`` on the vertex set ``range(n)``.

    Non-maximal generators are accepted and dropped.  ``build_complex(n, [])``
    is the void complex; ``build_complex(n, [[]])`` holds only the empty face.
    """
    if n < 0:
        raise FaceError(f"negative vertex count {n}")
    faces = [make_face(g, n) for g in generators]
    return SimplicialComplex(n, _antichain(faces))


def full_simplex(n: int) -> SimplicialComplex:
    return SimplicialComplex(n, (tuple(range(n)),))


def faces_of_size(K: SimplicialComplex, s: int) -> list[Face]:
    if s < 0:
        raise FaceError(f"negative face size {s}")
    out: set[Face] = set()
    for tau in K.maximal_faces:
        if len(tau) >= s:
            out.update(combinations(tau, s))
    return sorted(out)


def nonfaces_of_size(K: SimplicialComplex, s: int) -> list[Face]:
    present = set(faces_of_size(K, s))
    return [f for f in combinations(range(K.n), s) if f not in present]


@dataclass(frozen=True)
class VertexPartition:
    """Disjoint nonempty parts covering ``range(n)``; part ``i`` is color ``i``."""

    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for p in self.parts:
            if not p:
                raise FaceError("partition has an empty part")
            if seen.intersection(p):
                raise FaceError("partition parts overlap")
            seen.update(p)
        if seen != set(range(len(seen))):
            raise FaceError("partition does not cover 0..n-1")

    @classmethod
    def from_parts(cls, parts: Iterable[Iterable[int]]) -> "VertexPartition":
        return cls(tuple(tuple(sorted(int(v) for v in p)) for p in parts))

    @classmethod
    def blocks(cls, sizes: Sequence[int]) -> "VertexPartition":
        """Consecutive blocks: sizes (2, 3) gives parts {0,1} and {2,3,4}."""
        parts, start = [], 0
        for s in sizes:
            parts.append(tuple(range(start, start + s)))
            start += s
        return cls(tuple(parts))

    @property
    def n(self) -> int:
        return sum(len(p) for p in self.parts)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    @cached_property
    def color_of(self) -> dict[int, int]:
        return {v: i for i, p in enumerate(self.parts) for v in p}

    def is_rainbow(self, face: Iterable[int]) -> bool:
        colors = [self.color_of[v] for v in face]
        return len(colors) == len(set(colors))

    def missing_colors(self, face: Iterable[int]) -> list[int]:
        used = {self.color_of[v] for v in face}
        return [i for i in range(len(self.parts)) if i not in used]

    def rainbow_sets(self, s: int) -> list[Face]:
        """All rainbow ``s``-subsets of the vertex set, sorted."""
        out = []
        for colors in combinations(range(len(self.parts)), s):
            out.extend(_product_faces([self.parts[c] for c in colors]))
        return sorted(out)

    def to_json(self) -> dict:
        return {"parts": [list(p) for p in self.parts]}

    @classmethod
    def from_json(cls, doc: dict) -> "VertexPartition":
        try:
            return cls.from_parts(doc["parts"])
        except (KeyError, TypeError) as exc:
            raise FaceError(f"malformed partition document: {exc}") from exc


def _product_faces(blocks):
    return [tuple(sorted(t)) for t in product(*blocks)]


def rainbow_faces(K: SimplicialComplex, P: VertexPartition, s: int) -> list[Face]:
    if s > len(P.parts):
        return []
    return [f for f in faces_of_size(K, s) if P.is_rainbow(f)]


def induced(K: SimplicialComplex, S: Iterable[int]) -> tuple[SimplicialComplex, tuple[int, ...]]:
    """Subcomplex ``K[S]`` re-indexed onto ``range(|S|)``.

    Returns the complex together with ``mapping``, where ``mapping[i]`` is the
    original index of new vertex ``i``.
    """
    mapping = tuple(sorted(set(S)))
    for v in mapping:
        if v < 0 or v >= K.n:
            raise FaceError(f"vertex {v} out of range for n={K.n}")
    index = {v: i for i, v in enumerate(mapping)}
    gens = [tuple(index[v] for v in tau if v in index) for tau in K.maximal_faces]
    return SimplicialComplex(len(mapping), _antichain(gens)), mapping


def induced_dim(K: SimplicialComplex, S: Iterable[int]):
    return induced(K, S)[0].dim

