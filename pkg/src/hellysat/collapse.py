"""Search, replay, and verification of d-collapse sequences.

Every step removes the interval ``{eta : sigma <= eta <= tau}`` where
``|sigma| == d`` and ``tau`` is the unique maximal face containing ``sigma``.
A sequence is complete once no face of size ``>= d`` is left; faces of size
below ``d`` are never touched.

The search runs on bitmask states: a state is the frozenset of maximal-face
masks, which is also its canonical memo key.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional, Sequence

from .complex_core import Face, SimplicialComplex, from_mask, make_face, to_mask
from .errors import (
    CollapseError,
    SigmaNotAFace,
    SizeMismatch,
    TauNotUniqueMaximal,
)

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class CollapseStep:
    sigma: Face
    tau: Face

    def to_json(self) -> dict:
        return {"sigma": list(self.sigma), "tau": list(self.tau)}

    @classmethod
    def from_json(cls, doc: dict) -> "CollapseStep":
        return cls(tuple(sorted(doc["sigma"])), tuple(sorted(doc["tau"])))


class Status(str, enum.Enum):
    COLLAPSIBLE = "collapsible"
    NOT_COLLAPSIBLE = "not-collapsible"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class CollapseOutcome:
    status: Status
    sequence: Optional[tuple[CollapseStep, ...]] = None
    nodes: int = 0
    memoized: int = 0

    @property
    def collapsible(self) -> bool:
        return self.status is Status.COLLAPSIBLE

    def to_json(self) -> dict:
        doc = {"status": self.status.value}
        if self.sequence is not None:
            doc["sequence"] = sequence_to_json(self.sequence)
        doc["stats"] = {"nodes": self.nodes, "memoized": self.memoized}
        return doc


def sequence_to_json(seq: Sequence[CollapseStep]) -> list[dict]:
    return [s.to_json() for s in seq]


def sequence_from_json(doc: list) -> list[CollapseStep]:
    return [CollapseStep.from_json(s) for s in doc]


# -- mask-level kernel ------------------------------------------------------

State = frozenset


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _remove_interval(state: frozenset, sigma: int, tau: int) -> frozenset:
    """Maximal faces after deleting every face between ``sigma`` and ``tau``."""
    rest = [t for t in state if t != tau]
    new = set(rest)
    s = sigma
    while s:
        low = s & -s
        facet = tau & ~low
        if not any(facet & t == facet for t in rest):
            new.add(facet)
        s ^= low
    return frozenset(new)


def _moves(state: frozenset, d: int) -> list[tuple[Face, int, int]]:
    """Legal ``(sigma, tau)`` pairs, sorted lexicographically by sigma."""
    out = []
    for tau in state:
        if _popcount(tau) < d:
            continue
        others = [t for t in state if t != tau]
        for sigma_face in combinations(from_mask(tau), d):
            sigma = to_mask(sigma_face)
            if not any(sigma & t == sigma for t in others):
                out.append((sigma_face, sigma, tau))
    out.sort()
    return out


def _finished(state: frozenset, d: int) -> bool:
    return all(_popcount(t) < d for t in state)


def _step(sigma: int, tau: int) -> CollapseStep:
    return CollapseStep(from_mask(sigma), from_mask(tau))


# -- public operations ------------------------------------------------------


def apply_step(K: SimplicialComplex, step: CollapseStep, d: int) -> SimplicialComplex:
    """Perform one elementary d-collapse on ``K``."""
    sigma = make_face(step.sigma, K.n)
    tau = make_face(step.tau, K.n)
    if len(sigma) != d:
        raise SizeMismatch(f"|sigma| = {len(sigma)} but d = {d}")
    if sigma not in K:
        raise SigmaNotAFace(f"sigma {list(sigma)} is not a face")
    containing = K.maximal_faces_containing(sigma)
    if containing != [tau]:
        raise TauNotUniqueMaximal(
            f"maximal faces containing {list(sigma)} are "
            f"{[list(f) for f in containing]}, not just {list(tau)}"
        )
    state = _remove_interval(frozenset(K.maximal_masks), to_mask(sigma), to_mask(tau))
    return SimplicialComplex(K.n, tuple(sorted(from_mask(m) for m in state)))


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    index: Optional[int] = None
    reason: Optional[str] = None
    final: Optional[SimplicialComplex] = field(default=None, compare=False)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "index": self.index, "reason": self.reason}


def replay(K: SimplicialComplex, seq: Sequence[CollapseStep], d: int) -> Iterator[SimplicialComplex]:
    """Yield ``K_1, ..., K_m``; raises on the first illegal step."""
    cur = K
    for step in seq:
        cur = apply_step(cur, step, d)
        yield cur


def verify_collapse_sequence(K: SimplicialComplex, d: int, seq: Sequence[CollapseStep]) -> VerifyResult:
    cur = K
    for i, step in enumerate(seq):
        try:
            cur = apply_step(cur, step, d)
        except CollapseError as exc:
            return VerifyResult(False, i, f"{exc.code}: {exc}")
    left = [f for f in cur.maximal_faces if len(f) >= d]
    if left:
        return VerifyResult(
            False, len(seq), f"faces of size >= {d} remain, e.g. {list(left[0])}", cur
        )
    return VerifyResult(True, final=cur)


def find_collapse_sequence(
    K: SimplicialComplex,
    d: int,
    mode: str = "exhaustive",
    budget: int = DEFAULT_BUDGET,
) -> CollapseOutcome:
    """Look for a d-collapse sequence of ``K``.

    ``exhaustive`` is a depth-first search over legal sigmas in lexicographic
    order, remembering dead states; it answers NOT_COLLAPSIBLE only after the
    whole space is explored.  ``greedy`` always takes the least legal sigma and
    answers UNKNOWN when stuck.  Either mode answers UNKNOWN once more than
    ``budget`` states have been expanded.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    if mode not in ("exhaustive", "greedy"):
        raise ValueError(f"unknown mode {mode!r}")
    start = frozenset(K.maximal_masks)
    if mode == "greedy":
        return _greedy(start, d, budget)
    return _exhaustive(start, d, budget)


def _greedy(state: frozenset, d: int, budget: int) -> CollapseOutcome:
    path = []
    nodes = 0
    while not _finished(state, d):
        nodes += 1
        if nodes > budget:
            return CollapseOutcome(Status.UNKNOWN, nodes=nodes - 1)
        moves = _moves(state, d)
        if not moves:
            return CollapseOutcome(Status.UNKNOWN, nodes=nodes)
        _, sigma, tau = moves[0]
        path.append(_step(sigma, tau))
        state = _remove_interval(state, sigma, tau)
    return CollapseOutcome(Status.COLLAPSIBLE, tuple(path), nodes=nodes)


def _exhaustive(start: frozenset, d: int, budget: int) -> CollapseOutcome:
    dead: set[frozenset] = set()
    path: list[CollapseStep] = []
    nodes = 1
    if _finished(start, d):
        return CollapseOutcome(Status.COLLAPSIBLE, (), nodes=nodes)
    stack = [(start, iter(_moves(start, d)))]
    while stack:
        state, moves = stack[-1]
        nxt_move = next(moves, None)
        if nxt_move is None:
            dead.add(state)
            stack.pop()
            if path:
                path.pop()
            continue
        _, sigma, tau = nxt_move
        nxt = _remove_interval(state, sigma, tau)
        if nxt in dead:
            continue
        path.append(_step(sigma, tau))
        if _finished(nxt, d):
            return CollapseOutcome(Status.COLLAPSIBLE, tuple(path), nodes=nodes, memoized=len(dead))
        nodes += 1
        if nodes > budget:
            return CollapseOutcome(Status.UNKNOWN, nodes=nodes - 1, memoized=len(dead))
        stack.append((nxt, iter(_moves(nxt, d))))
    return CollapseOutcome(Status.NOT_COLLAPSIBLE, nodes=nodes, memoized=len(dead))
