"""Executable checks of the Helly-type bounds on concrete complexes.

Each audit first machine-checks d-collapsibility, either by verifying a
supplied collapse sequence or by searching for one.  A search that runs out
of budget makes the audit inconclusive (:class:`NotCollapsibleOrUnknown`
with ``status="unknown"``) rather than failed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, prod
from typing import Optional, Sequence

from .collapse import (
    DEFAULT_BUDGET,
    CollapseStep,
    Status,
    find_collapse_sequence,
    verify_collapse_sequence,
)
from .complex_core import SimplicialComplex, VertexPartition, faces_of_size, induced, rainbow_faces
from .errors import HypothesisViolated, NotCollapsibleOrUnknown, ParameterRange, PartCountMismatch
from .reduction import infer_r, infer_r_vec

FRAC_HELLY = "frac-helly"
COLORFUL_FRAC_HELLY = "colorful-frac-helly"
COLORFUL_HELLY = "colorful-helly"


@dataclass(frozen=True)
class AuditReport:
    theorem: str
    hypotheses: dict
    measured: Optional[int]
    bound: Optional[int]
    passed: bool
    witness: Optional[dict] = None
    sequence: Optional[tuple[CollapseStep, ...]] = field(default=None, compare=False)

    @property
    def tight(self) -> bool:
        return self.measured is not None and self.measured == self.bound

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "hypotheses": self.hypotheses,
            "measured": self.measured,
            "bound": self.bound,
            "pass": self.passed,
            "tight": self.tight,
            "witness": self.witness,
        }


def certify_collapsible(K: SimplicialComplex, d: int, seq: Optional[Sequence[CollapseStep]] = None,
                        budget: int = DEFAULT_BUDGET) -> tuple[CollapseStep, ...]:
    if seq is not None:
        res = verify_collapse_sequence(K, d, seq)
        if not res.ok:
            raise NotCollapsibleOrUnknown(f"supplied sequence rejected: {res.reason}", status="not-collapsible")
        return tuple(seq)
    out = find_collapse_sequence(K, d, "greedy", budget)
    if out.status is not Status.COLLAPSIBLE:
        out = find_collapse_sequence(K, d, "exhaustive", budget)
    if out.status is Status.COLLAPSIBLE:
        return out.sequence
    raise NotCollapsibleOrUnknown(f"complex is {out.status.value} for d={d}", status=out.status.value)


def fractional_helly_audit(K: SimplicialComplex, d: int, r: Optional[int] = None,
                           seq: Optional[Sequence[CollapseStep]] = None,
                           budget: int = DEFAULT_BUDGET) -> AuditReport:
    n = K.n
    if r is None:
        r = infer_r(K, d)
    if r < 0 or d + r > n:
        raise ParameterRange(f"need 0 <= r and d + r <= n (d={d}, r={r}, n={n})")
    if not K.is_void and K.dim > d + r - 1:
        raise HypothesisViolated(f"dim K = {K.dim} exceeds d + r - 1 = {d + r - 1}")
    seq = certify_collapsible(K, d, seq, budget)
    measured = len(faces_of_size(K, d + 1))
    bound = comb(n, d + 1) - comb(n - r, d + 1)
    hyp = {"d": d, "r": r, "n": n, "collapse_steps": len(seq), "dim": _dim_json(K.dim)}
    return AuditReport(FRAC_HELLY, hyp, measured, bound, measured <= bound, sequence=seq)


def _dim_json(dim):
    return None if dim == float("-inf") else int(dim)


def _partition_d(K, P):
    if P.n != K.n:
        raise PartCountMismatch(f"partition covers {P.n} vertices, complex has {K.n}")
    if len(P.parts) < 2:
        raise PartCountMismatch("need at least two parts")
    return len(P.parts) - 1


def colorful_fractional_audit(K: SimplicialComplex, P: VertexPartition, r_vec: Optional[Sequence[int]] = None,
                              seq: Optional[Sequence[CollapseStep]] = None,
                              budget: int = DEFAULT_BUDGET) -> AuditReport:
    d = _partition_d(K, P)
    r_vec = infer_r_vec(K, P) if r_vec is None else list(r_vec)
    if len(r_vec) != len(P.parts):
        raise PartCountMismatch(f"{len(r_vec)} r-values for {len(P.parts)} parts")
    for i, (part, r_i) in enumerate(zip(P.parts, r_vec)):
        if r_i < 0 or r_i > len(part):
            raise ParameterRange(f"need 0 <= r_{i} <= n_{i}")
        sub = induced(K, part)[0]
        if not sub.is_void and sub.dim > r_i - 1:
            raise HypothesisViolated(f"dim K[V_{i}] = {sub.dim} exceeds r_{i} - 1 = {r_i - 1}")
    seq = certify_collapsible(K, d, seq, budget)
    measured = len(rainbow_faces(K, P, d + 1))
    bound = prod(P.sizes) - prod(n_i - r_i for n_i, r_i in zip(P.sizes, r_vec))
    hyp = {"d": d, "r": list(r_vec), "sizes": list(P.sizes), "collapse_steps": len(seq)}
    return AuditReport(COLORFUL_FRAC_HELLY, hyp, measured, bound, measured <= bound, sequence=seq)


def colorful_helly_audit(K: SimplicialComplex, P: VertexPartition,
                         seq: Optional[Sequence[CollapseStep]] = None,
                         budget: int = DEFAULT_BUDGET) -> AuditReport:
    d = _partition_d(K, P)
    for e in P.rainbow_sets(d + 1):
        if e not in K:
            raise HypothesisViolated(f"rainbow set {list(e)} is not a face")
    seq = certify_collapsible(K, d, seq, budget)
    hyp = {"d": d, "sizes": list(P.sizes), "collapse_steps": len(seq)}
    for i, part in enumerate(P.parts):
        if part in K:
            return AuditReport(COLORFUL_HELLY, hyp, None, None, True,
                               witness={"part": i, "vertices": list(part)}, sequence=seq)
    return AuditReport(COLORFUL_HELLY, hyp, None, None, False, sequence=seq)
